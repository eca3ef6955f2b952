#include "stancekit/civil_time.hpp"

#include "stancekit/error.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace stancekit {

namespace {

int read_digits(std::string_view text, std::size_t pos, std::size_t count, std::string_view what) {
    if (pos + count > text.size()) {
        throw DataError("truncated " + std::string(what) + " in '" + std::string(text) + "'");
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') {
            throw DataError("expected digit in " + std::string(what) + " of '" + std::string(text) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
    if (pos >= text.size() || text[pos] != c) {
        throw DataError("expected '" + std::string(1, c) + "' at offset " + std::to_string(pos) + " in '" +
                        std::string(text) + "'");
    }
}

Day checked_day(std::string_view text, int y, int m, int d) {
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw DataError("invalid calendar date '" + std::string(text) + "'");
    }
    return Day{sys_days{ymd}.time_since_epoch().count()};
}

} // namespace

Day make_day(int year, unsigned month, unsigned day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw DataError("invalid calendar date");
    }
    return Day{sys_days{ymd}.time_since_epoch().count()};
}

Day parse_day(std::string_view text) {
    text = text.substr(0, text.find_last_not_of(" \t\r\n") + 1);
    if (text.size() != 10) {
        throw DataError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    const int y = read_digits(text, 0, 4, "year");
    expect(text, 4, '-');
    const int m = read_digits(text, 5, 2, "month");
    expect(text, 7, '-');
    const int d = read_digits(text, 8, 2, "day");
    return checked_day(text, y, m, d);
}

std::string format_day(Day day) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{day.value}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Day day_of(std::int64_t epoch_seconds) {
    std::int64_t q = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) {
        --q;
    }
    return Day{q};
}

std::int64_t day_start(Day day) { return day.value * 86400; }

std::int64_t parse_timestamp(std::string_view text) {
    const Day day = parse_day(text.substr(0, std::min<std::size_t>(10, text.size())));
    std::int64_t seconds = day_start(day);
    std::size_t pos = 10;
    if (pos == text.size()) {
        return seconds;
    }
    if (text[pos] != 'T' && text[pos] != ' ') {
        throw DataError("expected 'T' after date in '" + std::string(text) + "'");
    }
    ++pos;
    const int hh = read_digits(text, pos, 2, "hour");
    expect(text, pos + 2, ':');
    const int mm = read_digits(text, pos + 3, 2, "minute");
    pos += 5;
    int ss = 0;
    if (pos < text.size() && text[pos] == ':') {
        ss = read_digits(text, pos + 1, 2, "second");
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                ++pos;
            }
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) {
        throw DataError("time of day out of range in '" + std::string(text) + "'");
    }
    seconds += hh * 3600 + mm * 60 + ss;

    if (pos == text.size()) {
        return seconds;
    }
    if (text[pos] == 'Z' && pos + 1 == text.size()) {
        return seconds;
    }
    if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        const int oh = read_digits(text, pos + 1, 2, "offset hour");
        pos += 3;
        int om = 0;
        if (pos < text.size()) {
            if (text[pos] == ':') {
                ++pos;
            }
            om = read_digits(text, pos, 2, "offset minute");
            pos += 2;
        }
        if (pos != text.size()) {
            throw DataError("trailing characters in timestamp '" + std::string(text) + "'");
        }
        return seconds - sign * (oh * 3600 + om * 60);
    }
    throw DataError("unrecognized timezone designator in '" + std::string(text) + "'");
}

std::string format_timestamp(std::int64_t epoch_seconds) {
    const Day day = day_of(epoch_seconds);
    const std::int64_t rem = epoch_seconds - day_start(day);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02dZ", static_cast<int>(rem / 3600),
                  static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
    return format_day(day) + buf;
}

} // namespace stancekit
