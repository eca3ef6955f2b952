#include "stancekit/report.hpp"

#include "stancekit/error.hpp"

#include <ostream>

namespace stancekit::report {

std::int64_t DailySeries::camp_total(int camp) const {
    std::int64_t total = 0;
    for (const auto& r : rows) {
        if (r.camp == camp) {
            total += r.count;
        }
    }
    return total;
}

DailySeries daily_counts(const std::vector<corpus::Tweet>& tweets, const cluster::NamedAssignment& assignment,
                         Day start, Day end) {
    if (end < start) {
        throw ConfigError("daily_counts: start " + format_day(start) + " is after end " + format_day(end));
    }
    DailySeries series;
    series.camps = assignment.camps;
    series.start = start;
    series.end = end;
    const auto days = static_cast<std::size_t>(end.value - start.value + 1);
    series.rows.reserve(days * 2);
    for (std::size_t d = 0; d < days; ++d) {
        for (int c = 0; c < 2; ++c) {
            series.rows.push_back({Day{start.value + static_cast<std::int64_t>(d)}, c, 0});
        }
    }
    for (const auto& t : tweets) {
        const int camp = assignment.camp_of(t.user_id);
        if (camp == cluster::kUnclustered) {
            continue;
        }
        const Day d = day_of(t.timestamp_utc);
        if (d < start || end < d) {
            continue;
        }
        ++series.rows[static_cast<std::size_t>(d.value - start.value) * 2 + static_cast<std::size_t>(camp)].count;
    }
    return series;
}

void write_daily_csv(std::ostream& out, const DailySeries& series) {
    out << "day,camp,count\n";
    for (const auto& r : series.rows) {
        out << format_day(r.day) << ',' << valence::csv_field(series.camps[static_cast<std::size_t>(r.camp)]) << ','
            << r.count << '\n';
    }
}

} // namespace stancekit::report
