#ifndef STANCEKIT_CIVIL_TIME_HPP
#define STANCEKIT_CIVIL_TIME_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace stancekit {

/// A UTC calendar day, stored as days since 1970-01-01.
struct Day {
    std::int64_t value = 0;

    auto operator<=>(const Day&) const = default;
};

Day make_day(int year, unsigned month, unsigned day);

/// Parses "YYYY-MM-DD". Throws DataError on malformed input.
Day parse_day(std::string_view text);

std::string format_day(Day day);

/// UTC day containing the given epoch second (floor semantics for negatives).
Day day_of(std::int64_t epoch_seconds);

std::int64_t day_start(Day day);

/**
 * Parses an ISO-8601 timestamp into epoch seconds.
 *
 * Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS[.fff]]` with an optional `Z` or
 * `±HH[:MM]` offset (a space may replace the `T`). Fractional seconds are
 * truncated. A missing offset is read as UTC.
 */
std::int64_t parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t epoch_seconds);

} // namespace stancekit

#endif
