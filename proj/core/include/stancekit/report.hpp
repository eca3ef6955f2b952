#ifndef STANCEKIT_REPORT_HPP
#define STANCEKIT_REPORT_HPP

#include "stancekit/civil_time.hpp"
#include "stancekit/cluster.hpp"
#include "stancekit/corpus.hpp"
#include "stancekit/valence.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace stancekit::report {

struct DailyRow {
    Day day;
    int camp = 0;
    std::int64_t count = 0;
};

/// Rows ordered by day, then camp; every (day, camp) pair in range is present.
struct DailySeries {
    std::array<std::string, 2> camps;
    Day start;
    Day end;
    std::vector<DailyRow> rows;

    std::int64_t camp_total(int camp) const;
};

/// Daily tweet counts of assigned users inside [start, end], zero-filled.
DailySeries daily_counts(const std::vector<corpus::Tweet>& tweets, const cluster::NamedAssignment& assignment,
                         Day start, Day end);

/// Exact terms, plus prefixes written with a trailing '*' ("covid*").
class TermFilter {
public:
    TermFilter() = default;
    explicit TermFilter(const std::set<std::string>& patterns);

    bool matches(const std::string& term) const;
    bool empty() const { return exact_.empty() && prefixes_.empty(); }

private:
    std::set<std::string> exact_;
    std::vector<std::string> prefixes_;
};

struct TermCount {
    std::string term;
    std::string display;
    std::int64_t count = 0;
};

using TermTable = std::vector<TermCount>;

/// Per camp: the n most frequent terms not matched by `excluded`, ties by term.
std::array<TermTable, 2> top_terms_table(const valence::GroupTermCounts& counts, std::size_t n,
                                         const TermFilter& excluded);

/// Category name to member terms (folded), plus terms excluded from every table.
struct CategoryLexicon {
    std::map<std::string, std::set<std::string>> categories;
    std::set<std::string> excluded;
};

/// Throws DataError if a term sits in two categories or in a category and the excluded set.
void validate(const CategoryLexicon& lexicon);

/// "category<TAB>term" lines; the pseudo-category "!excluded" fills the excluded set.
CategoryLexicon read_lexicon(std::istream& in);
CategoryLexicon read_lexicon_file(const std::string& path);

struct CategoryRow {
    std::string category;
    std::int64_t count = 0;
    /// Share of the categorized volume, in percent.
    double percent = 0.0;
    /// Up to three member terms by descending count.
    std::vector<std::string> examples;
};

struct CategoryReport {
    /// Descending count, ties by name; categories without any table term are omitted.
    std::vector<CategoryRow> rows;
    std::int64_t categorized_total = 0;
    /// Terms of the table that no category claims; not part of the percentage base.
    TermTable uncategorized;
};

CategoryReport categorize_terms(const TermTable& table, const CategoryLexicon& lexicon);

/// "day,camp,count"
void write_daily_csv(std::ostream& out, const DailySeries& series);
/// "rank,term,count"
void write_top_terms_csv(std::ostream& out, const TermTable& table);
/// "category,count,percent,examples", then an "uncategorized" row with its volume and no percentage.
void write_categories_csv(std::ostream& out, const CategoryReport& report);

/// Standalone SVG with one polyline per camp; byte-identical output for identical input.
std::string render_timeseries_svg(const DailySeries& series);
void emit_timeseries_plot(const DailySeries& series, const std::string& path);

} // namespace stancekit::report

#endif
