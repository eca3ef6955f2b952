#ifndef STANCEKIT_VALENCE_HPP
#define STANCEKIT_VALENCE_HPP

#include "stancekit/cluster.hpp"
#include "stancekit/corpus.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stancekit::valence {

enum class TermKind { hashtag, account, url };

const char* to_string(TermKind kind);
/// Throws ConfigError for anything other than "hashtag", "account" or "url".
TermKind parse_term_kind(std::string_view name);

/// Optional short-URL to expanded-URL map applied before normalization.
using UrlExpansions = std::map<std::string, std::string>;

/// Reads "short<TAB>expanded" lines.
UrlExpansions read_url_expansions_file(const std::string& path);

/**
 * Canonical URL key: expansion applied, scheme dropped (http and https
 * collapse), host lowercased, `utm_*` / `fbclid` / `gclid` / `igshid`
 * query parameters removed, trailing slash stripped.
 */
std::string normalize_url(std::string_view url, const UrlExpansions& expansions = {});

/// Term frequencies N(t, G) per camp together with the per-camp totals N(G).
struct GroupTermCounts {
    TermKind kind = TermKind::hashtag;
    std::array<std::string, 2> camps;
    std::array<std::map<std::string, std::int64_t>, 2> counts;
    std::array<std::int64_t, 2> totals{0, 0};
    /// Most frequent surface spelling per folded hashtag (ties: lexicographically smallest).
    std::map<std::string, std::string> display;

    std::int64_t count(int camp, const std::string& term) const;
};

struct CountOptions {
    /// Count a term at most once per tweet.
    bool per_tweet_dedup = false;
    UrlExpansions url_expansions;
};

/// Counts terms of `kind` over tweets whose author belongs to a camp; unclustered authors are skipped.
GroupTermCounts count_terms(const std::vector<corpus::Tweet>& tweets, const cluster::NamedAssignment& assignment,
                            TermKind kind, const CountOptions& options = {});

/**
 * Valence of a term for group g against the other group, in [-1, 1]:
 * 2 * r_g / (r_g + r_o) - 1 with r = count / total.
 *
 * Evaluated as (c_g T_o - c_o T_g) / (c_g T_o + c_o T_g) in integer arithmetic,
 * which is algebraically identical: swapping the groups negates the result
 * exactly and scaling one group's counts and total leaves it bit-identical.
 * Throws ConfigError on non-positive totals, counts outside [0, total], or
 * both counts zero.
 */
double valence(std::int64_t count_g, std::int64_t total_g, std::int64_t count_other, std::int64_t total_other);

/// Five equal-width bins over [-1, 1]; only the last bin includes its upper edge.
int bin_valence(double v);

struct ValenceEntry {
    std::string term;
    std::int64_t count_g = 0;
    std::int64_t count_other = 0;
    double valence = 0.0;
    int bin = 0;
    /// valence * ln(count_g)
    double rank_score = 0.0;
};

/// Relative tolerance under which two rank scores count as equal.
inline constexpr double kRankTieTolerance = 1e-12;

/// Scores such as 0.6 * ln(32) and ln(8) are equal in exact arithmetic but not always in floating point.
bool rank_scores_tie(double a, double b);

/**
 * Terms with valence >= threshold for `camp`, ranked by descending
 * valence * ln(count), then descending count, then term. Rank scores within
 * `kRankTieTolerance` (relative) are ties.
 */
std::vector<ValenceEntry> distinctive_terms(const GroupTermCounts& counts, int camp, double threshold);

/// CSV with header "term,count_g,count_other,valence,bin,rank_score".
void write_valence_csv(std::ostream& out, const std::vector<ValenceEntry>& entries);
void write_valence_csv_file(const std::string& path, const std::vector<ValenceEntry>& entries);

/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(std::string_view field);

} // namespace stancekit::valence

#endif
