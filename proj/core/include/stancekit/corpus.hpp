#ifndef STANCEKIT_CORPUS_HPP
#define STANCEKIT_CORPUS_HPP

#include "stancekit/civil_time.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

/**
 * @file corpus.hpp
 *
 * @brief Tweet records, the line-delimited record format and the filter cascade
 * used to build the base, politicised and sampled datasets.
 *
 * Records are one JSON object per line:
 *
 * ```
 * {"id":"1","user_id":"u1","created_at":"2020-03-05T12:00:00Z","text":"RT @foo: #Corona",
 *  "lang":"en","retweeted_user":"foo","user_location":"Baltimore, MD",
 *  "hashtags":["Corona"],"urls":[]}
 * ```
 *
 * `retweeted_user`, `user_location` and `lang` may be null or absent.
 * `hashtags` and `urls` are optional; when absent they are derived from `text`.
 */

namespace stancekit::corpus {

struct Tweet {
    std::string id;
    std::string user_id;
    std::int64_t timestamp_utc = 0;
    std::string text;
    std::optional<std::string> lang;
    std::optional<std::string> retweeted_account;
    /// Lowercase-folded, '#' stripped.
    std::vector<std::string> hashtags;
    /// Same order as `hashtags`, original case.
    std::vector<std::string> hashtag_surface;
    std::vector<std::string> urls;
    std::optional<std::string> user_location;

    bool operator==(const Tweet&) const = default;
};

/// Decodes one record. `line_number` is only used for error messages.
Tweet parse_tweet_record(std::string_view line, std::size_t line_number = 1);

/// Encodes a tweet as a single line (no trailing newline). Hashtags and URLs are written explicitly.
std::string serialize_tweet_record(const Tweet& tweet);

/// Reads every non-blank line. Throws DataError on duplicate tweet ids.
std::vector<Tweet> read_corpus(std::istream& in);
std::vector<Tweet> read_corpus_file(const std::string& path);

void write_corpus(std::ostream& out, const std::vector<Tweet>& tweets);
void write_corpus_file(const std::string& path, const std::vector<Tweet>& tweets);

enum class MatchMode { substring, token };

struct Keyword {
    std::string text;
    bool case_sensitive = false;
};

/**
 * Case rule for keyword lists that do not state one per keyword: keywords made
 * only of uppercase letters and digits (with at least two letters) match
 * case-sensitively, everything else case-insensitively. "GOP" and "DNC" then
 * do not fire on "gop" inside ordinary words, while "Trump" matches "trump".
 */
Keyword keyword_with_default_case(std::string text);

struct FilterSpec {
    std::vector<Keyword> keywords;
    MatchMode match_mode = MatchMode::substring;
    std::optional<std::string> lang;
    std::optional<Day> date_start;
    std::optional<Day> date_end;
};

/// Throws ConfigError if the spec violates its invariants.
void validate(const FilterSpec& spec, bool keyword_filter_requested);

bool matches_keywords(const Tweet& tweet, const std::vector<Keyword>& keywords, MatchMode mode);

std::vector<Tweet> filter_by_keywords(const std::vector<Tweet>& tweets, const FilterSpec& spec);
std::vector<Tweet> filter_by_language(const std::vector<Tweet>& tweets, const std::string& tag);
/// Retains tweets whose UTC day lies in [start, end].
std::vector<Tweet> filter_by_daterange(const std::vector<Tweet>& tweets, Day start, Day end);
std::vector<Tweet> filter_by_users(const std::vector<Tweet>& tweets, const std::unordered_set<std::string>& users);

/// Keeps each user's `cap` most recent tweets (ties on timestamp broken by larger id first).
std::vector<Tweet> cap_user_timelines(const std::vector<Tweet>& tweets, std::size_t cap);

struct StateEntry {
    std::string name;
    std::string abbreviation;
};

using StateTable = std::vector<StateEntry>;

/// The 50 US states with postal abbreviations.
const StateTable& default_state_table();

/// Reads "name<TAB>abbrev" lines; '#' starts a comment line.
StateTable read_state_table(std::istream& in);
StateTable read_state_table_file(const std::string& path);

/**
 * US-location heuristic over a free-text profile location.
 *
 * Matches if the text contains "United States" or "America" (case-insensitive
 * substring), a state name (case-insensitive substring), or "USA" / a state
 * abbreviation as an exact uppercase token. Substring matching means
 * "American" matches "America".
 */
bool match_us_location(std::string_view location, const StateTable& states);

/// Sorted user ids whose profile location matches on at least one of their tweets.
std::vector<std::string> users_with_us_location(const std::vector<Tweet>& tweets, const StateTable& states);

/// Users ordered by descending tweet count, ties by ascending id, truncated to k.
std::vector<std::string> select_top_users(const std::vector<Tweet>& tweets, std::size_t k);

/// Uniform sample without replacement; order is the draw order. Throws ConfigError if n exceeds the population.
std::vector<std::string> sample_users(const std::vector<std::string>& users, std::size_t n, std::uint64_t seed);

struct CorpusStats {
    std::size_t tweet_count = 0;
    std::size_t user_count = 0;
    double tweets_per_user_mean = 0.0;
    /// Population standard deviation.
    double tweets_per_user_stddev = 0.0;
    std::size_t min_tweets_per_user = 0;
    std::size_t max_tweets_per_user = 0;
};

CorpusStats corpus_stats(const std::vector<Tweet>& tweets);

} // namespace stancekit::corpus

#endif
