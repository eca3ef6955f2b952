#ifndef STANCEKIT_SYNTH_HPP
#define STANCEKIT_SYNTH_HPP

#include "stancekit/civil_time.hpp"
#include "stancekit/corpus.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stancekit::synth {

/**
 * Parameters of a two-camp retweet corpus with planted stance.
 *
 * Each retweet goes to the shared pool with `shared_probability`; otherwise to
 * the author's own camp pool with probability 1 - `crossover` and to the other
 * camp's pool with `crossover`. Hashtags and URLs follow the same crossover
 * rule over their own pools. Accounts are drawn uniformly within a pool.
 */
struct SynthParams {
    std::array<std::string, 2> camp_names{"camp_a", "camp_b"};
    std::array<std::size_t, 2> users_per_camp{100, 100};
    std::array<std::size_t, 2> accounts_per_camp{50, 50};
    std::size_t shared_account_count = 0;
    double shared_probability = 0.0;
    double crossover = 0.05;

    /// Negative-binomial retweets per user: mean and dispersion (shape) parameter.
    double retweets_mean = 30.0;
    double retweets_dispersion = 2.0;
    /// Poisson mean of non-retweet tweets per user.
    double original_tweets_mean = 5.0;

    std::array<std::size_t, 2> hashtags_per_camp{20, 20};
    /// Poisson mean of hashtags per tweet.
    double hashtags_per_tweet = 1.0;
    std::array<std::size_t, 2> urls_per_camp{10, 10};
    double url_probability = 0.2;

    Day start = make_day(2020, 2, 28);
    Day end = make_day(2020, 4, 12);
    std::uint64_t seed = 1;
};

/// Throws ConfigError on invalid ranges or an empty pool that would be drawn from.
void validate(const SynthParams& params);

/// Account handle `index` of a camp pool, e.g. "camp_a_acct_0007".
std::string camp_account(const SynthParams& params, int camp, std::size_t index);
std::string shared_account(std::size_t index);
std::string camp_hashtag(const SynthParams& params, int camp, std::size_t index);
std::string camp_url(const SynthParams& params, int camp, std::size_t index);

struct GroundTruth {
    std::string user_id;
    int camp = 0;
};

struct SynthCorpus {
    std::vector<corpus::Tweet> tweets;
    /// Sorted by user id.
    std::vector<GroundTruth> truth;
};

/// Deterministic for a fixed seed; each user draws from its own derived stream.
SynthCorpus generate_corpus(const SynthParams& params);

/// "user_id camp_name" lines.
void write_truth_file(const std::string& path, const SynthParams& params, const std::vector<GroundTruth>& truth);

} // namespace stancekit::synth

#endif
