#include "stancekit/corpus.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

namespace stancekit::corpus {

std::vector<std::string> select_top_users(const std::vector<Tweet>& tweets, std::size_t k) {
    if (k == 0) {
        throw ConfigError("select_top_users: k must be at least 1");
    }
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& t : tweets) {
        ++counts[t.user_id];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (auto& [user, count] : ranked) {
        out.push_back(user);
    }
    return out;
}

std::vector<std::string> sample_users(const std::vector<std::string>& users, std::size_t n, std::uint64_t seed) {
    if (n > users.size()) {
        throw ConfigError("sample_users: requested " + std::to_string(n) + " users from a population of " +
                          std::to_string(users.size()));
    }
    std::vector<std::string> pool(users);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(n);
    return pool;
}

CorpusStats corpus_stats(const std::vector<Tweet>& tweets) {
    CorpusStats stats;
    if (tweets.empty()) {
        return stats;
    }
    std::map<std::string, std::size_t> counts;
    for (const auto& t : tweets) {
        ++counts[t.user_id];
    }
    stats.tweet_count = tweets.size();
    stats.user_count = counts.size();
    stats.min_tweets_per_user = tweets.size();
    for (const auto& [user, c] : counts) {
        stats.min_tweets_per_user = std::min(stats.min_tweets_per_user, c);
        stats.max_tweets_per_user = std::max(stats.max_tweets_per_user, c);
    }
    const double n = static_cast<double>(counts.size());
    stats.tweets_per_user_mean = static_cast<double>(tweets.size()) / n;
    double ss = 0.0;
    for (const auto& [user, c] : counts) {
        const double d = static_cast<double>(c) - stats.tweets_per_user_mean;
        ss += d * d;
    }
    stats.tweets_per_user_stddev = std::sqrt(ss / n);
    return stats;
}

} // namespace stancekit::corpus
