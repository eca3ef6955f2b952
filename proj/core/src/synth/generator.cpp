#include "stancekit/synth.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

namespace stancekit::synth {

namespace {

constexpr const char* kPhrases[] = {
    "coronavirus update for today", "covid19 cases keep rising", "thoughts on the corona response",
    "read this about covid", "new coronavirus briefing", "stay safe everyone covid19",
};

constexpr const char* kLocations[] = {
    "Baltimore, MD", "Austin, TX", "New York", "California, USA", "London, UK", "Paris, France", "", "somewhere",
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string padded(std::size_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", width, v);
    return buf;
}

/// Picks the source pool for one draw: 0/1 for a camp pool, 2 for the shared pool.
int draw_pool(std::mt19937_64& rng, int own, double crossover, double shared_probability) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (shared_probability > 0.0 && unit(rng) < shared_probability) {
        return 2;
    }
    return unit(rng) < crossover ? 1 - own : own;
}

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    return pick(rng);
}

} // namespace

void validate(const SynthParams& params) {
    if (!(params.crossover >= 0.0 && params.crossover <= 1.0)) {
        throw ConfigError("synth: crossover probability must lie in [0, 1]");
    }
    if (!(params.shared_probability >= 0.0 && params.shared_probability <= 1.0)) {
        throw ConfigError("synth: shared_probability must lie in [0, 1]");
    }
    if (!(params.url_probability >= 0.0 && params.url_probability <= 1.0)) {
        throw ConfigError("synth: url_probability must lie in [0, 1]");
    }
    if (!(params.retweets_mean >= 0.0) || !(params.retweets_dispersion > 0.0)) {
        throw ConfigError("synth: retweets_mean must be >= 0 and retweets_dispersion > 0");
    }
    if (!(params.original_tweets_mean >= 0.0) || !(params.hashtags_per_tweet >= 0.0)) {
        throw ConfigError("synth: tweet and hashtag means must be non-negative");
    }
    if (params.end < params.start) {
        throw ConfigError("synth: start date after end date");
    }
    if (params.camp_names[0].empty() || params.camp_names[1].empty() || params.camp_names[0] == params.camp_names[1]) {
        throw ConfigError("synth: camp names must be distinct and non-empty");
    }
    for (const auto& name : params.camp_names) {
        if (name.find_first_of(" \t\n") != std::string::npos) {
            throw ConfigError("synth: camp names must not contain whitespace");
        }
    }

    const bool retweeting = params.retweets_mean > 0.0;
    const bool tagging = params.hashtags_per_tweet > 0.0;
    const bool linking = params.url_probability > 0.0;
    if (retweeting && params.shared_probability > 0.0 && params.shared_account_count == 0) {
        throw ConfigError("synth: shared_probability > 0 with an empty shared account pool");
    }
    const bool camp_draws = params.shared_probability < 1.0;
    for (int c = 0; c < 2; ++c) {
        const int o = 1 - c;
        if (params.users_per_camp[c] == 0 || !camp_draws) {
            continue;
        }
        auto check = [&](bool active, const std::array<std::size_t, 2>& pools, const char* what) {
            if (!active) {
                return;
            }
            if (params.crossover < 1.0 && pools[c] == 0) {
                throw ConfigError(std::string("synth: camp '") + params.camp_names[c] + "' draws " + what +
                                  " from its own empty pool");
            }
            if (params.crossover > 0.0 && pools[o] == 0) {
                throw ConfigError(std::string("synth: camp '") + params.camp_names[c] + "' crosses over into the empty " +
                                  what + " pool of '" + params.camp_names[o] + "'");
            }
        };
        check(retweeting, params.accounts_per_camp, "accounts");
        check(tagging, params.hashtags_per_camp, "hashtags");
        check(linking, params.urls_per_camp, "URLs");
    }
}

std::string camp_account(const SynthParams& params, int camp, std::size_t index) {
    return params.camp_names[static_cast<std::size_t>(camp)] + "_acct_" + padded(index, 4);
}

std::string shared_account(std::size_t index) { return "shared_acct_" + padded(index, 4); }

std::string camp_hashtag(const SynthParams& params, int camp, std::size_t index) {
    return params.camp_names[static_cast<std::size_t>(camp)] + "Tag" + padded(index, 3);
}

std::string camp_url(const SynthParams& params, int camp, std::size_t index) {
    return "https://news.example.com/" + params.camp_names[static_cast<std::size_t>(camp)] + "/story-" +
           padded(index, 3);
}

SynthCorpus generate_corpus(const SynthParams& params) {
    validate(params);
    SynthCorpus out;
    const std::int64_t span_seconds = (params.end.value - params.start.value + 1) * 86400;
    std::size_t global_user = 0;

    for (int camp = 0; camp < 2; ++camp) {
        for (std::size_t u = 0; u < params.users_per_camp[static_cast<std::size_t>(camp)]; ++u, ++global_user) {
            std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(global_user + 1)));
            const std::string user_id = params.camp_names[static_cast<std::size_t>(camp)] + "_user_" + padded(u, 5);
            out.truth.push_back({user_id, camp});

            // Negative binomial as a gamma-Poisson mixture, so the dispersion need not be an integer.
            std::size_t n_retweets = 0;
            if (params.retweets_mean > 0.0) {
                std::gamma_distribution<double> rate(params.retweets_dispersion,
                                                     params.retweets_mean / params.retweets_dispersion);
                const double lambda = rate(rng);
                if (lambda > 0.0) {
                    std::poisson_distribution<std::size_t> pois(lambda);
                    n_retweets = pois(rng);
                }
            }
            std::size_t n_original = 0;
            if (params.original_tweets_mean > 0.0) {
                std::poisson_distribution<std::size_t> pois(params.original_tweets_mean);
                n_original = pois(rng);
            }
            const std::string location = kLocations[draw_index(rng, std::size(kLocations))];
            std::uniform_int_distribution<std::int64_t> when(0, span_seconds - 1);

            for (std::size_t k = 0; k < n_retweets + n_original; ++k) {
                corpus::Tweet t;
                t.id = user_id + "-" + padded(k, 5);
                t.user_id = user_id;
                t.timestamp_utc = day_start(params.start) + when(rng);
                t.lang = "en";
                if (!location.empty()) {
                    t.user_location = location;
                }

                std::string body;
                if (k < n_retweets) {
                    const int pool = draw_pool(rng, camp, params.crossover, params.shared_probability);
                    const std::string account =
                        pool == 2 ? shared_account(draw_index(rng, params.shared_account_count))
                                  : camp_account(params, pool,
                                                 draw_index(rng, params.accounts_per_camp[static_cast<std::size_t>(pool)]));
                    t.retweeted_account = account;
                    body = "RT @" + account + ": ";
                }
                body += kPhrases[draw_index(rng, std::size(kPhrases))];

                std::size_t n_tags = 0;
                if (params.hashtags_per_tweet > 0.0) {
                    std::poisson_distribution<std::size_t> pois(params.hashtags_per_tweet);
                    n_tags = pois(rng);
                }
                for (std::size_t h = 0; h < n_tags; ++h) {
                    const int pool = draw_pool(rng, camp, params.crossover, 0.0);
                    body += " #" + camp_hashtag(params, pool,
                                                draw_index(rng, params.hashtags_per_camp[static_cast<std::size_t>(pool)]));
                }
                if (params.url_probability > 0.0) {
                    std::bernoulli_distribution has_url(params.url_probability);
                    if (has_url(rng)) {
                        const int pool = draw_pool(rng, camp, params.crossover, 0.0);
                        body += " " + camp_url(params, pool,
                                               draw_index(rng, params.urls_per_camp[static_cast<std::size_t>(pool)]));
                    }
                }

                t.text = std::move(body);
                t.hashtag_surface = text::extract_hashtags(t.text);
                for (const auto& tag : t.hashtag_surface) {
                    t.hashtags.push_back(text::ascii_lower(tag));
                }
                t.urls = text::extract_urls(t.text);
                out.tweets.push_back(std::move(t));
            }
        }
    }
    std::sort(out.truth.begin(), out.truth.end(),
              [](const GroundTruth& a, const GroundTruth& b) { return a.user_id < b.user_id; });
    return out;
}

void write_truth_file(const std::string& path, const SynthParams& params, const std::vector<GroundTruth>& truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    for (const auto& g : truth) {
        out << g.user_id << ' ' << params.camp_names[static_cast<std::size_t>(g.camp)] << '\n';
    }
}

} // namespace stancekit::synth
