#include "support.hpp"

#include "stancekit/corpus.hpp"
#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace stancekit;
using namespace stancekit::corpus;
using stancekit::testing::at;
using stancekit::testing::make_tweet;

namespace {

std::vector<std::string> ids(const std::vector<Tweet>& tweets) {
    std::vector<std::string> out;
    for (const auto& t : tweets) {
        out.push_back(t.id);
    }
    return out;
}

FilterSpec keywords(std::vector<Keyword> kws, MatchMode mode = MatchMode::substring) {
    FilterSpec spec;
    spec.keywords = std::move(kws);
    spec.match_mode = mode;
    return spec;
}

const std::vector<std::string> kWords = {"corona", "Corona", "COVID19", "covid", "GOP", "gop", "Trump", "trumpet",
                                         "scorpion", "#Corona", "rally", "Biden", "DNC", "dnc", "virus", "news"};
const std::vector<std::string> kLangs = {"en", "en-gb", "es", "fr"};

std::vector<Tweet> random_corpus(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> word(0, kWords.size() - 1);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    std::uniform_int_distribution<std::size_t> lang(0, kLangs.size());
    std::uniform_int_distribution<int> day(0, 120);
    std::uniform_int_distribution<int> user(0, 14);
    std::vector<Tweet> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string text;
        for (std::size_t w = len(rng); w > 0; --w) {
            text += kWords[word(rng)] + (w > 1 ? " " : "");
        }
        auto t = make_tweet("t" + std::to_string(i), "u" + std::to_string(user(rng)),
                            day_start(make_day(2020, 1, 1)) + day(rng) * 86400 + 3600, text);
        const auto l = lang(rng);
        t.lang = l == kLangs.size() ? std::nullopt : std::optional<std::string>(kLangs[l]);
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace

// ---- records ----------------------------------------------------------------

TEST(Record, RetweetWithHashtag) {
    const auto t = parse_tweet_record(
        R"({"id":"1","user_id":"u","created_at":"2020-03-01T10:00:00Z","text":"RT @foo: #Corona is here","retweeted_user":"foo"})");
    EXPECT_EQ(t.retweeted_account, std::optional<std::string>("foo"));
    EXPECT_EQ(t.hashtags, std::vector<std::string>{"corona"});
    EXPECT_EQ(t.hashtag_surface, std::vector<std::string>{"Corona"});
}

TEST(Record, NoHashtagsAndNoRetweet) {
    const auto t =
        parse_tweet_record(R"({"id":"1","user_id":"u","created_at":"2020-03-01T10:00:00Z","text":"plain text"})");
    EXPECT_TRUE(t.hashtags.empty());
    EXPECT_FALSE(t.retweeted_account.has_value());
    EXPECT_FALSE(t.lang.has_value());
}

TEST(Record, ExplicitListsWinOverText) {
    const auto t = parse_tweet_record(
        R"({"id":"1","user_id":"u","created_at":"2020-03-01T10:00:00Z","text":"#a http://x","hashtags":["#B"],"urls":[],"retweeted_user":""})");
    EXPECT_EQ(t.hashtags, std::vector<std::string>{"b"});
    EXPECT_TRUE(t.urls.empty());
    EXPECT_FALSE(t.retweeted_account.has_value());
}

TEST(Record, SchemaAndParseErrors) {
    EXPECT_THROW(parse_tweet_record(R"({"id":"1","created_at":"2020-03-01T10:00:00Z","text":"x"})"), SchemaError);
    EXPECT_THROW(parse_tweet_record(R"({"id":"","user_id":"u","created_at":"2020-03-01","text":"x"})"), SchemaError);
    EXPECT_THROW(parse_tweet_record(R"({"id":"1","user_id":"u","created_at":"soon","text":"x"})"), SchemaError);
    EXPECT_THROW(parse_tweet_record(R"({"id":1,"user_id":"u","created_at":"2020-03-01T00:00:00Z","text":"x"})"),
                 SchemaError);
    EXPECT_THROW(parse_tweet_record("{not json"), ParseError);
    EXPECT_THROW(parse_tweet_record("[1,2]"), ParseError);
    try {
        parse_tweet_record(R"({"id":"1","created_at":"2020-03-01T10:00:00Z","text":"x"})", 7);
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.line(), 7u);
        EXPECT_EQ(e.field(), "user_id");
    }
}

TEST(Record, CorpusRejectsDuplicateIdsWithLineNumber) {
    std::istringstream in(R"({"id":"1","user_id":"u","created_at":"2020-03-01T10:00:00Z","text":"x"}

{"id":"1","user_id":"v","created_at":"2020-03-01T10:00:00Z","text":"y"}
)");
    try {
        read_corpus(in);
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(RecordProperty, ParseSerializeParseIsIdentity) {
    auto tweets = random_corpus(11, 300);
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < tweets.size(); ++i) {
        auto& t = tweets[i];
        t.text += " #Tag" + std::to_string(i % 7) + " https://ex.com/" + std::to_string(i) + " \"quoted\" é";
        t.hashtag_surface.push_back("Tag" + std::to_string(i % 7));
        t.hashtags.push_back("tag" + std::to_string(i % 7));
        t.urls.push_back("https://ex.com/" + std::to_string(i));
        if (i % 3 == 0) {
            t.retweeted_account = "acct" + std::to_string(i % 5);
        }
        if (i % 4 == 0) {
            t.user_location = "Baltimore, MD";
        }
        const auto reparsed = parse_tweet_record(serialize_tweet_record(t));
        const auto again = parse_tweet_record(serialize_tweet_record(reparsed));
        EXPECT_EQ(reparsed, again);
        EXPECT_EQ(reparsed, t);
    }
}

// ---- filters ---------------------------------------------------------------

TEST(Filter, KeywordExamples) {
    const std::vector<Tweet> tweets = {make_tweet("1", "u", 0, "the coronavirus spreads"),
                                       make_tweet("2", "u", 0, "GOP rally"), make_tweet("3", "u", 0, "scorpion")};
    EXPECT_EQ(ids(filter_by_keywords(tweets, keywords({{"corona", false}}))), std::vector<std::string>{"1"});
    EXPECT_EQ(ids(filter_by_keywords(tweets, keywords({{"GOP", true}}))), std::vector<std::string>{"2"});
}

TEST(Filter, CaseRulesAndTokenMode) {
    const std::vector<Tweet> tweets = {make_tweet("1", "u", 0, "gop rally"), make_tweet("2", "u", 0, "Trumpet solo"),
                                       make_tweet("3", "u", 0, "Trump, rally")};
    EXPECT_TRUE(keyword_with_default_case("GOP").case_sensitive);
    EXPECT_FALSE(keyword_with_default_case("Trump").case_sensitive);
    EXPECT_FALSE(keyword_with_default_case("X").case_sensitive);
    EXPECT_TRUE(keyword_with_default_case("COVID19").case_sensitive);
    EXPECT_TRUE(filter_by_keywords(tweets, keywords({keyword_with_default_case("GOP")})).empty());
    EXPECT_EQ(ids(filter_by_keywords(tweets, keywords({{"trump", false}}))), (std::vector<std::string>{"2", "3"}));
    EXPECT_EQ(ids(filter_by_keywords(tweets, keywords({{"trump", false}}, MatchMode::token))),
              std::vector<std::string>{"3"});
    EXPECT_THROW(filter_by_keywords(tweets, keywords({})), ConfigError);
}

TEST(Filter, LanguageExamples) {
    auto a = make_tweet("1", "u", 0, "x");
    auto b = make_tweet("2", "u", 0, "x");
    b.lang = "en-gb";
    auto c = make_tweet("3", "u", 0, "x");
    c.lang.reset();
    EXPECT_EQ(ids(filter_by_language({a, b, c}, "en")), std::vector<std::string>{"1"});
}

TEST(Filter, DateRangeIsInclusiveInUtcDays) {
    const std::vector<Tweet> tweets = {make_tweet("1", "u", at("2020-02-28", 0), "x"),
                                       make_tweet("2", "u", at("2019-12-31", 23), "x"),
                                       make_tweet("3", "u", at("2020-04-12", 23) + 3599, "x"),
                                       make_tweet("4", "u", at("2020-04-13", 0), "x")};
    EXPECT_EQ(ids(filter_by_daterange(tweets, parse_day("2020-02-28"), parse_day("2020-04-12"))),
              (std::vector<std::string>{"1", "3"}));
    EXPECT_TRUE(filter_by_daterange(tweets, parse_day("2020-01-01"), parse_day("2020-01-31")).empty());
    EXPECT_EQ(ids(filter_by_daterange(tweets, parse_day("2020-02-28"), parse_day("2020-02-28"))),
              std::vector<std::string>{"1"});
    EXPECT_THROW(filter_by_daterange(tweets, parse_day("2020-02-28"), parse_day("2020-02-27")), ConfigError);
}

TEST(Filter, TimelineCapKeepsMostRecent) {
    const std::vector<Tweet> tweets = {make_tweet("a1", "a", 10, "x"), make_tweet("a2", "a", 30, "x"),
                                       make_tweet("a3", "a", 20, "x"), make_tweet("a4", "a", 30, "x"),
                                       make_tweet("b1", "b", 5, "x")};
    EXPECT_EQ(ids(cap_user_timelines(tweets, 2)), (std::vector<std::string>{"a2", "a4", "b1"}));
    EXPECT_EQ(ids(cap_user_timelines(tweets, 3)), (std::vector<std::string>{"a2", "a3", "a4", "b1"}));
}

TEST(FilterProperty, IdempotentCommutingAndSound) {
    const auto kw = keywords({{"corona", false}, keyword_with_default_case("GOP")});
    const Day s = make_day(2020, 2, 1);
    const Day e = make_day(2020, 3, 15);
    using Step = std::function<std::vector<Tweet>(const std::vector<Tweet>&)>;
    const std::vector<Step> steps = {
        [&](const auto& t) { return filter_by_keywords(t, kw); },
        [&](const auto& t) { return filter_by_language(t, "en"); },
        [&](const auto& t) { return filter_by_daterange(t, s, e); },
    };
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto corpus = random_corpus(seed, 200);
        for (const auto& step : steps) {
            const auto once = step(corpus);
            EXPECT_EQ(step(once), once);
        }
        std::vector<int> order = {0, 1, 2};
        std::vector<Tweet> reference;
        bool first = true;
        do {
            auto out = corpus;
            for (int i : order) {
                out = steps[static_cast<std::size_t>(i)](out);
            }
            if (first) {
                reference = out;
                first = false;
            }
            EXPECT_EQ(ids(out), ids(reference));
        } while (std::next_permutation(order.begin(), order.end()));

        // Soundness and completeness against predicates re-evaluated per tweet.
        std::vector<std::string> expected;
        for (const auto& t : corpus) {
            const bool kw_hit =
                stancekit::text::contains_icase(t.text, "corona") || t.text.find("GOP") != std::string::npos;
            const Day d = day_of(t.timestamp_utc);
            if (kw_hit && t.lang == std::optional<std::string>("en") && s <= d && d <= e) {
                expected.push_back(t.id);
            }
        }
        EXPECT_EQ(ids(reference), expected);
    }
}

// ---- location --------------------------------------------------------------

TEST(Location, Examples) {
    const auto& states = default_state_table();
    EXPECT_TRUE(match_us_location("Baltimore, MD", states));
    EXPECT_FALSE(match_us_location("md anderson fan", states));
    EXPECT_FALSE(match_us_location("Paris, France", states));
    EXPECT_TRUE(match_us_location("maryland", states));
    EXPECT_TRUE(match_us_location("Proud USA patriot", states));
    EXPECT_FALSE(match_us_location("usa", states));
    EXPECT_TRUE(match_us_location("united states of america", states));
    EXPECT_TRUE(match_us_location("American abroad", states));
    EXPECT_FALSE(match_us_location("MDX records", states));
    EXPECT_FALSE(match_us_location("", states));
}

TEST(Location, BundledTableMatchesBuiltin) {
    const auto file = read_state_table_file(std::string(STANCEKIT_SOURCE_DIR) + "/core/data/us_states.tsv");
    const auto& builtin = default_state_table();
    ASSERT_EQ(file.size(), 50u);
    ASSERT_EQ(file.size(), builtin.size());
    for (std::size_t i = 0; i < file.size(); ++i) {
        EXPECT_EQ(file[i].name, builtin[i].name);
        EXPECT_EQ(file[i].abbreviation, builtin[i].abbreviation);
    }
}

TEST(Location, UsersWithAnyMatchingProfile) {
    auto a = make_tweet("1", "zed", 0, "x");
    a.user_location = "Austin, TX";
    auto b = make_tweet("2", "amy", 0, "x");
    b.user_location = "London";
    auto c = make_tweet("3", "bob", 0, "x");
    EXPECT_EQ(users_with_us_location({a, b, c}, default_state_table()), std::vector<std::string>{"zed"});
    std::istringstream bad("Maryland\n");
    EXPECT_THROW(read_state_table(bad), ParseError);
}

// ---- users and stats ------------------------------------------------------

namespace {

std::vector<Tweet> tweets_with_counts(const std::map<std::string, int>& counts) {
    std::vector<Tweet> out;
    int id = 0;
    for (const auto& [user, n] : counts) {
        for (int i = 0; i < n; ++i) {
            out.push_back(make_tweet(std::to_string(id++), user, 0, "x"));
        }
    }
    return out;
}

} // namespace

TEST(Users, TopUsersExamples) {
    using V = std::vector<std::string>;
    EXPECT_EQ(select_top_users(tweets_with_counts({{"a", 3}, {"b", 5}, {"c", 1}}), 2), (V{"b", "a"}));
    EXPECT_EQ(select_top_users(tweets_with_counts({{"a", 2}, {"b", 2}}), 1), V{"a"});
    EXPECT_EQ(select_top_users(tweets_with_counts({{"a", 2}, {"b", 1}}), 10), (V{"a", "b"}));
    EXPECT_THROW(select_top_users({}, 0), ConfigError);
}

TEST(UsersProperty, TopUserCountsNonIncreasing) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto corpus = random_corpus(seed, 150);
        std::map<std::string, int> counts;
        for (const auto& t : corpus) {
            ++counts[t.user_id];
        }
        const auto top = select_top_users(corpus, 8);
        for (std::size_t i = 1; i < top.size(); ++i) {
            EXPECT_GE(counts[top[i - 1]], counts[top[i]]);
        }
    }
}

TEST(Users, SamplingExamples) {
    const std::vector<std::string> users = {"a", "b", "c", "d", "e"};
    auto all = sample_users(users, 5, 9);
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, users);
    EXPECT_EQ(sample_users(users, 3, 42), sample_users(users, 3, 42));
    EXPECT_TRUE(sample_users(users, 0, 1).empty());
    EXPECT_THROW(sample_users(users, 6, 1), ConfigError);
    const auto s = sample_users(users, 3, 7);
    EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), 3u);
}

TEST(Stats, HandComputedMoments) {
    const auto s = corpus_stats(tweets_with_counts({{"a", 1}, {"b", 3}}));
    EXPECT_EQ(s.tweet_count, 4u);
    EXPECT_EQ(s.user_count, 2u);
    EXPECT_DOUBLE_EQ(s.tweets_per_user_mean, 2.0);
    EXPECT_DOUBLE_EQ(s.tweets_per_user_stddev, 1.0);
    EXPECT_EQ(s.min_tweets_per_user, 1u);
    EXPECT_EQ(s.max_tweets_per_user, 3u);
    EXPECT_DOUBLE_EQ(corpus_stats(tweets_with_counts({{"a", 4}})).tweets_per_user_stddev, 0.0);
    const auto empty = corpus_stats({});
    EXPECT_EQ(empty.tweet_count, 0u);
    EXPECT_EQ(empty.user_count, 0u);
    EXPECT_EQ(empty.tweets_per_user_mean, 0.0);
}

TEST(StatsProperty, MeanTimesUsersIsTweetCount) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = corpus_stats(random_corpus(seed, 97));
        EXPECT_NEAR(s.tweets_per_user_mean * static_cast<double>(s.user_count), static_cast<double>(s.tweet_count),
                    1e-9);
        EXPECT_LE(static_cast<double>(s.min_tweets_per_user), s.tweets_per_user_mean);
        EXPECT_LE(s.tweets_per_user_mean, static_cast<double>(s.max_tweets_per_user));
    }
}
