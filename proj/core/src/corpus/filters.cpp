#include "stancekit/corpus.hpp"

#include "stancekit/error.hpp"
#include "stancekit/text.hpp"

#include <algorithm>
#include <unordered_map>

namespace stancekit::corpus {

namespace {

bool equals_icase(std::string_view a, std::string_view b) {
    return a.size() == b.size() && text::ascii_lower(a) == text::ascii_lower(b);
}

bool keyword_hits(std::string_view body, const std::vector<std::string_view>& toks, const Keyword& kw, MatchMode mode) {
    if (mode == MatchMode::substring) {
        return kw.case_sensitive ? body.find(kw.text) != std::string_view::npos : text::contains_icase(body, kw.text);
    }
    return std::any_of(toks.begin(), toks.end(), [&](std::string_view tok) {
        return kw.case_sensitive ? tok == kw.text : equals_icase(tok, kw.text);
    });
}

template <typename Pred>
std::vector<Tweet> keep_if(const std::vector<Tweet>& tweets, Pred pred) {
    std::vector<Tweet> out;
    for (const auto& t : tweets) {
        if (pred(t)) {
            out.push_back(t);
        }
    }
    return out;
}

} // namespace

Keyword keyword_with_default_case(std::string text) {
    int letters = 0;
    bool all_upper = true;
    for (unsigned char c : text) {
        if (c >= 'a' && c <= 'z') {
            all_upper = false;
        } else if (c >= 'A' && c <= 'Z') {
            ++letters;
        }
    }
    const bool sensitive = all_upper && letters >= 2;
    return Keyword{std::move(text), sensitive};
}

void validate(const FilterSpec& spec, bool keyword_filter_requested) {
    if (keyword_filter_requested && spec.keywords.empty()) {
        throw ConfigError("keyword filter requested with an empty keyword list");
    }
    for (const auto& kw : spec.keywords) {
        if (kw.text.empty()) {
            throw ConfigError("empty keyword");
        }
    }
    if (spec.lang && spec.lang->empty()) {
        throw ConfigError("language tag must be non-empty");
    }
    if (spec.date_start && spec.date_end && *spec.date_end < *spec.date_start) {
        throw ConfigError("date_start must not be after date_end");
    }
}

bool matches_keywords(const Tweet& tweet, const std::vector<Keyword>& keywords, MatchMode mode) {
    std::vector<std::string_view> toks;
    if (mode == MatchMode::token) {
        toks = text::tokens(tweet.text);
    }
    return std::any_of(keywords.begin(), keywords.end(),
                       [&](const Keyword& kw) { return keyword_hits(tweet.text, toks, kw, mode); });
}

std::vector<Tweet> filter_by_keywords(const std::vector<Tweet>& tweets, const FilterSpec& spec) {
    validate(spec, true);
    return keep_if(tweets, [&](const Tweet& t) { return matches_keywords(t, spec.keywords, spec.match_mode); });
}

std::vector<Tweet> filter_by_language(const std::vector<Tweet>& tweets, const std::string& tag) {
    if (tag.empty()) {
        throw ConfigError("language tag must be non-empty");
    }
    return keep_if(tweets, [&](const Tweet& t) { return t.lang && *t.lang == tag; });
}

std::vector<Tweet> filter_by_daterange(const std::vector<Tweet>& tweets, Day start, Day end) {
    if (end < start) {
        throw ConfigError("date range start " + format_day(start) + " is after end " + format_day(end));
    }
    return keep_if(tweets, [&](const Tweet& t) {
        const Day d = day_of(t.timestamp_utc);
        return start <= d && d <= end;
    });
}

std::vector<Tweet> filter_by_users(const std::vector<Tweet>& tweets, const std::unordered_set<std::string>& users) {
    return keep_if(tweets, [&](const Tweet& t) { return users.count(t.user_id) > 0; });
}

std::vector<Tweet> cap_user_timelines(const std::vector<Tweet>& tweets, std::size_t cap) {
    std::unordered_map<std::string, std::vector<std::size_t>> by_user;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
        by_user[tweets[i].user_id].push_back(i);
    }
    std::vector<char> keep(tweets.size(), 0);
    for (auto& [user, idx] : by_user) {
        if (idx.size() > cap) {
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                if (tweets[a].timestamp_utc != tweets[b].timestamp_utc) {
                    return tweets[a].timestamp_utc > tweets[b].timestamp_utc;
                }
                return tweets[a].id > tweets[b].id;
            });
            idx.resize(cap);
        }
        for (auto i : idx) {
            keep[i] = 1;
        }
    }
    std::vector<Tweet> out;
    for (std::size_t i = 0; i < tweets.size(); ++i) {
        if (keep[i]) {
            out.push_back(tweets[i]);
        }
    }
    return out;
}

} // namespace stancekit::corpus
