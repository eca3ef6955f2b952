#include "stancekit/valence.hpp"

#include "stancekit/error.hpp"

#include <set>

namespace stancekit::valence {

const char* to_string(TermKind kind) {
    switch (kind) {
    case TermKind::hashtag:
        return "hashtag";
    case TermKind::account:
        return "account";
    case TermKind::url:
        return "url";
    }
    return "unknown";
}

TermKind parse_term_kind(std::string_view name) {
    if (name == "hashtag") {
        return TermKind::hashtag;
    }
    if (name == "account") {
        return TermKind::account;
    }
    if (name == "url") {
        return TermKind::url;
    }
    throw ConfigError("unknown term kind '" + std::string(name) + "' (expected hashtag, account or url)");
}

std::int64_t GroupTermCounts::count(int camp, const std::string& term) const {
    const auto& m = counts.at(static_cast<std::size_t>(camp));
    const auto it = m.find(term);
    return it == m.end() ? 0 : it->second;
}

GroupTermCounts count_terms(const std::vector<corpus::Tweet>& tweets, const cluster::NamedAssignment& assignment,
                            TermKind kind, const CountOptions& options) {
    GroupTermCounts out;
    out.kind = kind;
    out.camps = assignment.camps;
    std::map<std::string, std::map<std::string, std::int64_t>> surfaces;

    std::vector<std::pair<std::string, std::string>> terms; // (key, surface)
    std::set<std::string> seen;
    for (const auto& t : tweets) {
        const int camp = assignment.camp_of(t.user_id);
        if (camp == cluster::kUnclustered) {
            continue;
        }
        terms.clear();
        switch (kind) {
        case TermKind::hashtag:
            for (std::size_t i = 0; i < t.hashtags.size(); ++i) {
                terms.emplace_back(t.hashtags[i], t.hashtag_surface[i]);
            }
            break;
        case TermKind::account:
            if (t.retweeted_account) {
                terms.emplace_back(*t.retweeted_account, *t.retweeted_account);
            }
            break;
        case TermKind::url:
            for (const auto& u : t.urls) {
                auto key = normalize_url(u, options.url_expansions);
                terms.emplace_back(key, key);
            }
            break;
        }
        seen.clear();
        for (const auto& [key, surface] : terms) {
            if (options.per_tweet_dedup && !seen.insert(key).second) {
                continue;
            }
            ++out.counts[static_cast<std::size_t>(camp)][key];
            ++out.totals[static_cast<std::size_t>(camp)];
            ++surfaces[key][surface];
        }
    }

    for (const auto& [key, forms] : surfaces) {
        const std::string* best = nullptr;
        std::int64_t best_count = -1;
        for (const auto& [form, c] : forms) {
            if (c > best_count) {
                best = &form;
                best_count = c;
            }
        }
        out.display[key] = *best;
    }
    return out;
}

} // namespace stancekit::valence
