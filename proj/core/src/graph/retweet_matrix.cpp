#include "stancekit/graph.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace stancekit::graph {

UserRetweetMatrix::UserRetweetMatrix(std::vector<std::string> users, std::vector<std::string> accounts,
                                     std::vector<std::size_t> row_offsets, std::vector<Entry> entries)
    : users_(std::move(users)), accounts_(std::move(accounts)), offsets_(std::move(row_offsets)),
      entries_(std::move(entries)) {
    if (offsets_.size() != users_.size() + 1 || offsets_.front() != 0 || offsets_.back() != entries_.size()) {
        throw DataError("retweet matrix: row offsets do not match the entry count");
    }
    if (!std::is_sorted(users_.begin(), users_.end()) ||
        std::adjacent_find(users_.begin(), users_.end()) != users_.end()) {
        throw DataError("retweet matrix: user ids must be sorted and unique");
    }
    if (!std::is_sorted(accounts_.begin(), accounts_.end()) ||
        std::adjacent_find(accounts_.begin(), accounts_.end()) != accounts_.end()) {
        throw DataError("retweet matrix: account ids must be sorted and unique");
    }
    for (std::size_t u = 0; u < users_.size(); ++u) {
        if (offsets_[u + 1] <= offsets_[u]) {
            throw DataError("retweet matrix: user '" + users_[u] + "' has an empty row");
        }
        for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
            if (entries_[e].column >= accounts_.size() || !(entries_[e].value > 0.0) ||
                (e > offsets_[u] && entries_[e].column <= entries_[e - 1].column)) {
                throw DataError("retweet matrix: malformed row for user '" + users_[u] + "'");
            }
        }
    }
}

std::size_t UserRetweetMatrix::account_index(const std::string& account) const {
    const auto it = std::lower_bound(accounts_.begin(), accounts_.end(), account);
    if (it == accounts_.end() || *it != account) {
        return accounts_.size();
    }
    return static_cast<std::size_t>(it - accounts_.begin());
}

UserRetweetMatrix build_retweet_matrix(const std::vector<corpus::Tweet>& tweets, const MatrixOptions& options) {
    if (options.min_user_retweets < 1 || options.min_account_mentions < 1) {
        throw ConfigError("retweet matrix thresholds must be at least 1");
    }

    std::map<std::string, std::map<std::string, std::size_t>> counts;
    std::map<std::string, std::set<std::string>> retweeters;
    for (const auto& t : tweets) {
        if (!t.retweeted_account) {
            continue;
        }
        ++counts[t.user_id][*t.retweeted_account];
        retweeters[*t.retweeted_account].insert(t.user_id);
    }

    std::set<std::string> kept_accounts;
    for (const auto& [account, who] : retweeters) {
        if (who.size() >= options.min_account_mentions) {
            kept_accounts.insert(account);
        }
    }

    std::vector<std::string> users;
    std::set<std::string> used_accounts;
    for (const auto& [user, row] : counts) {
        std::size_t total = 0;
        for (const auto& [account, c] : row) {
            if (kept_accounts.count(account)) {
                total += c;
            }
        }
        if (total >= options.min_user_retweets) {
            users.push_back(user);
            for (const auto& [account, c] : row) {
                if (kept_accounts.count(account)) {
                    used_accounts.insert(account);
                }
            }
        }
    }
    if (users.empty()) {
        throw DataError("no clusterable users: no user reaches " + std::to_string(options.min_user_retweets) +
                        " retweets of accounts retweeted by at least " +
                        std::to_string(options.min_account_mentions) + " users");
    }

    std::vector<std::string> accounts(used_accounts.begin(), used_accounts.end());
    std::vector<std::size_t> offsets{0};
    std::vector<Entry> entries;
    for (const auto& user : users) {
        for (const auto& [account, c] : counts.at(user)) {
            if (!used_accounts.count(account)) {
                continue;
            }
            const auto col = static_cast<std::uint32_t>(
                std::lower_bound(accounts.begin(), accounts.end(), account) - accounts.begin());
            entries.push_back({col, options.binary ? 1.0 : static_cast<double>(c)});
        }
        offsets.push_back(entries.size());
    }
    return UserRetweetMatrix(std::move(users), std::move(accounts), std::move(offsets), std::move(entries));
}

double cosine_similarity(std::span<const Entry> u, std::span<const Entry> v) {
    double uu = 0.0;
    double vv = 0.0;
    for (const auto& e : u) {
        uu += e.value * e.value;
    }
    for (const auto& e : v) {
        vv += e.value * e.value;
    }
    if (uu == 0.0 || vv == 0.0) {
        throw DataError("cosine similarity of a zero vector is undefined");
    }
    double dot = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < u.size() && j < v.size()) {
        if (u[i].column < v[j].column) {
            ++i;
        } else if (v[j].column < u[i].column) {
            ++j;
        } else {
            dot += u[i].value * v[j].value;
            ++i;
            ++j;
        }
    }
    const double sim = dot / (std::sqrt(uu) * std::sqrt(vv));
    return std::clamp(sim, 0.0, 1.0);
}

} // namespace stancekit::graph
