#include "stancekit/cluster.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <set>

namespace stancekit::cluster {

int NamedAssignment::camp_of(const std::string& user) const {
    const auto it = std::lower_bound(users.begin(), users.end(), user);
    if (it == users.end() || *it != user) {
        return kUnclustered;
    }
    return camp[static_cast<std::size_t>(it - users.begin())];
}

NamedAssignment label_clusters_by_seeds(const StanceAssignment& assignment, const graph::UserRetweetMatrix& matrix,
                                        const std::array<CampSeeds, 2>& seeds) {
    if (assignment.labels.size() != matrix.num_users()) {
        throw DataError("cluster labeling: assignment covers " + std::to_string(assignment.labels.size()) +
                        " users but the matrix has " + std::to_string(matrix.num_users()));
    }
    if (seeds[0].name.empty() || seeds[1].name.empty() || seeds[0].name == seeds[1].name) {
        throw ConfigError("cluster labeling: camps need two distinct non-empty names");
    }
    if (seeds[0].name == kUnclusteredLabel || seeds[1].name == kUnclusteredLabel) {
        throw ConfigError(std::string("cluster labeling: '") + kUnclusteredLabel + "' is reserved");
    }
    for (const auto& camp : seeds) {
        if (camp.accounts.empty()) {
            throw ConfigError("cluster labeling: camp '" + camp.name + "' has no seed accounts");
        }
    }
    const std::set<std::string> first(seeds[0].accounts.begin(), seeds[0].accounts.end());
    for (const auto& a : seeds[1].accounts) {
        if (first.count(a)) {
            throw ConfigError("cluster labeling: seed account '" + a + "' is listed for both camps");
        }
    }

    std::vector<int> seed_camp(matrix.num_accounts(), -1);
    std::string missing;
    for (int c = 0; c < 2; ++c) {
        for (const auto& a : seeds[c].accounts) {
            const auto idx = matrix.account_index(a);
            if (idx == matrix.num_accounts()) {
                missing += (missing.empty() ? "" : ", ") + a;
                continue;
            }
            seed_camp[idx] = c;
        }
    }
    if (!missing.empty()) {
        throw DataError("cluster labeling: seed accounts not in the retweet matrix: " + missing);
    }
    if (assignment.modes.size() < 2) {
        throw DataError("cluster labeling: need at least two clusters, found " +
                        std::to_string(assignment.modes.size()));
    }

    // seed_retweets[cluster][camp]
    double seed_retweets[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t u = 0; u < matrix.num_users(); ++u) {
        const int label = assignment.labels[u];
        if (label != 0 && label != 1) {
            continue;
        }
        for (const auto& e : matrix.row(u)) {
            if (seed_camp[e.column] >= 0) {
                seed_retweets[label][seed_camp[e.column]] += e.value;
            }
        }
    }

    int cluster_camp[2];
    for (int c = 0; c < 2; ++c) {
        if (seed_retweets[c][0] == seed_retweets[c][1]) {
            throw DataError("cluster labeling: cluster " + std::to_string(c) +
                            " retweets both camps' seeds equally; cannot name it");
        }
        cluster_camp[c] = seed_retweets[c][0] > seed_retweets[c][1] ? 0 : 1;
    }
    if (cluster_camp[0] == cluster_camp[1]) {
        throw DataError("cluster labeling: both major clusters lean to camp '" + seeds[cluster_camp[0]].name + "'");
    }

    NamedAssignment out;
    out.users = matrix.users();
    out.camps = {seeds[0].name, seeds[1].name};
    out.camp.resize(out.users.size(), kUnclustered);
    for (std::size_t u = 0; u < out.users.size(); ++u) {
        const int label = assignment.labels[u];
        if (label == 0 || label == 1) {
            out.camp[u] = cluster_camp[label];
        }
    }
    return out;
}

} // namespace stancekit::cluster
