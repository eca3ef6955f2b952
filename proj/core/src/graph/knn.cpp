#include "stancekit/graph.hpp"

#include "stancekit/error.hpp"
#include "stancekit/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace stancekit::graph {

namespace {

struct Posting {
    std::uint32_t user;
    double value;
};

bool closer(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) {
        return a.distance < b.distance;
    }
    return a.index < b.index;
}

} // namespace

KnnGraph knn_graph(const UserRetweetMatrix& matrix, std::size_t k, int jobs) {
    const std::size_t n = matrix.num_users();
    if (k < 1 || k >= n) {
        throw ConfigError("knn: k must satisfy 1 <= k < number of users (k=" + std::to_string(k) +
                          ", users=" + std::to_string(n) + ")");
    }

    std::vector<std::vector<Posting>> postings(matrix.num_accounts());
    std::vector<double> norms(n);
    for (std::size_t u = 0; u < n; ++u) {
        double ss = 0.0;
        for (const auto& e : matrix.row(u)) {
            postings[e.column].push_back({static_cast<std::uint32_t>(u), e.value});
            ss += e.value * e.value;
        }
        norms[u] = std::sqrt(ss);
    }

    KnnGraph graph;
    graph.k = k;
    graph.neighbors.resize(n);

    parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dot(n, 0.0);
        std::vector<char> seen(n, 0);
        std::vector<std::uint32_t> touched;
        std::vector<Neighbor> candidates;

        for (std::size_t u = begin; u < end; ++u) {
            touched.clear();
            for (const auto& e : matrix.row(u)) {
                for (const auto& p : postings[e.column]) {
                    if (p.user == u) {
                        continue;
                    }
                    if (!seen[p.user]) {
                        seen[p.user] = 1;
                        touched.push_back(p.user);
                    }
                    dot[p.user] += e.value * p.value;
                }
            }

            candidates.clear();
            for (auto v : touched) {
                const double sim = std::clamp(dot[v] / (norms[u] * norms[v]), 0.0, 1.0);
                candidates.push_back({v, 1.0 - sim});
                dot[v] = 0.0;
                seen[v] = 0;
            }
            if (candidates.size() < k) {
                // Users without a shared account sit at distance exactly 1; only the lowest indices can qualify.
                std::size_t added = 0;
                for (std::uint32_t v = 0; v < n && added < k; ++v) {
                    if (v == u) {
                        continue;
                    }
                    if (std::find(touched.begin(), touched.end(), v) != touched.end()) {
                        continue;
                    }
                    candidates.push_back({v, 1.0});
                    ++added;
                }
            }

            const std::size_t keep = std::min(k, candidates.size());
            std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                              candidates.end(), closer);
            graph.neighbors[u].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep));
        }
    });
    return graph;
}

} // namespace stancekit::graph
