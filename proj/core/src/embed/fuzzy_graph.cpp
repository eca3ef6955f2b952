#include "stancekit/embed.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace stancekit::embed {

FuzzyGraph build_fuzzy_graph(const graph::NeighborList& knn) {
    const std::size_t n = knn.size();

    // Directed memberships, row-sorted by neighbor index for the transpose lookup.
    std::vector<std::vector<WeightedEdge>> directed(n);
    std::vector<double> dists;
    for (std::size_t i = 0; i < n; ++i) {
        dists.clear();
        for (const auto& nb : knn[i]) {
            dists.push_back(nb.distance);
        }
        const auto cal = smooth_knn_calibration(dists, dists.size());
        for (const auto& nb : knn[i]) {
            if (nb.index == i) {
                continue;
            }
            if (nb.index >= n) {
                throw DataError("fuzzy graph: neighbor index out of range");
            }
            const double w = std::exp(-std::max(0.0, nb.distance - cal.rho) / cal.sigma);
            directed[i].push_back({nb.index, w});
        }
        std::sort(directed[i].begin(), directed[i].end(),
                  [](const WeightedEdge& a, const WeightedEdge& b) { return a.index < b.index; });
    }

    auto lookup = [&](std::size_t from, std::uint32_t to) {
        const auto& row = directed[from];
        const auto it = std::lower_bound(row.begin(), row.end(), to,
                                         [](const WeightedEdge& e, std::uint32_t v) { return e.index < v; });
        return (it != row.end() && it->index == to) ? std::optional<double>(it->weight) : std::nullopt;
    };

    FuzzyGraph out;
    out.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : directed[i]) {
            const double forward = e.weight;
            const auto reverse = lookup(e.index, static_cast<std::uint32_t>(i));
            const double backward = reverse.value_or(0.0);
            const double w = forward + backward - forward * backward;
            if (w > 0.0) {
                out.adjacency[i].push_back({e.index, w});
                if (!reverse) {
                    out.adjacency[e.index].push_back({static_cast<std::uint32_t>(i), w});
                }
            }
        }
    }
    for (auto& row : out.adjacency) {
        std::sort(row.begin(), row.end(), [](const WeightedEdge& a, const WeightedEdge& b) { return a.index < b.index; });
    }
    return out;
}

} // namespace stancekit::embed
