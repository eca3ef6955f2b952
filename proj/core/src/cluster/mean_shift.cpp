#include "stancekit/cluster.hpp"

#include "stancekit/error.hpp"
#include "stancekit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace stancekit::cluster {

namespace {

/// Uniform bucket grid with cell size equal to the query radius.
class RadiusIndex {
public:
    RadiusIndex(std::span<const Point> points, double radius) : points_(points), radius_(radius) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            cells_[key(cell(points[i][0]), cell(points[i][1]))].push_back(static_cast<std::uint32_t>(i));
        }
    }

    /// Calls fn(index) for every point within the radius of `q` (inclusive).
    template <typename Fn>
    void visit(const Point& q, Fn&& fn) const {
        const auto cx = cell(q[0]);
        const auto cy = cell(q[1]);
        const double r2 = radius_ * radius_;
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) {
                    continue;
                }
                for (auto i : it->second) {
                    const double ex = points_[i][0] - q[0];
                    const double ey = points_[i][1] - q[1];
                    if (ex * ex + ey * ey <= r2) {
                        fn(i);
                    }
                }
            }
        }
    }

private:
    std::int64_t cell(double v) const { return static_cast<std::int64_t>(std::floor(v / radius_)); }

    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }

    std::span<const Point> points_;
    double radius_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

double dist2(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace

StanceAssignment mean_shift(std::span<const Point> points, const MeanShiftParams& params) {
    validate(params);
    StanceAssignment out;
    const std::size_t n = points.size();
    for (const auto& p : points) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
            throw DataError("mean shift: non-finite input point");
        }
    }
    if (n == 0) {
        return out;
    }
    if (n == 1) {
        out.labels = {0};
        out.modes = {points[0]};
        out.sizes = {1};
        out.raw_modes = 1;
        out.bandwidth = params.bandwidth.value_or(0.0);
        return out;
    }

    const double h = params.bandwidth ? *params.bandwidth : estimate_bandwidth(points, params.auto_quantile, params.seed);
    const double merge_radius = params.mode_merge_radius.value_or(h);
    out.bandwidth = h;

    const RadiusIndex index(points, h);
    std::vector<Point> converged(n);
    std::vector<char> did_converge(n, 0);

    parallel_for(n, params.jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Point x = points[i];
            for (int it = 0; it < params.max_iterations; ++it) {
                double sx = 0.0;
                double sy = 0.0;
                std::size_t count = 0;
                index.visit(x, [&](std::uint32_t j) {
                    sx += points[j][0];
                    sy += points[j][1];
                    ++count;
                });
                if (count == 0) {
                    did_converge[i] = 1;
                    break;
                }
                const Point next{sx / static_cast<double>(count), sy / static_cast<double>(count)};
                const double step = std::sqrt(dist2(next, x));
                x = next;
                if (step < params.convergence_tol) {
                    did_converge[i] = 1;
                    break;
                }
            }
            converged[i] = x;
        }
    });
    out.non_converged = static_cast<std::size_t>(std::count(did_converge.begin(), did_converge.end(), 0));

    // Candidate modes by descending support; coordinates break ties so that input order does not matter.
    std::vector<std::size_t> support(n, 0);
    parallel_for(n, params.jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            index.visit(converged[i], [&](std::uint32_t) { ++support[i]; });
        }
    });
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (did_converge[i]) {
            order.push_back(i);
        }
    }
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (support[a] != support[b]) {
            return support[a] > support[b];
        }
        if (converged[a][0] != converged[b][0]) {
            return converged[a][0] < converged[b][0];
        }
        return converged[a][1] < converged[b][1];
    });

    std::vector<Point> modes;
    const double merge2 = merge_radius * merge_radius;
    for (auto i : order) {
        const bool near_existing =
            std::any_of(modes.begin(), modes.end(), [&](const Point& m) { return dist2(m, converged[i]) < merge2; });
        if (!near_existing) {
            modes.push_back(converged[i]);
        }
    }
    out.raw_modes = modes.size();

    std::vector<int> raw_label(n);
    std::vector<std::size_t> raw_size(modes.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int best_mode = 0;
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const double d = dist2(modes[m], converged[i]);
            if (d < best) {
                best = d;
                best_mode = static_cast<int>(m);
            }
        }
        raw_label[i] = best_mode;
        ++raw_size[static_cast<std::size_t>(best_mode)];
    }

    std::vector<std::size_t> by_size(modes.size());
    std::iota(by_size.begin(), by_size.end(), 0);
    std::sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
        if (raw_size[a] != raw_size[b]) {
            return raw_size[a] > raw_size[b];
        }
        if (modes[a][0] != modes[b][0]) {
            return modes[a][0] < modes[b][0];
        }
        return modes[a][1] < modes[b][1];
    });

    const double min_size = params.min_cluster_fraction * static_cast<double>(n);
    std::vector<int> relabel(modes.size(), kUnclustered);
    for (auto m : by_size) {
        if (static_cast<double>(raw_size[m]) < min_size) {
            continue;
        }
        relabel[m] = static_cast<int>(out.modes.size());
        out.modes.push_back(modes[m]);
        out.sizes.push_back(raw_size[m]);
    }

    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[i] = relabel[static_cast<std::size_t>(raw_label[i])];
        if (out.labels[i] == kUnclustered) {
            ++out.unclustered;
        }
    }
    return out;
}

double cluster_purity(const StanceAssignment& assignment, std::span<const int> truth) {
    if (truth.size() != assignment.labels.size()) {
        throw DataError("purity: ground truth and labels differ in length");
    }
    std::map<int, std::map<int, std::size_t>> table;
    std::size_t clustered = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (assignment.labels[i] == kUnclustered) {
            continue;
        }
        ++table[assignment.labels[i]][truth[i]];
        ++clustered;
    }
    if (clustered == 0) {
        return 0.0;
    }
    std::size_t majority = 0;
    for (const auto& [label, counts] : table) {
        std::size_t best = 0;
        for (const auto& [t, c] : counts) {
            best = std::max(best, c);
        }
        majority += best;
    }
    return static_cast<double>(majority) / static_cast<double>(clustered);
}

} // namespace stancekit::cluster
