#include "stancekit/cluster.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace stancekit::cluster {

void validate(const MeanShiftParams& params) {
    if (params.bandwidth && !(*params.bandwidth > 0.0)) {
        throw ConfigError("mean shift: bandwidth must be positive");
    }
    if (!(params.auto_quantile > 0.0 && params.auto_quantile < 1.0)) {
        throw ConfigError("mean shift: auto_quantile must lie in (0, 1)");
    }
    if (params.max_iterations < 1) {
        throw ConfigError("mean shift: max_iterations must be at least 1");
    }
    if (!(params.convergence_tol > 0.0)) {
        throw ConfigError("mean shift: convergence_tol must be positive");
    }
    if (params.mode_merge_radius && !(*params.mode_merge_radius > 0.0)) {
        throw ConfigError("mean shift: mode_merge_radius must be positive");
    }
    if (!(params.min_cluster_fraction >= 0.0 && params.min_cluster_fraction < 1.0)) {
        throw ConfigError("mean shift: min_cluster_fraction must lie in [0, 1)");
    }
}

double estimate_bandwidth(std::span<const Point> points, double quantile, std::uint64_t seed) {
    if (points.size() < 2) {
        throw DataError("bandwidth estimation needs at least two points");
    }
    if (!(quantile > 0.0 && quantile < 1.0)) {
        throw ConfigError("bandwidth quantile must lie in (0, 1)");
    }

    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (idx.size() > kBandwidthSampleLimit) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < kBandwidthSampleLimit; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        idx.resize(kBandwidthSampleLimit);
        std::sort(idx.begin(), idx.end());
    }

    std::vector<double> dists;
    dists.reserve(idx.size() * (idx.size() - 1) / 2);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            const auto& p = points[idx[i]];
            const auto& q = points[idx[j]];
            dists.push_back(std::hypot(p[0] - q[0], p[1] - q[1]));
        }
    }

    const double pos = quantile * static_cast<double>(dists.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(lo), dists.end());
    const double lower = dists[lo];
    double value = lower;
    if (frac > 0.0 && lo + 1 < dists.size()) {
        const double upper = *std::min_element(dists.begin() + static_cast<std::ptrdiff_t>(lo) + 1, dists.end());
        value = lower + frac * (upper - lower);
    }
    if (!(value > 0.0)) {
        throw NumericError("zero bandwidth: the sampled points are (nearly) identical");
    }
    return value;
}

} // namespace stancekit::cluster
