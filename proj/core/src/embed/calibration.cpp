#include "stancekit/embed.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stancekit::embed {

namespace {

constexpr double kResidualTolerance = 1e-5;
constexpr int kMaxBisections = 500;

double membership_sum(std::span<const double> distances, double rho, double sigma) {
    double sum = 0.0;
    for (double d : distances) {
        sum += std::exp(-std::max(0.0, d - rho) / sigma);
    }
    return sum;
}

} // namespace

void validate(const EmbedParams& params) {
    if (params.n_neighbors < 1) {
        throw ConfigError("embed: n_neighbors must be at least 1");
    }
    if (!(params.min_dist > 0.0) || !(params.spread > 0.0) || params.min_dist > params.spread) {
        throw ConfigError("embed: require 0 < min_dist <= spread");
    }
    if (params.n_epochs < 1) {
        throw ConfigError("embed: n_epochs must be at least 1");
    }
    if (!(params.learning_rate > 0.0)) {
        throw ConfigError("embed: learning_rate must be positive");
    }
    if (params.negative_sample_rate < 0) {
        throw ConfigError("embed: negative_sample_rate must be non-negative");
    }
}

Calibration smooth_knn_calibration(std::span<const double> distances, std::size_t k) {
    Calibration out;
    if (distances.empty() || k == 0) {
        out.sigma = kMinSigma;
        out.clamped = true;
        return out;
    }
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] < 0.0 || (i > 0 && distances[i] < distances[i - 1])) {
            throw DataError("calibration: distances must be non-negative and ascending");
        }
    }

    const auto first_nonzero = std::find_if(distances.begin(), distances.end(), [](double d) { return d > 0.0; });
    out.rho = first_nonzero == distances.end() ? 0.0 : *first_nonzero;

    const double mean = std::accumulate(distances.begin(), distances.end(), 0.0) / static_cast<double>(distances.size());
    const double floor = std::max(kMinSigma, kMinSigmaScale * mean);
    const double target = std::log2(static_cast<double>(k));

    if (membership_sum(distances, out.rho, floor) >= target) {
        out.sigma = floor;
        out.clamped = true;
        return out;
    }

    double lo = floor;
    double hi = std::max(1.0, mean);
    while (membership_sum(distances, out.rho, hi) < target) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw NumericError("calibration: no upper bracket for sigma");
        }
    }

    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxBisections; ++it) {
        mid = 0.5 * (lo + hi);
        const double residual = membership_sum(distances, out.rho, mid) - target;
        if (std::abs(residual) < kResidualTolerance) {
            break;
        }
        if (residual > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    out.sigma = mid;
    return out;
}

} // namespace stancekit::embed
