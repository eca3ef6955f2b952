#ifndef STANCEKIT_CLUSTER_HPP
#define STANCEKIT_CLUSTER_HPP

#include "stancekit/embed.hpp"
#include "stancekit/graph.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stancekit::cluster {

using embed::Point;

/// Label value for points that belong to no retained cluster.
inline constexpr int kUnclustered = -1;

struct MeanShiftParams {
    /// Kernel radius; `std::nullopt` estimates it from `auto_quantile`.
    std::optional<double> bandwidth;
    double auto_quantile = 0.1;
    int max_iterations = 300;
    double convergence_tol = 1e-4;
    /// Radius under which converged positions collapse into one mode; defaults to the bandwidth.
    std::optional<double> mode_merge_radius;
    double min_cluster_fraction = 0.01;
    /// Seeds the subsample used by bandwidth estimation on large inputs.
    std::uint64_t seed = 42;
    int jobs = 1;
};

void validate(const MeanShiftParams& params);

/// Points beyond this count are subsampled before the pairwise-distance quantile is taken.
inline constexpr std::size_t kBandwidthSampleLimit = 2000;

/**
 * The `quantile` of all pairwise Euclidean distances (linear interpolation
 * between order statistics). Inputs larger than `kBandwidthSampleLimit` are
 * subsampled with `seed`. Throws NumericError("zero bandwidth") when the
 * estimate is zero.
 */
double estimate_bandwidth(std::span<const Point> points, double quantile, std::uint64_t seed = 42);

struct StanceAssignment {
    /// Per point: cluster index into `modes`, or kUnclustered.
    std::vector<int> labels;
    /// Retained modes, ordered by descending cluster size.
    std::vector<Point> modes;
    std::vector<std::size_t> sizes;
    std::size_t unclustered = 0;

    // Diagnostics.
    double bandwidth = 0.0;
    std::size_t non_converged = 0;
    /// Modes found before the small-cluster cut.
    std::size_t raw_modes = 0;
};

/**
 * Flat-kernel mean shift.
 *
 * Every point is shifted to the mean of the input points within `bandwidth`
 * until the step falls below `convergence_tol`. Converged positions are
 * visited by descending kernel support and each one farther than
 * `mode_merge_radius` from all accepted modes becomes a new mode. Points join
 * the mode nearest to their converged position. Clusters smaller than
 * `min_cluster_fraction * n` become unclustered.
 */
StanceAssignment mean_shift(std::span<const Point> points, const MeanShiftParams& params);

/// Fraction of clustered points whose cluster's majority ground-truth label equals their own.
double cluster_purity(const StanceAssignment& assignment, std::span<const int> truth);

/// Per-user camp membership after the two major clusters were named.
struct NamedAssignment {
    std::vector<std::string> users;
    /// Per user: 0 or 1 (index into `camps`), or kUnclustered.
    std::vector<int> camp;
    std::array<std::string, 2> camps;

    /// Camp index for a user id, kUnclustered when absent or unassigned.
    int camp_of(const std::string& user) const;
};

struct CampSeeds {
    std::string name;
    std::vector<std::string> accounts;
};

/**
 * Names the two largest clusters after the camp whose seed accounts they
 * retweet more. Clusters beyond the first two become unclustered.
 *
 * Throws DataError when a seed account is missing from the matrix, when fewer
 * than two clusters exist, or when both clusters lean to the same camp.
 */
NamedAssignment label_clusters_by_seeds(const StanceAssignment& assignment, const graph::UserRetweetMatrix& matrix,
                                        const std::array<CampSeeds, 2>& seeds);

/// "user_id label" lines; label is a camp name or UNCLUSTERED.
void write_assignment_file(const std::string& path, const NamedAssignment& assignment);
NamedAssignment read_assignment_file(const std::string& path, const std::array<std::string, 2>& camps);

inline constexpr const char* kUnclusteredLabel = "UNCLUSTERED";

} // namespace stancekit::cluster

#endif
