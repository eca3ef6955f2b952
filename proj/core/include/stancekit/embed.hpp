#ifndef STANCEKIT_EMBED_HPP
#define STANCEKIT_EMBED_HPP

#include "stancekit/graph.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

/**
 * @file embed.hpp
 *
 * @brief Two-dimensional UMAP-style layout of a precomputed k-nearest-neighbor graph.
 *
 * The stages are:
 *
 * 1. per-node calibration of a local distance offset (`rho`) and scale (`sigma`);
 * 2. a symmetric fuzzy graph from the calibrated memberships;
 * 3. a fit of the low-dimensional similarity curve `1 / (1 + a d^{2b})`;
 * 4. stochastic layout optimization with edge sampling and negative sampling.
 */

namespace stancekit::embed {

struct EmbedParams {
    std::size_t n_neighbors = 15;
    double min_dist = 0.1;
    double spread = 1.0;
    int n_epochs = 500;
    double learning_rate = 1.0;
    int negative_sample_rate = 5;
    std::uint64_t seed = 42;
};

/// Throws ConfigError listing the first violated invariant.
void validate(const EmbedParams& params);

struct Calibration {
    double rho = 0.0;
    double sigma = 1.0;
    /// The bisection could not reach the target and sigma sits at its lower bound.
    bool clamped = false;
};

/// Relative floor on sigma: `sigma >= kMinSigmaScale * mean(distances)`.
inline constexpr double kMinSigmaScale = 1e-3;
/// Absolute floor on sigma, used when all distances are zero.
inline constexpr double kMinSigma = 1e-8;

/**
 * Finds `rho` (smallest nonzero distance) and `sigma` such that
 * `sum_j exp(-max(0, d_j - rho) / sigma) = log2(k)` to within 1e-5.
 *
 * When the target is unreachable (the sum is at least the target for every
 * sigma) or the solution falls below the floor, sigma is clamped to
 * `max(kMinSigma, kMinSigmaScale * mean(d))`.
 */
Calibration smooth_knn_calibration(std::span<const double> distances, std::size_t k);

/// One undirected edge weight, stored for both endpoints.
struct WeightedEdge {
    std::uint32_t index;
    double weight;
};

/// Symmetric sparse membership graph with weights in (0, 1] and no self-edges.
struct FuzzyGraph {
    std::vector<std::vector<WeightedEdge>> adjacency;

    std::size_t size() const { return adjacency.size(); }
};

/// Directed memberships `exp(-max(0, d - rho_i) / sigma_i)` combined with `a + a^T - a o a^T`.
FuzzyGraph build_fuzzy_graph(const graph::NeighborList& knn);

struct CurveParams {
    double a = 0.0;
    double b = 0.0;
    /// Sum of squared residuals at the optimum.
    double residual = 0.0;
};

/// Target similarity: 1 below `min_dist`, `exp(-(x - min_dist) / spread)` above.
double target_curve(double x, double min_dist, double spread);

/// The 300 abscissae in [0, 3 * spread] the curve fit is evaluated on.
std::vector<double> curve_sample_points(double spread);

/// Levenberg-Marquardt least squares fit of `1 / (1 + a x^{2b})` to `target_curve`.
CurveParams fit_curve_params(double min_dist, double spread);

using Point = std::array<double, 2>;

struct Embedding {
    std::vector<Point> coords;
};

/// Uniform seeded coordinates in [-10, 10]^2.
Embedding random_init(std::size_t n, std::uint64_t seed);

/**
 * Leading nontrivial eigenvectors of the normalized adjacency, scaled into
 * [-10, 10]^2 plus Gaussian jitter of scale 1e-4. Returns an empty embedding when the graph is disconnected or
 * has fewer than three nodes.
 */
Embedding spectral_init(const FuzzyGraph& graph, std::uint64_t seed);

/// Number of connected components of a fuzzy graph.
std::size_t count_components(const FuzzyGraph& graph);

struct LayoutResult {
    Embedding embedding;
    CurveParams curve;
    bool spectral = false;
};

/**
 * Runs the layout optimization from spectral initialization (random when
 * unavailable). Deterministic for a fixed seed. Gradients are clipped to
 * +/-4 per coordinate and the learning rate decays linearly to zero.
 *
 * Throws NumericError naming the epoch and edge if a coordinate becomes non-finite.
 */
LayoutResult optimize_layout(const FuzzyGraph& graph, const EmbedParams& params);

/// As above, starting from the supplied coordinates.
Embedding optimize_layout_from(const FuzzyGraph& graph, const EmbedParams& params, const CurveParams& curve,
                               Embedding initial);

/// "user_id x y" lines.
void write_embedding(std::ostream& out, const std::vector<std::string>& users, const Embedding& embedding);
void write_embedding_file(const std::string& path, const std::vector<std::string>& users,
                          const Embedding& embedding);

struct LabeledEmbedding {
    std::vector<std::string> users;
    Embedding embedding;
};

LabeledEmbedding read_embedding_file(const std::string& path);

} // namespace stancekit::embed

#endif
