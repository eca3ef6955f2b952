#include "stancekit/embed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace stancekit::embed {

namespace {

constexpr std::size_t kDenseLimit = 64;
constexpr int kMaxSubspaceIterations = 1000;
constexpr double kRitzTolerance = 1e-6;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// y = ((D^-1/2 W D^-1/2) x + x) / 2; the shift makes every eigenvalue non-negative.
void apply_shifted(const FuzzyGraph& graph, const Vector& inv_sqrt_deg, const Matrix& x, Matrix& y) {
    y = x * 0.5;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (const auto& e : graph.adjacency[i]) {
            const double scale = 0.5 * e.weight * inv_sqrt_deg[static_cast<Eigen::Index>(i)] * inv_sqrt_deg[e.index];
            y.row(static_cast<Eigen::Index>(i)) += scale * x.row(e.index);
        }
    }
}

void orthonormalize(Matrix& x, const Vector& trivial) {
    x -= trivial * (trivial.transpose() * x);
    Eigen::HouseholderQR<Matrix> qr(x);
    x = qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
}

Embedding scale_into_box(const Matrix& coords, std::uint64_t seed) {
    const double max_abs = coords.cwiseAbs().maxCoeff();
    const double expansion = max_abs > 0.0 ? 10.0 / max_abs : 1.0;
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::normal_distribution<double> jitter(0.0, 1e-4);
    Embedding out;
    out.coords.resize(static_cast<std::size_t>(coords.rows()));
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        for (int d = 0; d < 2; ++d) {
            out.coords[static_cast<std::size_t>(i)][d] = coords(i, d) * expansion + jitter(rng);
        }
    }
    return out;
}

} // namespace

std::size_t count_components(const FuzzyGraph& graph) {
    const std::size_t n = graph.size();
    std::vector<char> visited(n, 0);
    std::vector<std::uint32_t> stack;
    std::size_t components = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (visited[s]) {
            continue;
        }
        ++components;
        visited[s] = 1;
        stack.push_back(static_cast<std::uint32_t>(s));
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (const auto& e : graph.adjacency[u]) {
                if (!visited[e.index]) {
                    visited[e.index] = 1;
                    stack.push_back(e.index);
                }
            }
        }
    }
    return components;
}

Embedding spectral_init(const FuzzyGraph& graph, std::uint64_t seed) {
    const std::size_t n = graph.size();
    if (n < 3 || count_components(graph) != 1) {
        return {};
    }
    const auto rows = static_cast<Eigen::Index>(n);

    Vector inv_sqrt_deg(rows);
    Vector trivial(rows);
    for (std::size_t i = 0; i < n; ++i) {
        double deg = 0.0;
        for (const auto& e : graph.adjacency[i]) {
            deg += e.weight;
        }
        inv_sqrt_deg[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(deg);
        trivial[static_cast<Eigen::Index>(i)] = std::sqrt(deg);
    }
    trivial.normalize();

    if (n <= kDenseLimit) {
        Matrix dense = Matrix::Zero(rows, rows);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& e : graph.adjacency[i]) {
                dense(static_cast<Eigen::Index>(i), e.index) =
                    e.weight * inv_sqrt_deg[static_cast<Eigen::Index>(i)] * inv_sqrt_deg[e.index];
            }
        }
        // Eigenvalues ascend; the last is the trivial one at 1.
        Eigen::SelfAdjointEigenSolver<Matrix> solver(dense);
        Matrix coords(rows, 2);
        coords.col(0) = solver.eigenvectors().col(rows - 2);
        coords.col(1) = solver.eigenvectors().col(rows - 3);
        return scale_into_box(coords, seed);
    }

    const Eigen::Index block = 8;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(rows, block);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < block; ++j) {
            x(i, j) = normal(rng);
        }
    }
    orthonormalize(x, trivial);

    Matrix y(rows, block);
    Matrix ritz_vectors(rows, 2);
    for (int it = 1; it <= kMaxSubspaceIterations; ++it) {
        apply_shifted(graph, inv_sqrt_deg, x, y);
        x = y;
        orthonormalize(x, trivial);

        if (it % 10 != 0 && it != kMaxSubspaceIterations) {
            continue;
        }
        apply_shifted(graph, inv_sqrt_deg, x, y);
        const Matrix h = x.transpose() * y;
        Eigen::SelfAdjointEigenSolver<Matrix> small(h);
        ritz_vectors.col(0) = x * small.eigenvectors().col(block - 1);
        ritz_vectors.col(1) = x * small.eigenvectors().col(block - 2);

        Matrix image(rows, 2);
        apply_shifted(graph, inv_sqrt_deg, ritz_vectors, image);
        const double r0 = (image.col(0) - small.eigenvalues()[block - 1] * ritz_vectors.col(0)).norm();
        const double r1 = (image.col(1) - small.eigenvalues()[block - 2] * ritz_vectors.col(1)).norm();
        if (std::max(r0, r1) < kRitzTolerance) {
            break;
        }
    }
    return scale_into_box(ritz_vectors, seed);
}

} // namespace stancekit::embed
