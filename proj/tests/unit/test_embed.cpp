#include "stancekit/embed.hpp"
#include "stancekit/error.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace stancekit;
using namespace stancekit::embed;
using stancekit::testing::TempDir;

namespace tk = stancekit::testing;

namespace {

long double membership_sum(const std::vector<double>& d, const Calibration& c) {
    long double s = 0;
    for (double x : d) {
        s += std::exp(-std::max(0.0L, static_cast<long double>(x) - c.rho) / c.sigma);
    }
    return s;
}

double smallest_positive(const std::vector<double>& d) {
    double best = 0.0;
    for (double x : d) {
        if (x > 0.0 && (best == 0.0 || x < best)) {
            best = x;
        }
    }
    return best;
}

double centroid_distance_over_spread(const std::vector<Point>& coords, const std::vector<int>& truth) {
    std::map<int, std::array<double, 3>> acc;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        auto& a = acc[truth[i]];
        a[0] += coords[i][0];
        a[1] += coords[i][1];
        a[2] += 1;
    }
    std::map<int, Point> centroid;
    for (const auto& [label, a] : acc) {
        centroid[label] = {a[0] / a[2], a[1] / a[2]};
    }
    double spread = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto& c = centroid[truth[i]];
        spread += std::hypot(coords[i][0] - c[0], coords[i][1] - c[1]);
    }
    spread /= static_cast<double>(coords.size());
    double min_gap = INFINITY;
    for (const auto& [la, ca] : centroid) {
        for (const auto& [lb, cb] : centroid) {
            if (la < lb) {
                min_gap = std::min(min_gap, std::hypot(ca[0] - cb[0], ca[1] - cb[1]));
            }
        }
    }
    return min_gap / spread;
}

bool all_finite(const Embedding& e) {
    return std::all_of(e.coords.begin(), e.coords.end(),
                       [](const Point& p) { return std::isfinite(p[0]) && std::isfinite(p[1]); });
}

} // namespace

TEST(Calibration, HitsTargetOnSimpleRows) {
    const std::vector<std::vector<double>> rows = {
        {1, 2, 3}, {0.5, 0.5, 0.9, 1.4, 2.0}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, {0, 0.5, 1, 2, 4}};
    for (const auto& d : rows) {
        const auto c = smooth_knn_calibration(d, d.size());
        EXPECT_EQ(c.rho, smallest_positive(d));
        EXPECT_FALSE(c.clamped);
        EXPECT_LT(std::fabs(membership_sum(d, c) - std::log2(static_cast<long double>(d.size()))), 1e-5L);
    }
}

TEST(Calibration, ClampsWhenTargetUnreachable) {
    // Every membership is 1, so the sum k exceeds log2(k) for any sigma.
    const std::vector<double> equal = {2.0, 2.0, 2.0, 2.0};
    const auto c = smooth_knn_calibration(equal, equal.size());
    EXPECT_TRUE(c.clamped);
    EXPECT_DOUBLE_EQ(c.sigma, std::max(kMinSigma, kMinSigmaScale * 2.0));

    const std::vector<double> zeros = {0.0, 0.0};
    const auto z = smooth_knn_calibration(zeros, zeros.size());
    EXPECT_TRUE(z.clamped);
    EXPECT_EQ(z.sigma, kMinSigma);
    EXPECT_EQ(z.rho, 0.0);
}

TEST(Calibration, PropertyResidualOnRandomRows) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 3 + trial % 20;
        std::vector<double> d(k);
        for (auto& x : d) {
            x = u(rng);
        }
        std::sort(d.begin(), d.end());
        const auto c = smooth_knn_calibration(d, k);
        if (c.clamped) {
            EXPECT_GE(c.sigma, kMinSigma);
            continue;
        }
        EXPECT_LT(std::fabs(membership_sum(d, c) - std::log2(static_cast<long double>(k))), 1e-5L) << trial;
    }
}

TEST(FuzzyGraph, NearestNeighborMembershipIsOne) {
    graph::NeighborList knn(3);
    knn[0] = {{1, 1.0}, {2, 3.0}};
    knn[1] = {{2, 1.0}, {0, 5.0}};
    knn[2] = {{1, 1.0}, {0, 3.0}};
    const auto g = build_fuzzy_graph(knn);
    ASSERT_EQ(g.size(), 3u);
    auto weight = [&](std::uint32_t i, std::uint32_t j) {
        for (const auto& e : g.adjacency[i]) {
            if (e.index == j) {
                return e.weight;
            }
        }
        return 0.0;
    };
    EXPECT_DOUBLE_EQ(weight(1, 2), 1.0);
    EXPECT_DOUBLE_EQ(weight(2, 1), 1.0);
    // 0 -> 1 has membership 1, so the union is 1 whatever 1 -> 0 contributes.
    EXPECT_DOUBLE_EQ(weight(0, 1), 1.0);
}

TEST(FuzzyGraph, WeightsMatchUnionOracle) {
    const auto blobs = tk::gaussian_blobs({{0, 0}, {4, 0}}, 30, 1.0, 5);
    const auto knn = tk::euclidean_knn(blobs.points, 8);
    const auto g = build_fuzzy_graph(knn);

    std::map<std::pair<std::uint32_t, std::uint32_t>, long double> directed;
    for (std::uint32_t i = 0; i < knn.size(); ++i) {
        std::vector<double> d;
        for (const auto& n : knn[i]) {
            d.push_back(n.distance);
        }
        const auto c = smooth_knn_calibration(d, d.size());
        for (const auto& n : knn[i]) {
            directed[{i, n.index}] =
                std::exp(-std::max(0.0L, static_cast<long double>(n.distance) - c.rho) / c.sigma);
        }
    }
    auto get = [&](std::uint32_t i, std::uint32_t j) {
        const auto it = directed.find({i, j});
        return it == directed.end() ? 0.0L : it->second;
    };
    std::size_t edges = 0;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        for (const auto& e : g.adjacency[i]) {
            const long double a = get(i, e.index);
            const long double b = get(e.index, i);
            EXPECT_NEAR(e.weight, static_cast<double>(a + b - a * b), 1e-12);
            ++edges;
        }
    }
    EXPECT_GT(edges, 0u);

    // The t-conorm itself: two half memberships combine to three quarters.
    const long double half = 0.5L;
    EXPECT_EQ(static_cast<double>(half + half - half * half), 0.75);
}

TEST(FuzzyGraph, SymmetricWeightsInUnitIntervalNoSelfEdges) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto blobs = tk::gaussian_blobs({{0, 0, 0}, {3, 1, 0}, {0, 4, 2}}, 20, 1.0, rng());
        const auto g = build_fuzzy_graph(tk::euclidean_knn(blobs.points, 6));
        std::map<std::pair<std::uint32_t, std::uint32_t>, double> w;
        for (std::uint32_t i = 0; i < g.size(); ++i) {
            for (const auto& e : g.adjacency[i]) {
                EXPECT_NE(e.index, i);
                EXPECT_GT(e.weight, 0.0);
                EXPECT_LE(e.weight, 1.0);
                w[{i, e.index}] = e.weight;
            }
        }
        for (const auto& [key, weight] : w) {
            const auto it = w.find({key.second, key.first});
            ASSERT_NE(it, w.end());
            EXPECT_EQ(it->second, weight);
        }
    }
}

TEST(CurveFit, DefaultParametersMatchKnownValues) {
    const auto c = fit_curve_params(0.1, 1.0);
    EXPECT_NEAR(c.a, 1.577, 0.02);
    EXPECT_NEAR(c.b, 0.895, 0.02);
}

TEST(CurveFit, ResidualNoWorseThanGridSearch) {
    for (const auto& [min_dist, spread] : std::vector<std::pair<double, double>>{{0.1, 1.0}, {0.5, 1.0}, {0.25, 2.0}}) {
        const auto xs = curve_sample_points(spread);
        ASSERT_EQ(xs.size(), 300u);
        auto residual = [&](double a, double b) {
            long double s = 0;
            for (double x : xs) {
                const long double r = 1.0L / (1.0L + a * std::pow(static_cast<long double>(x), 2.0L * b)) -
                                      target_curve(x, min_dist, spread);
                s += r * r;
            }
            return s;
        };
        long double best = INFINITY;
        for (double a = 0.05; a <= 5.0; a += 0.01) {
            for (double b = 0.3; b <= 2.0; b += 0.01) {
                best = std::min(best, residual(a, b));
            }
        }
        const auto fit = fit_curve_params(min_dist, spread);
        EXPECT_LE(residual(fit.a, fit.b), best + 1e-9L) << min_dist << " " << spread;
        EXPECT_NEAR(fit.residual, static_cast<double>(residual(fit.a, fit.b)), 1e-9);
    }
}

TEST(CurveFit, TargetCurveShapeAndMonotoneA) {
    EXPECT_EQ(target_curve(0.0, 0.1, 1.0), 1.0);
    EXPECT_EQ(target_curve(0.1, 0.1, 1.0), 1.0);
    EXPECT_NEAR(target_curve(1.1, 0.1, 1.0), std::exp(-1.0), 1e-15);
    double previous = INFINITY;
    for (double md : {0.01, 0.05, 0.1, 0.2, 0.4, 0.8}) {
        const auto c = fit_curve_params(md, 1.0);
        EXPECT_LT(c.a, previous) << md;
        previous = c.a;
    }
}

TEST(Layout, SinglePointKeepsInitialization) {
    FuzzyGraph g;
    g.adjacency.resize(1);
    EmbedParams p;
    p.seed = 9;
    const auto r = optimize_layout(g, p);
    ASSERT_EQ(r.embedding.coords.size(), 1u);
    EXPECT_EQ(r.embedding.coords[0], random_init(1, 9).coords[0]);
}

TEST(Layout, SeparatesTwoGroupsAndIsDeterministic) {
    const auto blobs = tk::gaussian_blobs({{0, 0, 0, 0}, {8, 8, 8, 8}}, 60, 1.0, 4);
    const auto knn = tk::euclidean_knn(blobs.points, 10);
    const auto g = build_fuzzy_graph(knn);
    EmbedParams p;
    p.n_epochs = 200;
    p.seed = 3;
    const auto a = optimize_layout(g, p);
    const auto b = optimize_layout(g, p);
    ASSERT_TRUE(all_finite(a.embedding));
    EXPECT_EQ(a.embedding.coords, b.embedding.coords);
    EXPECT_GT(centroid_distance_over_spread(a.embedding.coords, blobs.labels), 2.0);
    EXPECT_EQ(tk::same_label_neighbor_fraction(a.embedding.coords, blobs.labels, 10), 1.0);
}

TEST(Layout, SpectralInitOnlyForConnectedGraphs) {
    const auto blobs = tk::gaussian_blobs({{0, 0}, {100, 0}}, 20, 1.0, 6);
    const auto g = build_fuzzy_graph(tk::euclidean_knn(blobs.points, 5));
    EXPECT_EQ(count_components(g), 2u);
    EXPECT_TRUE(spectral_init(g, 1).coords.empty());
    EmbedParams p;
    p.n_epochs = 50;
    const auto r = optimize_layout(g, p);
    EXPECT_FALSE(r.spectral);
    EXPECT_TRUE(all_finite(r.embedding));

    const auto joined = build_fuzzy_graph(tk::euclidean_knn(blobs.points, 25));
    EXPECT_EQ(count_components(joined), 1u);
    const auto init = spectral_init(joined, 1);
    ASSERT_EQ(init.coords.size(), joined.size());
    for (const auto& pt : init.coords) {
        EXPECT_LE(std::fabs(pt[0]), 10.01);
        EXPECT_LE(std::fabs(pt[1]), 10.01);
    }
}

TEST(Layout, ThreeBlobNeighborhoodPreservation) {
    const auto blobs = tk::gaussian_blobs({{0, 0, 0, 0, 0}, {10, 0, 0, 0, 0}, {0, 10, 0, 0, 0}}, 100, 1.0, 8);
    const auto g = build_fuzzy_graph(tk::euclidean_knn(blobs.points, 15));
    EmbedParams p;
    p.seed = 5;
    const auto r = optimize_layout(g, p);
    ASSERT_TRUE(all_finite(r.embedding));
    EXPECT_GE(tk::same_label_neighbor_fraction(r.embedding.coords, blobs.labels, 10), 0.8);
}

TEST(Layout, MoreEpochsDoNotReduceSeparation) {
    const auto blobs = tk::gaussian_blobs({{0, 0, 0, 0}, {5, 5, 5, 5}}, 80, 1.0, 12);
    const auto g = build_fuzzy_graph(tk::euclidean_knn(blobs.points, 10));
    auto median_separation = [&](int epochs) {
        std::vector<double> s;
        for (std::uint64_t seed : {1, 2, 3}) {
            EmbedParams p;
            p.n_epochs = epochs;
            p.seed = seed;
            s.push_back(centroid_distance_over_spread(optimize_layout(g, p).embedding.coords, blobs.labels));
        }
        std::sort(s.begin(), s.end());
        return s[1];
    };
    const double at100 = median_separation(100);
    const double at200 = median_separation(200);
    const double at400 = median_separation(400);
    EXPECT_GE(at200, at100 * 0.98);
    EXPECT_GE(at400, at200 * 0.98);
}

TEST(Layout, RejectsInvalidParameters) {
    FuzzyGraph g;
    g.adjacency.resize(2);
    EmbedParams p;
    p.n_epochs = 0;
    EXPECT_THROW(optimize_layout(g, p), ConfigError);
    p = {};
    p.min_dist = -1.0;
    EXPECT_THROW(optimize_layout(g, p), ConfigError);
    p = {};
    EXPECT_THROW(optimize_layout_from(g, p, fit_curve_params(0.1, 1.0), random_init(3, 1)), DataError);
}

TEST(EmbeddingIo, RoundTripIsExact) {
    TempDir dir;
    const auto init = random_init(25, 77);
    std::vector<std::string> users;
    for (int i = 0; i < 25; ++i) {
        users.push_back("user" + std::to_string(i));
    }
    write_embedding_file(dir.file("e.txt"), users, init);
    const auto back = read_embedding_file(dir.file("e.txt"));
    EXPECT_EQ(back.users, users);
    EXPECT_EQ(back.embedding.coords, init.coords);
}
