#include "stancekit/embed.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace {

// kNN lists of Gaussian blobs in 5 dimensions, brute force.
stancekit::graph::NeighborList blob_knn(std::size_t n, std::size_t k) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::array<double, 5>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < 5; ++d) {
            pts[i][d] = noise(rng) + (d == i % 3 ? 10.0 : 0.0);
        }
    }
    stancekit::graph::NeighborList out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<stancekit::graph::Neighbor> all;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                double s = 0.0;
                for (std::size_t d = 0; d < 5; ++d) {
                    s += (pts[i][d] - pts[j][d]) * (pts[i][d] - pts[j][d]);
                }
                all.push_back({static_cast<std::uint32_t>(j), std::sqrt(s)});
            }
        }
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                          [](const auto& a, const auto& b) { return a.distance < b.distance; });
        all.resize(k);
        out[i] = std::move(all);
    }
    return out;
}

void BM_FuzzyGraph(benchmark::State& state) {
    const auto knn = blob_knn(static_cast<std::size_t>(state.range(0)), 15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::embed::build_fuzzy_graph(knn));
    }
}
BENCHMARK(BM_FuzzyGraph)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_OptimizeLayout(benchmark::State& state) {
    const auto graph = stancekit::embed::build_fuzzy_graph(blob_knn(static_cast<std::size_t>(state.range(0)), 15));
    stancekit::embed::EmbedParams params;
    params.n_epochs = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::embed::optimize_layout(graph, params));
    }
}
BENCHMARK(BM_OptimizeLayout)->Args({1000, 200})->Args({2000, 500})->Unit(benchmark::kMillisecond);

void BM_CurveFit(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::embed::fit_curve_params(0.1, 1.0));
    }
}
BENCHMARK(BM_CurveFit)->Unit(benchmark::kMicrosecond);

} // namespace
