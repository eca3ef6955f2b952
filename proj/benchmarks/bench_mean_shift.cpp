#include "stancekit/cluster.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<stancekit::cluster::Point> two_blobs(std::size_t per_blob) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<stancekit::cluster::Point> pts;
    for (std::size_t i = 0; i < 2 * per_blob; ++i) {
        const double cx = i < per_blob ? 0.0 : 10.0;
        pts.push_back({cx + noise(rng), noise(rng)});
    }
    return pts;
}

void BM_MeanShift(benchmark::State& state) {
    const auto pts = two_blobs(static_cast<std::size_t>(state.range(0)));
    stancekit::cluster::MeanShiftParams params;
    params.bandwidth = 2.0;
    params.jobs = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::cluster::mean_shift(pts, params));
    }
}
BENCHMARK(BM_MeanShift)->Args({1000, 1})->Args({5000, 1})->Args({5000, 4})->Unit(benchmark::kMillisecond);

void BM_EstimateBandwidth(benchmark::State& state) {
    const auto pts = two_blobs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::cluster::estimate_bandwidth(pts, 0.1));
    }
}
BENCHMARK(BM_EstimateBandwidth)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

} // namespace
