#include "stancekit/graph.hpp"
#include "stancekit/synth.hpp"

#include <benchmark/benchmark.h>

namespace {

stancekit::graph::UserRetweetMatrix planted_matrix(std::size_t users_per_camp) {
    stancekit::synth::SynthParams p;
    p.users_per_camp = {users_per_camp, users_per_camp};
    p.accounts_per_camp = {users_per_camp / 5, users_per_camp / 5};
    p.seed = 1;
    return stancekit::graph::build_retweet_matrix(stancekit::synth::generate_corpus(p).tweets, {});
}

void BM_KnnGraph(benchmark::State& state) {
    const auto matrix = planted_matrix(static_cast<std::size_t>(state.range(0)));
    const int jobs = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::graph::knn_graph(matrix, 15, jobs));
    }
    state.counters["users"] = static_cast<double>(matrix.num_users());
}
BENCHMARK(BM_KnnGraph)->Args({250, 1})->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);

void BM_BuildMatrix(benchmark::State& state) {
    stancekit::synth::SynthParams p;
    p.users_per_camp = {1000, 1000};
    p.accounts_per_camp = {200, 200};
    const auto tweets = stancekit::synth::generate_corpus(p).tweets;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::graph::build_retweet_matrix(tweets, {}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tweets.size()));
}
BENCHMARK(BM_BuildMatrix)->Unit(benchmark::kMillisecond);

} // namespace
