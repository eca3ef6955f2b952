#include "stancekit/synth.hpp"
#include "stancekit/valence.hpp"

#include <benchmark/benchmark.h>

namespace {

struct Fixture {
    std::vector<stancekit::corpus::Tweet> tweets;
    stancekit::cluster::NamedAssignment assignment;
};

Fixture make_fixture() {
    stancekit::synth::SynthParams p;
    p.users_per_camp = {1000, 1000};
    p.accounts_per_camp = {200, 200};
    p.hashtags_per_camp = {500, 500};
    auto corpus = stancekit::synth::generate_corpus(p);
    Fixture f;
    f.tweets = std::move(corpus.tweets);
    f.assignment.camps = p.camp_names;
    for (const auto& g : corpus.truth) {
        f.assignment.users.push_back(g.user_id);
        f.assignment.camp.push_back(g.camp);
    }
    return f;
}

void BM_CountTerms(benchmark::State& state) {
    const auto f = make_fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            stancekit::valence::count_terms(f.tweets, f.assignment, stancekit::valence::TermKind::hashtag));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.tweets.size()));
}
BENCHMARK(BM_CountTerms)->Unit(benchmark::kMillisecond);

void BM_DistinctiveTerms(benchmark::State& state) {
    const auto f = make_fixture();
    const auto counts = stancekit::valence::count_terms(f.tweets, f.assignment, stancekit::valence::TermKind::hashtag);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stancekit::valence::distinctive_terms(counts, 0, 0.6));
    }
}
BENCHMARK(BM_DistinctiveTerms)->Unit(benchmark::kMicrosecond);

} // namespace
