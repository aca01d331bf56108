#include <benchmark/benchmark.h>

#include <tsf/algebra.hpp>
#include <tsf/amplitude.hpp>
#include <tsf/dynamics.hpp>
#include <tsf/moves.hpp>
#include <tsf/network_key.hpp>

#include "gen.hpp"

using namespace tsf;

namespace {

std::vector<TopspinNetwork> networks(int count, int max_arcs) {
    test::Rng rng(7);
    test::GenOptions opt;
    opt.max_arcs = max_arcs;
    opt.mark_probability = 0.3;
    std::vector<TopspinNetwork> out;
    for (int k = 0; k < count; ++k) out.push_back(test::random_network(rng, opt));
    return out;
}

void BM_CanonicalKey(benchmark::State& st) {
    auto nets = networks(32, static_cast<int>(st.range(0)));
    size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(canonical_key(nets[i++ % nets.size()]));
}
BENCHMARK(BM_CanonicalKey)->Arg(4)->Arg(8);

void BM_Successors(benchmark::State& st) {
    auto nets = networks(16, 8);
    MoveOptions mo;
    mo.stabilize = true;
    size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(successors(nets[i++ % nets.size()], mo));
}
BENCHMARK(BM_Successors);

void BM_EquivalenceSearch(benchmark::State& st) {
    auto nets = networks(8, 6);
    SearchBudget budget;
    budget.max_moves = 2;
    budget.threads = static_cast<int>(st.range(0));
    size_t i = 0;
    for (auto _ : st) {
        const auto& a = nets[i++ % nets.size()];
        auto succ = successors(a);
        benchmark::DoNotOptimize(equivalence_search(a, succ.empty() ? a : succ.back().result.net, budget));
    }
}
BENCHMARK(BM_EquivalenceSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

ConvolutionElement pair_element(test::Rng& rng, const std::vector<TopspinNetwork>& nets, int terms) {
    std::uniform_int_distribution<size_t> pick(0, nets.size() - 1);
    std::normal_distribution<double> v;
    ConvolutionElement f;
    for (int k = 0; k < terms; ++k) f.add(PairMorphism{nets[pick(rng)], nets[pick(rng)]}, Complex(v(rng), v(rng)));
    return f;
}

void BM_GroupoidStar(benchmark::State& st) {
    test::Rng rng(11);
    auto nets = networks(12, 6);
    auto f = pair_element(rng, nets, static_cast<int>(st.range(0))), g = pair_element(rng, nets, static_cast<int>(st.range(0)));
    set_convolution_threads(static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(star_groupoid(f, g));
    set_convolution_threads(0);
}
BENCHMARK(BM_GroupoidStar)->Args({16, 1})->Args({64, 1})->Args({64, 4});

void BM_Glue(benchmark::State& st) {
    test::Rng rng(13);
    auto ch = test::random_foam_chain(rng, networks(1, 8).front(), 4);
    for (auto _ : st) benchmark::DoNotOptimize(glue(glue(ch[0], ch[1]), glue(ch[2], ch[3])));
}
BENCHMARK(BM_Glue);

void BM_NormalizedAmplitude(benchmark::State& st) {
    test::Rng rng(17);
    auto ch = test::random_foam_chain(rng, networks(1, 8).front(), 3);
    auto f = glue(glue(ch[0], ch[1]), ch[2]);
    auto model = exp_area_model(1.0, 0.5);
    for (auto _ : st) benchmark::DoNotOptimize(normalized_amplitude(f, model));
}
BENCHMARK(BM_NormalizedAmplitude);

void BM_Represent(benchmark::State& st) {
    test::Rng rng(19);
    test::GenOptions opt;
    opt.max_n = 3;
    opt.max_arcs = 4;
    auto basis = move_basis(test::random_network(rng, opt), 2, static_cast<int>(st.range(0)));
    std::vector<TopspinNetwork> nets;
    for (const auto& m : basis.keys) nets.push_back(std::get<PairMorphism>(m).source);
    auto f = pair_element(rng, nets, 8);
    for (auto _ : st) benchmark::DoNotOptimize(represent(f, basis));
}
BENCHMARK(BM_Represent)->Arg(8)->Arg(16);

void BM_SyntheticPartition(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(partition_function(synthetic_spectrum(1.0, 0.6, static_cast<int>(st.range(0))), 0.9));
}
BENCHMARK(BM_SyntheticPartition)->Arg(100)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
