#include <benchmark/benchmark.h>

#include <symchaos/classify.hpp>
#include <symchaos/construct.hpp>
#include <symchaos/decide.hpp>
#include <symchaos/ellis.hpp>
#include <symchaos/product.hpp>
#include <symchaos/sft.hpp>

namespace {

using namespace symchaos;

Sft golden() { return Sft::from_forbidden({"0", "1"}, {Word{1, 1}}); }
Sft full2() { return Sft::from_forbidden({"0", "1"}, {}); }

void BM_language_count(benchmark::State& state) {
    const Sft X = golden();
    const size_t L = static_cast<size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(language_count(X, L));
}
BENCHMARK(BM_language_count)->Arg(8)->Arg(16)->Arg(24);

void BM_hitting_set(benchmark::State& state) {
    const Sft X = golden();
    const Word u{1}, v{1};
    const uint64_t H = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hitting_set(X, u, v, H));
}
BENCHMARK(BM_hitting_set)->Arg(64)->Arg(256)->Arg(1024);

void BM_square_transitivity(benchmark::State& state) {
    const Sft X = golden();
    for (auto _ : state) benchmark::DoNotOptimize(weak_mixing_report(X));
}
BENCHMARK(BM_square_transitivity);

void BM_monoid_sweep(benchmark::State& state) {
    const uint32_t k = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_law_check(k));
}
BENCHMARK(BM_monoid_sweep)->Arg(3)->Arg(4);

void BM_stage_build(benchmark::State& state) {
    const Sft X = full2();
    BuildOptions opts;
    opts.proximal = true;
    const uint32_t N = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_stages(X, N, opts));
}
BENCHMARK(BM_stage_build)->Arg(2)->Arg(3);

void BM_classify(benchmark::State& state) {
    const Sft X = golden();
    for (auto _ : state) benchmark::DoNotOptimize(classify(X, 4));
}
BENCHMARK(BM_classify);

}  // namespace

BENCHMARK_MAIN();
