#include <benchmark/benchmark.h>

#include "gruss/bounds.hpp"
#include "gruss/funcspace.hpp"
#include "gruss/operators.hpp"

namespace {

using namespace gruss;

void BM_BernsteinWeights(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bernstein_at(n, 0.37));
}
BENCHMARK(BM_BernsteinWeights)->RangeMultiplier(4)->Range(1, 1024);

void BM_SzaszWeights(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(szasz_at(n, 12.5));
}
BENCHMARK(BM_SzaszWeights)->RangeMultiplier(4)->Range(1, 256);

void BM_BaskakovWeights(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(baskakov_at(n, 12.5));
}
BENCHMARK(BM_BaskakovWeights)->RangeMultiplier(4)->Range(1, 256);

void BM_ChebyshevT(benchmark::State& state) {
    const auto L = bernstein_at(static_cast<int>(state.range(0)), 0.37);
    const auto f = corpus_function("sinpi");
    const auto g = corpus_function("expneg");
    for (auto _ : state) benchmark::DoNotOptimize(chebyshev_T(L, f, g));
}
BENCHMARK(BM_ChebyshevT)->Arg(8)->Arg(64);

void BM_EvaluateBounds(benchmark::State& state) {
    const OperatorSpec spec{Family::bernstein, static_cast<int>(state.range(0)), 0.0};
    const auto f = corpus_function("vee");
    const auto g = corpus_function("bump");
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_bounds(spec, 0.3, f, g));
}
BENCHMARK(BM_EvaluateBounds)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
