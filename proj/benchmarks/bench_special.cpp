#include <benchmark/benchmark.h>

#include "gruss/lagrange.hpp"
#include "gruss/special.hpp"

namespace {

using namespace gruss;

void BM_PhiBernstein(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(phi_bernstein(n, 0.3));
}
BENCHMARK(BM_PhiBernstein)->RangeMultiplier(4)->Range(1, 1024);

void BM_ScaledBesselI0(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(scaled_bessel_i0(z));
}
BENCHMARK(BM_ScaledBesselI0)->Arg(1)->Arg(20)->Arg(500);

void BM_ThetaBaskakov(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(theta_baskakov(n, 25.0));
}
BENCHMARK(BM_ThetaBaskakov)->Arg(2)->Arg(64);

void BM_LebesgueConstant(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lebesgue_constant(n));
}
BENCHMARK(BM_LebesgueConstant)->Arg(8)->Arg(100);

}  // namespace
