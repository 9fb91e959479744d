#include <benchmark/benchmark.h>

#include "starq/intertwiner.hpp"
#include "starq/moyal.hpp"
#include "starq/scenario.hpp"
#include "starq/starexp.hpp"

namespace {

starq::SampledField make_field(int n) {
    return starq::sample(starq::make_gaussian_field(1.0, 1.0, 0.0, 0.0),
                         starq::GridSpec(3.0, 12.0, n, n));
}

void BM_PartialFourier(benchmark::State& state) {
    const auto f = make_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(starq::partial_fourier(f));
}
BENCHMARK(BM_PartialFourier)->Arg(128)->Arg(256)->Arg(512);

void BM_MoyalProduct(benchmark::State& state) {
    const auto f = make_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(starq::moyal_product(f, f, 0.5));
}
BENCHMARK(BM_MoyalProduct)->Arg(128)->Arg(256);

void BM_InvariantProduct(benchmark::State& state) {
    const auto f = make_field(static_cast<int>(state.range(0)));
    const auto prof = starq::DeformationProfile::tracial(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(starq::invariant_product(f, f, prof));
}
BENCHMARK(BM_InvariantProduct)->Arg(128)->Arg(256);

void BM_MultiplierApply(benchmark::State& state) {
    const auto f = make_field(static_cast<int>(state.range(0)));
    const auto prof = starq::DeformationProfile::tracial(0.5);
    const auto ex = starq::star_exp(starq::AlgebraElement::H(), 0.5, prof);
    for (auto _ : state) benchmark::DoNotOptimize(starq::multiplier_apply(ex, f));
}
BENCHMARK(BM_MultiplierApply)->Arg(128)->Arg(256);

void BM_MomentLeftMul(benchmark::State& state) {
    const auto f = make_field(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(starq::moment_left_mul(starq::AlgebraElement::E(), f, 0.5));
}
BENCHMARK(BM_MomentLeftMul)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
