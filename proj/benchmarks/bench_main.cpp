#include <benchmark/benchmark.h>

#include "cgp/constants.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/maslov.hpp"
#include "cgp/statespace.hpp"

using namespace cgp;

namespace {

void BM_TypicalBraiding(benchmark::State& state) {
    const ScalarContext ctx(static_cast<int>(state.range(0)));
    const WeightModule v = typical_module(ctx, Scalar(0.37, 0.11)), w = typical_module(ctx, Scalar(1.21, -0.3));
    for (auto _ : state) benchmark::DoNotOptimize(braiding(ctx, v, w));
}
BENCHMARK(BM_TypicalBraiding)->Arg(4)->Arg(6)->Arg(10);

void BM_FPrimeTrefoil(benchmark::State& state) {
    const ScalarContext ctx(static_cast<int>(state.range(0)));
    const Diagram t = fixtures::trefoil(Scalar(0.37, 0.11));
    for (auto _ : state) benchmark::DoNotOptimize(f_prime(ctx, t));
}
BENCHMARK(BM_FPrimeTrefoil)->Arg(4)->Arg(6)->Arg(10);

void BM_Constants(benchmark::State& state) {
    const ScalarContext ctx(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(default_constants(ctx));
}
BENCHMARK(BM_Constants)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_CgpLens51(benchmark::State& state) {
    const ScalarContext ctx(static_cast<int>(state.range(0)));
    const SurgeryPresentation p = fixtures::lens51_slide(Scalar(0.4, 0.0));
    const EvalOptions opts{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(cgp::cgp(ctx, p, opts));
}
BENCHMARK(BM_CgpLens51)->Args({4, 1})->Args({6, 1})->Args({6, 4})->Unit(benchmark::kMillisecond);

void BM_Genus2StateSpace(benchmark::State& state) {
    const ScalarContext ctx(static_cast<int>(state.range(0)));
    const Degree m0(Scalar(0.3, 0.1)), mp(Scalar(0.7, -0.2));
    for (auto _ : state) benchmark::DoNotOptimize(genus_n_dim(ctx, {2, m0, {mp}}));
}
BENCHMARK(BM_Genus2StateSpace)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MaslovIndex(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    const SymplecticSpace h = standard_symplectic(n);
    const Subspace a = random_lagrangian(n, rng), b = random_lagrangian(n, rng), c = random_lagrangian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(maslov_index(h, a, b, c));
}
BENCHMARK(BM_MaslovIndex)->Arg(1)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
