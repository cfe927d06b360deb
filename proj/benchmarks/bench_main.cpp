#include <benchmark/benchmark.h>

#include <numbers>

#include "leakyloop/chords.hpp"
#include "leakyloop/geometry.hpp"
#include "leakyloop/specfun.hpp"
#include "leakyloop/spectral.hpp"

namespace {

namespace ll = leakyloop;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void BM_BesselK0(benchmark::State& state) {
    double x = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ll::specfun::bessel_k0(x));
        x = x < 600.0 ? x * 1.001 : 1e-6;
    }
}
BENCHMARK(BM_BesselK0);

void BM_AssembleBSMatrix(benchmark::State& state) {
    const auto curve = ll::geometry::build_circle(kTwoPi, state.range(0));
    for (auto _ : state) {
        auto m = ll::spectral::assemble_bs_matrix(curve, 1.0, 0.6);
        benchmark::DoNotOptimize(m.data().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleBSMatrix)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_MaxEigenpair(benchmark::State& state) {
    const auto curve = ll::geometry::build_circle(kTwoPi, state.range(0));
    const auto m = ll::spectral::assemble_bs_matrix(curve, 1.0, 0.6);
    for (auto _ : state) {
        auto pair = ll::spectral::max_eigenpair(m);
        benchmark::DoNotOptimize(pair.lambda);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaxEigenpair)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_GroundState(benchmark::State& state) {
    const auto curve = ll::geometry::build_circle(kTwoPi, state.range(0));
    for (auto _ : state) {
        auto gs = ll::spectral::ground_state(curve, 1.0, 1e-8);
        benchmark::DoNotOptimize(gs.kappa_star);
    }
}
BENCHMARK(BM_GroundState)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ChordScan(benchmark::State& state) {
    const auto curve = ll::geometry::build_ellipse(2.0, kTwoPi, state.range(0));
    const double h = curve.grid_step();
    for (auto _ : state) {
        double acc = 0.0;
        for (int k = 1; k <= state.range(0) / 2; k += 8)
            acc += ll::chords::chord_moment(curve, k * h, 2.0).value;
        benchmark::DoNotOptimize(acc);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ChordScan)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_CurvatureBuild(benchmark::State& state) {
    const ll::geometry::CurvatureSpec spec(kTwoPi, {{2, 0.03, 0.01}, {3, 0.0, 0.02}});
    for (auto _ : state) {
        auto curve = ll::geometry::build_from_curvature(spec, state.range(0));
        benchmark::DoNotOptimize(curve.points().data());
    }
}
BENCHMARK(BM_CurvatureBuild)->Arg(512)->Arg(2048);

} // namespace

BENCHMARK_MAIN();
