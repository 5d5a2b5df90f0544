#include <benchmark/benchmark.h>

#include "critheat/closed_forms.hpp"
#include "critheat/fkpp_solver.hpp"
#include "critheat/initial_data.hpp"
#include "critheat/radial_solver.hpp"
#include "critheat/transform.hpp"

namespace {

using namespace critheat;

const DerivedConstants& constants() {
    static const DerivedConstants c = derive_constants({4, 4.5, 1.0});
    return c;
}

void BM_FisherStep(benchmark::State& state) {
    SolverConfig cfg;
    cfg.grid = Grid1D(-40.0, 40.0, static_cast<std::size_t>(state.range(0)));
    const Field psi = map_initial(make_profile(ScaledUDatum{0.9}, constants()), constants(), cfg.grid);
    const double dt = stable_dt(sup_norm(psi), constants(), cfg);
    for (auto _ : state) benchmark::DoNotOptimize(step(psi, dt, constants(), cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FisherStep)->RangeMultiplier(2)->Range(401, 6401)->Complexity(benchmark::oN);

void BM_FisherSolveToT1(benchmark::State& state) {
    SolverConfig cfg;
    cfg.time.t_max = 1.0;
    const Field psi = map_initial(make_profile(BumpDatum{1.0, 0.5, 0.5}, constants()), constants(),
                                  cfg.grid);
    for (auto _ : state) benchmark::DoNotOptimize(solve(psi, constants(), cfg));
}
BENCHMARK(BM_FisherSolveToT1)->Unit(benchmark::kMillisecond);

void BM_RadialSolveToT1(benchmark::State& state) {
    RadialConfig cfg;
    cfg.time.t_max = 1.0;
    const auto u0 = make_profile(BumpDatum{1.0, 0.5, 0.5}, constants());
    for (auto _ : state) benchmark::DoNotOptimize(solve_radial(u0, constants(), cfg));
}
BENCHMARK(BM_RadialSolveToT1)->Unit(benchmark::kMillisecond);

void BM_ResidualU(benchmark::State& state) {
    const auto radii = log_spaced_radii(0.1, 10.0, static_cast<std::size_t>(state.range(0)));
    const auto U = ClosedForm::eternal(constants());
    for (auto _ : state) benchmark::DoNotOptimize(residual(U, radii, 0.7));
}
BENCHMARK(BM_ResidualU)->Arg(501)->Arg(2001);

void BM_WeightedMass(benchmark::State& state) {
    const auto u0 = make_profile(BumpDatum{1.0, 0.5, 1.0}, constants());
    for (auto _ : state) benchmark::DoNotOptimize(weighted_mass(u0, constants()));
}
BENCHMARK(BM_WeightedMass);

}  // namespace
BENCHMARK_MAIN();
