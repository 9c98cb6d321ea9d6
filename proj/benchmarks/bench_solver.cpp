#include <benchmark/benchmark.h>

#include <numbers>

#include "chebspec/solver.hpp"

namespace {

using namespace chebspec;

void BM_KeplerStep(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const bool fast = state.range(1) != 0;
    const Problem problem = kepler();
    SolverConfig cfg;
    cfg.s = s;
    cfg.h = 2.0 * std::numbers::pi / 50.0;
    cfg.path = fast ? ButcherPath::fast : ButcherPath::dense;
    const ButcherTableau tableau = build_tableau(s);
    TransformPlan plan(s, fast ? TransformMode::fast : TransformMode::reference);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(problem, problem.default_y0, cfg, tableau, plan));
    }
}
BENCHMARK(BM_KeplerStep)
    ->ArgsProduct({{3, 10, 30, 100, 300}, {0, 1}})
    ->ArgNames({"s", "fast"});

void BM_KeplerPeriod(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const Problem problem = kepler();
    SolverConfig cfg;
    cfg.s = s;
    cfg.h = 2.0 * std::numbers::pi / 10.0;
    cfg.keep_coefficients = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            integrate(problem, problem.default_y0, 2.0 * std::numbers::pi, cfg));
    }
}
BENCHMARK(BM_KeplerPeriod)->Arg(10)->Arg(30)->Arg(50);

}  // namespace
