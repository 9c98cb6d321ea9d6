#include <benchmark/benchmark.h>

#include <random>

#include "chebspec/fast_transform.hpp"

namespace {

using namespace chebspec;

Eigen::MatrixXd random_input(int s, int cols) {
    std::mt19937 gen(42u + static_cast<unsigned>(s));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd m(s, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < s; ++i) m(i, j) = dist(gen);
    }
    return m;
}

void BM_DctForwardFast(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    TransformPlan plan(s, TransformMode::fast);
    const Eigen::MatrixXd v = random_input(s, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan.dct_forward(v));
    }
    state.SetComplexityN(s);
}
BENCHMARK(BM_DctForwardFast)->RangeMultiplier(2)->Range(8, 2048)->Complexity();

void BM_DctForwardReference(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    TransformPlan plan(s, TransformMode::reference);
    const Eigen::MatrixXd v = random_input(s, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(plan.dct_forward(v));
    }
    state.SetComplexityN(s);
}
BENCHMARK(BM_DctForwardReference)->RangeMultiplier(2)->Range(8, 1024)->Complexity();

void BM_ApplyButcherFast(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const SpectralFactor x = build_spectral_factor(s);
    TransformPlan plan(s, TransformMode::fast);
    const Eigen::MatrixXd w = random_input(s, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_butcher_fast(plan, x, w));
    }
    state.SetComplexityN(s);
}
BENCHMARK(BM_ApplyButcherFast)->RangeMultiplier(2)->Range(8, 2048)->Complexity();

void BM_ApplyButcherDense(benchmark::State& state) {
    const int s = static_cast<int>(state.range(0));
    const ButcherTableau t = build_tableau(s);
    const Eigen::MatrixXd w = random_input(s, 4);
    Eigen::MatrixXd out(s, 4);
    for (auto _ : state) {
        out.noalias() = t.A * w;
        benchmark::DoNotOptimize(out);
    }
    state.SetComplexityN(s);
}
BENCHMARK(BM_ApplyButcherDense)->RangeMultiplier(2)->Range(8, 1024)->Complexity();

}  // namespace
