// Serial reference vs OpenMP kernels, plus the two end-to-end paths that use
// them (quadrature oracle and KDE estimate).

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "bpdep/density_ref.hpp"
#include "bpdep/estimators.hpp"
#include "bpdep/kernels.hpp"
#include "bpdep/normal.hpp"
#include "bpdep/rng.hpp"
#include "bpdep/synthlab.hpp"

using namespace bpdep;

namespace {

std::vector<double> weights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

auto integrand(std::size_t n) {
    return [n](std::size_t i, std::size_t j) {
        const double x = (i + 0.5) / n;
        const double y = (j + 0.5) / n;
        return std::abs(normal_pdf((y - x) / 0.1) / 0.1 - 1.0);
    };
}

void BM_grid_sum_serial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto w = weights(n);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::weighted_grid_sum_serial(w, w, integrand(n)));
}

void BM_grid_sum_parallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto w = weights(n);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::weighted_grid_sum(w, w, integrand(n)));
}

struct OuterInput {
    std::vector<kernels::CellWeights> wx, wy;
    std::size_t cells = 256;
};

OuterInput outer_input(std::size_t samples) {
    OuterInput in;
    CounterRng rng(7);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto* side : {&in.wx, &in.wy}) {
            kernels::CellWeights c;
            c.first = rng.below(in.cells - 24);
            c.mass.assign(24, 1.0 / 24.0);
            side->push_back(std::move(c));
        }
    }
    return in;
}

void BM_outer_serial(benchmark::State& st) {
    const auto in = outer_input(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::accumulate_outer_serial(in.wx, in.wy, in.cells, in.cells, 1.0));
}

void BM_outer_parallel(benchmark::State& st) {
    const auto in = outer_input(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::accumulate_outer(in.wx, in.wy, in.cells, in.cells, 1.0));
}

void BM_abs_dev_serial(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const std::vector<double> m(n * n, 1.0 / static_cast<double>(n * n) * 1.5);
    const auto p = weights(n);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::abs_deviation_serial(m, p, p));
}

void BM_abs_dev_parallel(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const std::vector<double> m(n * n, 1.0 / static_cast<double>(n * n) * 1.5);
    const auto p = weights(n);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::abs_deviation(m, p, p));
}

void BM_kde_serial(benchmark::State& st) {
    const auto s = sample(GeneratorSpec{.id = GeneratorId::NoisyUniform, .n = 5000});
    for (auto _ : st) benchmark::DoNotOptimize(kde_joint_serial(s, KdeSpec{}));
}

void BM_kde_parallel(benchmark::State& st) {
    const auto s = sample(GeneratorSpec{.id = GeneratorId::NoisyUniform, .n = 5000});
    for (auto _ : st) benchmark::DoNotOptimize(kde_joint(s, KdeSpec{}));
}

void BM_oracle(benchmark::State& st) {
    const auto model = AnalyticModel::uniform_plus_gaussian_noise(0.1);
    for (auto _ : st) benchmark::DoNotOptimize(bp_dep_model(model));
}

}  // namespace

BENCHMARK(BM_grid_sum_serial)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_sum_parallel)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_outer_serial)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_outer_parallel)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_abs_dev_serial)->Arg(256)->Arg(2048)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_abs_dev_parallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_kde_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kde_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_oracle)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
