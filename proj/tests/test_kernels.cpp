#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <omp.h>

#include "bpdep/estimators.hpp"
#include "bpdep/kernels.hpp"
#include "bpdep/rng.hpp"
#include "bpdep/synthlab.hpp"

using namespace bpdep;

namespace {

struct ThreadScope {
    int saved = omp_get_max_threads();
    ~ThreadScope() { omp_set_num_threads(saved); }
};

std::vector<kernels::CellWeights> random_cells(CounterRng& rng, std::size_t samples, std::size_t cells) {
    std::vector<kernels::CellWeights> out;
    for (std::size_t s = 0; s < samples; ++s) {
        kernels::CellWeights c;
        const auto len = 1 + rng.below(12);
        c.first = rng.below(cells - len + 1);
        for (std::uint64_t k = 0; k < len; ++k) c.mass.push_back(rng.uniform());
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

TEST(Kernels, AccumulateOuterMatchesSerialBitForBit) {
    ThreadScope guard;
    CounterRng rng(5);
    const auto wx = random_cells(rng, 3000, 64);
    const auto wy = random_cells(rng, 3000, 48);
    const auto ref = kernels::accumulate_outer_serial(wx, wy, 64, 48, 1.0 / 3000);
    for (int t : {1, 2, 3, 8}) {
        omp_set_num_threads(t);
        EXPECT_EQ(kernels::accumulate_outer(wx, wy, 64, 48, 1.0 / 3000), ref) << t << " threads";
    }
}

TEST(Kernels, RowReductionsIndependentOfThreadCount) {
    ThreadScope guard;
    CounterRng rng(6);
    std::vector<double> px(300), py(200), m(300 * 200);
    for (auto& v : px) v = rng.uniform();
    for (auto& v : py) v = rng.uniform();
    for (auto& v : m) v = rng.uniform();
    auto f = [&](std::size_t i, std::size_t j) { return std::abs(m[i * 200 + j] - 0.5); };

    omp_set_num_threads(1);
    const double dev1 = kernels::abs_deviation(m, px, py);
    const double sum1 = kernels::weighted_grid_sum(px, py, f);
    for (int t : {2, 5, 8}) {
        omp_set_num_threads(t);
        EXPECT_EQ(kernels::abs_deviation(m, px, py), dev1);
        EXPECT_EQ(kernels::weighted_grid_sum(px, py, f), sum1);
    }
    // Different association order than the serial loop, same value to rounding.
    EXPECT_NEAR(dev1, kernels::abs_deviation_serial(m, px, py), 1e-9 * dev1);
    EXPECT_NEAR(sum1, kernels::weighted_grid_sum_serial(px, py, f), 1e-9 * sum1);
}

TEST(Kernels, HandSizedDeviation) {
    const std::vector<double> m{0.4, 0.1, 0.1, 0.4};
    const std::vector<double> p{0.5, 0.5};
    EXPECT_NEAR(kernels::abs_deviation(m, p, p), 0.6, 1e-15);
    EXPECT_NEAR(kernels::abs_deviation_serial(m, p, p), 0.6, 1e-15);
}

TEST(Kernels, KdeGridSameAsSerialForAnyThreadCount) {
    ThreadScope guard;
    const auto s = sample(GeneratorSpec{.id = GeneratorId::NoisyUniform, .n = 1500, .seed = 3});
    const KdeSpec spec{.bandwidth = 0.15, .resolution = 96};
    const KdeGrid ref = kde_joint_serial(s, spec);
    for (int t : {1, 4, 7}) {
        omp_set_num_threads(t);
        const KdeGrid g = kde_joint(s, spec);
        EXPECT_EQ(g.joint_mass, ref.joint_mass);
        EXPECT_EQ(g.x_mass, ref.x_mass);
        EXPECT_EQ(g.y_mass, ref.y_mass);
    }
}
