#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bpdep/density_ref.hpp"
#include "bpdep/pmf_ops.hpp"

using namespace bpdep;

namespace {

template <class T>
T param(const DepResult& r, const std::string& key) {
    for (const auto& [k, v] : r.parameters)
        if (k == key) return std::get<T>(v);
    throw std::out_of_range(key);
}

}  // namespace

// Oracles from an independent fine-grid numpy evaluation (8000 x 16000 cells).
TEST(DensityRef, NoisyUniformOracle) {
    const auto r = bp_dep_model(AnalyticModel::uniform_plus_gaussian_noise(0.1));
    ASSERT_TRUE(r.defined());
    EXPECT_NEAR(*r.score, 0.62088780, 2e-6);
    EXPECT_NEAR(r.ud_max, 2.0, 0.0);
    EXPECT_LT(param<double>(r, "refinement_delta"), kRefinementTolerance);
    const auto wide = bp_dep_model(AnalyticModel::uniform_plus_gaussian_noise(0.3));
    EXPECT_NEAR(*wide.score, 0.31310288, 2e-6);
}

TEST(DensityRef, NoisyUniformIsSymmetricInScore) {
    // Both targets are continuous, so both directions divide the same UD by 2.
    const auto m = AnalyticModel::uniform_plus_gaussian_noise(0.1);
    EXPECT_NEAR(*bp_dep_model(m, {}, Direction::YonX).score, *bp_dep_model(m, {}, Direction::XonY).score, 1e-12);
}

TEST(DensityRef, Example1MixedModel) {
    const auto m = AnalyticModel::uniform_sign_halves();
    EXPECT_NEAR(ud_mixed(m), 1.0, 1e-9);
    EXPECT_NEAR(ud_self_continuous(m, Axis::X), 2.0, 0.0);
    EXPECT_NEAR(*bp_dep_model(m, {}, Direction::YonX).score, 1.0, 1e-9);
    EXPECT_NEAR(*bp_dep_model(m, {}, Direction::XonY).score, 0.5, 1e-9);
}

// X = bin of Y^2: UD = 2 (1 - sum p_j^2), p_j = sqrt((j+1)/k) - sqrt(j/k).
TEST(DensityRef, QuadraticLinkClosedForm) {
    for (int k : {2, 5, 10}) {
        double sq = 0.0;
        for (int j = 0; j < k; ++j) {
            const double p = std::sqrt((j + 1.0) / k) - std::sqrt(static_cast<double>(j) / k);
            sq += p * p;
        }
        const auto m = AnalyticModel::quadratic_link(k);
        EXPECT_NEAR(ud_mixed(m), 2.0 * (1.0 - sq), 1e-9) << k;
        EXPECT_NEAR(*bp_dep_model(m, {}, Direction::YonX).score, 1.0 - sq, 1e-9) << k;
        EXPECT_NEAR(*bp_dep_model(m, {}, Direction::XonY).score, 1.0, 1e-9) << k;
    }
}

TEST(DensityRef, IndependentUniformsScoreZero) {
    EXPECT_NEAR(*bp_dep_model(AnalyticModel::independent_uniforms()).score, 0.0, 1e-12);
}

TEST(DensityRef, SimpsonAgreesWithMidpoint) {
    const auto m = AnalyticModel::uniform_plus_gaussian_noise(0.2);
    QuadratureSpec simpson;
    simpson.rule = QuadratureRule::Simpson;
    EXPECT_NEAR(ud_quadrature(m, simpson), ud_quadrature(m), 1e-4);
}

// The 4-sigma box misses about 1.4e-6 of the noise tails, so the oracle widens it.
TEST(DensityRef, BoxWidensUntilMassIsOne) {
    const auto m = AnalyticModel::uniform_plus_gaussian_noise(0.1);
    EXPECT_GT(std::abs(joint_mass(m, {}) - 1.0), kNormalizationTolerance);
    ASSERT_TRUE(m.can_widen());
    EXPECT_NEAR(joint_mass(m.widened(), {}), 1.0, kNormalizationTolerance);
    EXPECT_NEAR(param<double>(bp_dep_model(m), "box_mass"), 1.0, kNormalizationTolerance);
    EXPECT_NEAR(joint_mass(AnalyticModel::uniform_sign_halves(), {}), 1.0, 1e-12);
}

TEST(DensityRef, AtomSelfUd) {
    const std::vector<double> halves{0.5, 0.5};
    const std::vector<double> three{0.2, 0.3, 0.5};
    const std::vector<double> one{1.0};
    EXPECT_NEAR(ud_self_atoms(halves), 1.0, 1e-15);
    EXPECT_NEAR(ud_self_atoms(three), 1.24, 1e-15);
    EXPECT_NEAR(ud_self_atoms(one), 0.0, 1e-15);
}

TEST(DensityRef, SpecValidation) {
    QuadratureSpec s;
    s.resolution = 8;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.resolution = 64;
    s.x_box = Interval{1.0, 0.0};
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(DensityRef, DiscretizedUdApproachesOracleFromBelow) {
    const auto m = AnalyticModel::uniform_plus_gaussian_noise(0.1);
    const double truth = bp_dep_model(m).ud;
    double prev = 0.0;
    // Nested grids: each coarsening is a function of the finer cells, so UD cannot grow.
    for (int k : {4, 16, 64, 256}) {
        const auto j = discretize(m, k, k);
        EXPECT_NEAR(std::accumulate(j.cells().begin(), j.cells().end(), 0.0), 1.0, 1e-12);
        const double ud = ud_discrete(j);
        EXPECT_LE(ud, truth + 1e-6);
        EXPECT_GE(ud, prev - 1e-12);
        prev = ud;
    }
    EXPECT_NEAR(prev, truth, 0.02);
}
