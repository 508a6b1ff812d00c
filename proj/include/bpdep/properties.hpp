#pragma once

// Executable checks of the eight desired dependency-function properties
// (asymmetry, range, independence, functional dependence, unambiguity,
// general applicability, isomorphism invariance, non-increase under
// functions of X).

#include <cstdint>
#include <string>
#include <vector>

#include "bpdep/pmf.hpp"
#include "bpdep/rng.hpp"

namespace bpdep {

struct PropertyCheck {
    std::string id;    // "II.1" ... "II.8"
    std::string name;
    bool passed = false;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::string witness;
};

struct PropertySuiteConfig {
    std::uint64_t seed = 42;
    std::size_t fuzz_trials = 1000;
    int max_support = 8;
};

std::vector<PropertyCheck> run_property_suite(const PropertySuiteConfig& config);

namespace fuzz {

/// rows x cols joint with uniform cell weights; roughly a quarter of the cells
/// are zeroed (never a whole row or column).
JointPmf random_joint(CounterRng& rng, int rows, int cols);

/// Joint of (X, f(X)) with random p_X on `rows` labels and f into `cols` labels.
JointPmf random_functional_joint(CounterRng& rng, int rows, int cols);

MarginalPmf random_marginal(CounterRng& rng, int size);

/// Random injective relabeling of `labels` onto fresh string tokens.
std::vector<std::pair<Label, Label>> random_relabeling(CounterRng& rng, const std::vector<Label>& labels);

}  // namespace fuzz

}  // namespace bpdep
