#pragma once

// Classical dependence measures, kept for side-by-side comparison with the
// BP score on the counterexamples where they break down.

#include <string>

#include "bpdep/pmf.hpp"
#include "bpdep/samples.hpp"

namespace bpdep {

enum class Measure { Pearson, Spearman, MutualInformation, UncertaintyCoefficient };

std::string to_string(Measure m);

struct BaselineScore {
    Measure measure = Measure::Pearson;
    double value = 0.0;
    bool defined = false;
};

/// Product-moment correlation. Undefined for a zero-variance column. Throws
/// std::invalid_argument when a column is not numeric.
BaselineScore pearson(const SampleTable& samples);

/// Pearson correlation of mid-ranks (ties get their average rank).
BaselineScore spearman(const SampleTable& samples);

/// I(X;Y) in nats.
BaselineScore mutual_information(const JointPmf& joint);

/// I(X;Y) / H(target); YonX divides by H(Y). Undefined when H(target) = 0.
BaselineScore uncertainty_coefficient(const JointPmf& joint, Direction direction = Direction::YonX);

double entropy(const MarginalPmf& pmf);

}  // namespace bpdep
