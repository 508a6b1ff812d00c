#pragma once

#include <functional>

#include "bpdep/pmf.hpp"

namespace bpdep {

MarginalPmf marginalize(const JointPmf& joint, Axis axis);

/// Swaps the roles of X and Y.
JointPmf transpose(const JointPmf& joint);

/// UD(X,Y) = sum over x,y of |p(x,y) - p(x)p(y)|.
double ud_discrete(const JointPmf& joint);

/// UD(X,Y) through the supremum form: twice the total positive deviation.
/// The maximizing set is the set of cells with p(x,y) > p(x)p(y).
double ud_sup_form(const JointPmf& joint);

/// UD(Y,Y) = 2 (1 - sum_y p(y)^2), the largest UD any X can reach for this Y.
double ud_self(const MarginalPmf& marginal);

/// Dep(X|Y) for YonX, Dep(Y|X) for XonY. Undefined when the target variable
/// has a single support point.
DepResult bp_dep(const JointPmf& joint, Direction direction = Direction::YonX);

/// Joint of (f(X), Y); cells whose X labels collide under f are summed.
JointPmf apply_function_x(const JointPmf& joint, const std::function<Label(const Label&)>& f);

/// Relabels both axes. Throws std::invalid_argument when either map sends two
/// support labels to the same image.
JointPmf permute_labels(const JointPmf& joint,
                        const std::function<Label(const Label&)>& perm_x,
                        const std::function<Label(const Label&)>& perm_y);

/// Largest |p(x,y) - p(x)p(y)| over all cells.
double max_cell_deviation(const JointPmf& joint);

}  // namespace bpdep
