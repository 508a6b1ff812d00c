#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "bpdep/label.hpp"

namespace bpdep {

inline constexpr double kPmfTolerance = 1e-12;

class InvalidPmfError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Axis { X, Y };

/// Which variable's dependence is measured. YonX is Dep(X|Y): how much Y
/// depends on X, normalized by UD(Y,Y).
enum class Direction { YonX, XonY };

enum class Method { ExactPmf, Quadrature, Binned, Kde };

std::string to_string(Direction d);
std::string to_string(Method m);

/// Finite pmf over labels. Labels are sorted and every stored probability is
/// strictly positive.
class MarginalPmf {
public:
    MarginalPmf() = default;

    /// Accepts unnormalized nonnegative weights; duplicate labels are summed
    /// and zero-weight labels dropped.
    static MarginalPmf from_weights(std::span<const std::pair<Label, double>> weights);
    static MarginalPmf point_mass(Label l);
    static MarginalPmf uniform(std::span<const Label> labels);

    const std::vector<Label>& labels() const { return labels_; }
    const std::vector<double>& probabilities() const { return probs_; }
    std::size_t size() const { return labels_.size(); }

    /// Probability of `l`, zero when outside the support.
    double prob(const Label& l) const;

    friend bool operator==(const MarginalPmf&, const MarginalPmf&) = default;

private:
    MarginalPmf(std::vector<Label> labels, std::vector<double> probs)
        : labels_(std::move(labels)), probs_(std::move(probs)) {}

    std::vector<Label> labels_;
    std::vector<double> probs_;

    friend class JointPmf;
};

/// Finite joint pmf of two categorical variables stored as a dense matrix
/// over the sorted marginal supports. Rows are X labels, columns Y labels.
/// A cell may be zero; a whole row or column may not.
class JointPmf {
public:
    struct Entry {
        Label x;
        Label y;
        double weight;
    };

    /// Builds a joint from (x, y, weight) triples. Weights may be raw counts;
    /// they are normalized. Throws InvalidPmfError on negative, non-finite or
    /// all-zero weights.
    static JointPmf from_entries(std::span<const Entry> entries);

    /// Builds from a dense row-major weight matrix of size xs.size() x ys.size().
    /// Labels must be distinct within each axis.
    static JointPmf from_dense(std::vector<Label> xs, std::vector<Label> ys,
                               std::span<const double> weights);

    static JointPmf product(const MarginalPmf& px, const MarginalPmf& py);

    const std::vector<Label>& x_labels() const { return marginal_x_.labels_; }
    const std::vector<Label>& y_labels() const { return marginal_y_.labels_; }
    std::size_t rows() const { return marginal_x_.size(); }
    std::size_t cols() const { return marginal_y_.size(); }

    double at(std::size_t i, std::size_t j) const { return cells_[i * cols() + j]; }
    double prob(const Label& x, const Label& y) const;
    std::span<const double> cells() const { return cells_; }

    const MarginalPmf& marginal_x() const { return marginal_x_; }
    const MarginalPmf& marginal_y() const { return marginal_y_; }

    /// Entries with nonzero probability in row-major label order.
    std::vector<Entry> entries() const;

    friend bool operator==(const JointPmf&, const JointPmf&) = default;

private:
    JointPmf() = default;
    MarginalPmf marginal_x_;
    MarginalPmf marginal_y_;
    std::vector<double> cells_;
};

using ParamValue = std::variant<std::int64_t, double, std::string, std::vector<double>>;
using Parameters = std::vector<std::pair<std::string, ParamValue>>;

/// Dependency score with its provenance. `score` is empty exactly when the
/// target variable is almost surely constant (ud_max == 0).
struct DepResult {
    std::optional<double> score;
    double ud = 0.0;
    double ud_max = 0.0;
    Method method = Method::ExactPmf;
    Direction direction = Direction::YonX;
    Parameters parameters;

    bool defined() const { return score.has_value(); }
};

}  // namespace bpdep
