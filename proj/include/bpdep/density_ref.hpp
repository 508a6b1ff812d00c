#pragma once

// Quadrature reference values of UD and the BP dependency for a small closed
// catalog of analytic joint models. These serve as ground truth for the
// sample-based estimators.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpdep/pmf.hpp"

namespace bpdep {

class QuadratureDivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { ContinuousContinuous, ContinuousXDiscreteY, DiscreteXContinuousY };

enum class ModelId {
    UniformPlusGaussianNoise,  // X ~ U(0,1), Y = X + N(0, sigma^2)
    UniformSignHalves,         // X ~ U(0,1), Y = -1 if X <= 1/2 else 1
    QuadraticLink,             // Y ~ U(-1,1), X = bin of Y^2 among k equal bins of [0,1]
    IndependentUniforms,       // X, Y ~ U(0,1) independent
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double width() const { return hi - lo; }
};

struct Atom {
    double value = 0.0;
    double mass = 0.0;
};

class AnalyticModel {
public:
    static AnalyticModel uniform_plus_gaussian_noise(double sigma);
    static AnalyticModel uniform_sign_halves();
    static AnalyticModel quadratic_link(int x_bins);
    static AnalyticModel independent_uniforms();

    ModelId id() const { return id_; }
    ModelKind kind() const;
    std::string name() const;
    Parameters parameters() const;

    /// Box holding all but a negligible part of the mass on the continuous axes.
    Interval x_support() const;
    Interval y_support() const;

    /// Interior points where the integrand may jump; the quadrature splits there.
    std::vector<double> x_breakpoints() const;
    std::vector<double> y_breakpoints() const;

    /// Point masses of each axis. Empty for an axis without atoms.
    std::vector<Atom> x_atoms() const;
    std::vector<Atom> y_atoms() const;

    // ContinuousContinuous.
    double joint_density(double x, double y) const;
    double x_density(double x) const;
    double y_density(double y) const;

    // ContinuousXDiscreteY: P(Y = y_atoms()[atom] | X = x).
    double y_conditional_pmf(double x, std::size_t atom) const;

    // DiscreteXContinuousY: f(y | X = x_atoms()[x_atom]).
    double y_conditional_density(std::size_t x_atom, double y) const;

    /// Whether the support box can still be widened (UniformPlusGaussianNoise
    /// goes from +-4 sigma to +-6 sigma).
    bool can_widen() const;
    AnalyticModel widened() const;

    double sigma() const { return sigma_; }
    int x_bins() const { return x_bins_; }

private:
    AnalyticModel(ModelId id, double sigma, int x_bins) : id_(id), sigma_(sigma), x_bins_(x_bins) {}

    ModelId id_;
    double sigma_ = 0.0;
    int x_bins_ = 0;
    double box_sigmas_ = 4.0;
};

enum class QuadratureRule { Midpoint, Simpson };

struct QuadratureSpec {
    int resolution = 1024;             // cells per axis at the first refinement level
    std::optional<Interval> x_box;     // overrides the model's box
    std::optional<Interval> y_box;
    QuadratureRule rule = QuadratureRule::Midpoint;

    void validate() const;
};

inline constexpr double kRefinementTolerance = 1e-4;
inline constexpr int kMaxResolution = 1 << 14;
inline constexpr double kNormalizationTolerance = 1e-6;

/// Value of a refined quadrature plus the grid that produced it.
struct QuadratureOutcome {
    double value = 0.0;
    double previous = 0.0;      // value at half the final resolution
    int resolution = 0;         // final cells per continuous axis
    double mass = 1.0;          // integral of the joint over the box used
    bool box_widened = false;
    Interval x_box;
    Interval y_box;
};

/// Integral of the joint density (or mass) over the box at a fixed resolution,
/// without refinement.
double joint_mass(const AnalyticModel& model, const QuadratureSpec& spec);

/// Refined double integral of |f(x,y) - f_X(x) f_Y(y)| for a continuous model.
QuadratureOutcome integrate_ud(const AnalyticModel& model, const QuadratureSpec& spec);

/// Refined UD for a mixed model: integral of sums (continuous X) or sum of
/// integrals (discrete X).
QuadratureOutcome integrate_ud_mixed(const AnalyticModel& model, const QuadratureSpec& spec);

double ud_quadrature(const AnalyticModel& model, const QuadratureSpec& spec = {});
double ud_mixed(const AnalyticModel& model, const QuadratureSpec& spec = {});

/// 2 (1 - sum of squared atom masses). Equals 2 for an atomless axis.
double ud_self_atoms(std::span<const double> atom_masses);
double ud_self_continuous(const AnalyticModel& model, Axis axis = Axis::Y);

DepResult bp_dep_model(const AnalyticModel& model, const QuadratureSpec& spec = {},
                       Direction direction = Direction::YonX);

/// Exact cell probabilities of the model on a kx x ky grid over its support
/// box (tail mass folded into the outermost cells). Discrete axes keep their
/// atoms and ignore the bin count.
JointPmf discretize(const AnalyticModel& model, int kx, int ky);

}  // namespace bpdep
