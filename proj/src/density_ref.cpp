#include "bpdep/density_ref.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bpdep/kernels.hpp"
#include "bpdep/normal.hpp"

namespace bpdep {

AnalyticModel AnalyticModel::uniform_plus_gaussian_noise(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise sigma must be positive");
    return AnalyticModel(ModelId::UniformPlusGaussianNoise, sigma, 0);
}

AnalyticModel AnalyticModel::uniform_sign_halves() { return AnalyticModel(ModelId::UniformSignHalves, 0.0, 0); }

AnalyticModel AnalyticModel::quadratic_link(int x_bins) {
    if (x_bins < 1) throw std::invalid_argument("quadratic link needs at least one X bin");
    return AnalyticModel(ModelId::QuadraticLink, 0.0, x_bins);
}

AnalyticModel AnalyticModel::independent_uniforms() { return AnalyticModel(ModelId::IndependentUniforms, 0.0, 0); }

ModelKind AnalyticModel::kind() const {
    switch (id_) {
        case ModelId::UniformSignHalves: return ModelKind::ContinuousXDiscreteY;
        case ModelId::QuadraticLink: return ModelKind::DiscreteXContinuousY;
        default: return ModelKind::ContinuousContinuous;
    }
}

std::string AnalyticModel::name() const {
    switch (id_) {
        case ModelId::UniformPlusGaussianNoise: return "uniform-plus-gaussian-noise";
        case ModelId::UniformSignHalves: return "uniform-sign-halves";
        case ModelId::QuadraticLink: return "quadratic-link";
        case ModelId::IndependentUniforms: return "independent-uniforms";
    }
    return "unknown";
}

Parameters AnalyticModel::parameters() const {
    Parameters p{{"model", name()}};
    if (id_ == ModelId::UniformPlusGaussianNoise) {
        p.emplace_back("sigma", sigma_);
        p.emplace_back("box_sigmas", box_sigmas_);
    }
    if (id_ == ModelId::QuadraticLink) p.emplace_back("x_bins", std::int64_t{x_bins_});
    return p;
}

Interval AnalyticModel::x_support() const {
    if (id_ == ModelId::QuadraticLink) return {0.0, static_cast<double>(x_bins_)};
    return {0.0, 1.0};
}

Interval AnalyticModel::y_support() const {
    switch (id_) {
        case ModelId::UniformPlusGaussianNoise: return {-box_sigmas_ * sigma_, 1.0 + box_sigmas_ * sigma_};
        case ModelId::UniformSignHalves: return {-1.0, 1.0};
        case ModelId::QuadraticLink: return {-1.0, 1.0};
        case ModelId::IndependentUniforms: return {0.0, 1.0};
    }
    return {0.0, 1.0};
}

std::vector<double> AnalyticModel::x_breakpoints() const {
    if (id_ == ModelId::UniformSignHalves) return {0.5};
    return {};
}

std::vector<double> AnalyticModel::y_breakpoints() const {
    if (id_ != ModelId::QuadraticLink) return {};
    std::vector<double> b;
    for (int j = x_bins_ - 1; j >= 1; --j) b.push_back(-std::sqrt(static_cast<double>(j) / x_bins_));
    b.push_back(0.0);
    for (int j = 1; j < x_bins_; ++j) b.push_back(std::sqrt(static_cast<double>(j) / x_bins_));
    return b;
}

std::vector<Atom> AnalyticModel::x_atoms() const {
    if (id_ != ModelId::QuadraticLink) return {};
    std::vector<Atom> atoms;
    for (int j = 0; j < x_bins_; ++j) {
        const double lo = std::sqrt(static_cast<double>(j) / x_bins_);
        const double hi = std::sqrt(static_cast<double>(j + 1) / x_bins_);
        atoms.push_back({static_cast<double>(j), hi - lo});
    }
    return atoms;
}

std::vector<Atom> AnalyticModel::y_atoms() const {
    if (id_ == ModelId::UniformSignHalves) return {{-1.0, 0.5}, {1.0, 0.5}};
    return {};
}

double AnalyticModel::joint_density(double x, double y) const {
    switch (id_) {
        case ModelId::UniformPlusGaussianNoise:
            if (x < 0.0 || x > 1.0) return 0.0;
            return gaussian_kernel(y - x, sigma_);
        case ModelId::IndependentUniforms:
            return (x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0) ? 1.0 : 0.0;
        default:
            throw std::logic_error(name() + " has no joint density");
    }
}

double AnalyticModel::x_density(double x) const {
    if (id_ == ModelId::QuadraticLink) throw std::logic_error("quadratic-link X is discrete");
    return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
}

double AnalyticModel::y_density(double y) const {
    switch (id_) {
        case ModelId::UniformPlusGaussianNoise:
            return normal_cdf(y / sigma_) - normal_cdf((y - 1.0) / sigma_);
        case ModelId::IndependentUniforms:
            return (y >= 0.0 && y <= 1.0) ? 1.0 : 0.0;
        case ModelId::QuadraticLink:
            return (y >= -1.0 && y <= 1.0) ? 0.5 : 0.0;
        default:
            throw std::logic_error(name() + " has a discrete Y");
    }
}

double AnalyticModel::y_conditional_pmf(double x, std::size_t atom) const {
    if (id_ != ModelId::UniformSignHalves) throw std::logic_error(name() + " has no Y atoms");
    const bool upper = x > 0.5;
    return (atom == 1) == upper ? 1.0 : 0.0;
}

double AnalyticModel::y_conditional_density(std::size_t x_atom, double y) const {
    if (id_ != ModelId::QuadraticLink) throw std::logic_error(name() + " has no X atoms");
    const double lo = std::sqrt(static_cast<double>(x_atom) / x_bins_);
    const double hi = std::sqrt(static_cast<double>(x_atom + 1) / x_bins_);
    const double a = std::abs(y);
    const bool last = static_cast<int>(x_atom) == x_bins_ - 1;
    const bool inside = a >= lo && (a < hi || (last && a <= hi));
    return inside ? 0.5 / (hi - lo) : 0.0;
}

bool AnalyticModel::can_widen() const { return id_ == ModelId::UniformPlusGaussianNoise && box_sigmas_ < 6.0; }

AnalyticModel AnalyticModel::widened() const {
    AnalyticModel m = *this;
    if (can_widen()) m.box_sigmas_ = 6.0;
    return m;
}

// ---------------------------------------------------------------------------

void QuadratureSpec::validate() const {
    if (resolution < 16) throw std::invalid_argument("quadrature resolution must be at least 16");
    for (const auto& box : {x_box, y_box})
        if (box && !(box->hi > box->lo)) throw std::invalid_argument("quadrature box needs hi > lo");
}

namespace {

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Composite rule on [lo, hi] split at the breakpoints; about n cells in total,
/// distributed by segment length.
AxisRule make_axis(Interval box, const std::vector<double>& breakpoints, int n, QuadratureRule rule) {
    std::vector<double> cuts{box.lo};
    for (double b : breakpoints)
        if (b > box.lo && b < box.hi) cuts.push_back(b);
    cuts.push_back(box.hi);

    AxisRule out;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s];
        const double b = cuts[s + 1];
        int m = std::max(2, static_cast<int>(std::lround(n * (b - a) / box.width())));
        if (rule == QuadratureRule::Simpson && (m % 2) != 0) ++m;
        const double h = (b - a) / m;
        if (rule == QuadratureRule::Midpoint) {
            for (int k = 0; k < m; ++k) {
                out.nodes.push_back(a + (k + 0.5) * h);
                out.weights.push_back(h);
            }
        } else {
            // Shared segment endpoints are duplicated; their weights simply add.
            for (int k = 0; k <= m; ++k) {
                out.nodes.push_back(a + k * h);
                const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                out.weights.push_back(w * h / 3.0);
            }
        }
    }
    return out;
}

Interval x_box_of(const AnalyticModel& m, const QuadratureSpec& s) { return s.x_box.value_or(m.x_support()); }
Interval y_box_of(const AnalyticModel& m, const QuadratureSpec& s) { return s.y_box.value_or(m.y_support()); }

double mass_at(const AnalyticModel& model, const QuadratureSpec& spec, int n) {
    const Interval xb = x_box_of(model, spec);
    const Interval yb = y_box_of(model, spec);
    switch (model.kind()) {
        case ModelKind::ContinuousContinuous: {
            const AxisRule ax = make_axis(xb, model.x_breakpoints(), n, spec.rule);
            const AxisRule ay = make_axis(yb, model.y_breakpoints(), n, spec.rule);
            return kernels::weighted_grid_sum(ax.weights, ay.weights, [&](std::size_t i, std::size_t j) {
                return model.joint_density(ax.nodes[i], ay.nodes[j]);
            });
        }
        case ModelKind::ContinuousXDiscreteY: {
            const AxisRule ax = make_axis(xb, model.x_breakpoints(), n, spec.rule);
            const auto atoms = model.y_atoms();
            const std::vector<double> ones(atoms.size(), 1.0);
            return kernels::weighted_grid_sum(ax.weights, ones, [&](std::size_t i, std::size_t j) {
                return model.x_density(ax.nodes[i]) * model.y_conditional_pmf(ax.nodes[i], j);
            });
        }
        case ModelKind::DiscreteXContinuousY: {
            const AxisRule ay = make_axis(yb, model.y_breakpoints(), n, spec.rule);
            const auto atoms = model.x_atoms();
            std::vector<double> px;
            for (const auto& a : atoms) px.push_back(a.mass);
            return kernels::weighted_grid_sum(px, ay.weights, [&](std::size_t i, std::size_t j) {
                return model.y_conditional_density(i, ay.nodes[j]);
            });
        }
    }
    return 0.0;
}

double ud_at(const AnalyticModel& model, const QuadratureSpec& spec, int n) {
    const Interval xb = x_box_of(model, spec);
    const Interval yb = y_box_of(model, spec);
    switch (model.kind()) {
        case ModelKind::ContinuousContinuous: {
            const AxisRule ax = make_axis(xb, model.x_breakpoints(), n, spec.rule);
            const AxisRule ay = make_axis(yb, model.y_breakpoints(), n, spec.rule);
            std::vector<double> fx(ax.nodes.size()), fy(ay.nodes.size());
            for (std::size_t i = 0; i < fx.size(); ++i) fx[i] = model.x_density(ax.nodes[i]);
            for (std::size_t j = 0; j < fy.size(); ++j) fy[j] = model.y_density(ay.nodes[j]);
            return kernels::weighted_grid_sum(ax.weights, ay.weights, [&](std::size_t i, std::size_t j) {
                return std::abs(model.joint_density(ax.nodes[i], ay.nodes[j]) - fx[i] * fy[j]);
            });
        }
        case ModelKind::ContinuousXDiscreteY: {
            const AxisRule ax = make_axis(xb, model.x_breakpoints(), n, spec.rule);
            const auto atoms = model.y_atoms();
            const std::vector<double> ones(atoms.size(), 1.0);
            return kernels::weighted_grid_sum(ax.weights, ones, [&](std::size_t i, std::size_t j) {
                return model.x_density(ax.nodes[i]) * std::abs(model.y_conditional_pmf(ax.nodes[i], j) - atoms[j].mass);
            });
        }
        case ModelKind::DiscreteXContinuousY: {
            const AxisRule ay = make_axis(yb, model.y_breakpoints(), n, spec.rule);
            const auto atoms = model.x_atoms();
            std::vector<double> px;
            for (const auto& a : atoms) px.push_back(a.mass);
            std::vector<double> fy(ay.nodes.size());
            for (std::size_t j = 0; j < fy.size(); ++j) fy[j] = model.y_density(ay.nodes[j]);
            return kernels::weighted_grid_sum(px, ay.weights, [&](std::size_t i, std::size_t j) {
                return std::abs(model.y_conditional_density(i, ay.nodes[j]) - fy[j]);
            });
        }
    }
    return 0.0;
}

QuadratureOutcome refine(const AnalyticModel& input, const QuadratureSpec& spec) {
    spec.validate();
    AnalyticModel model = input;
    QuadratureOutcome out;

    // Widen the box while the truncated mass is above tolerance.
    out.mass = mass_at(model, spec, spec.resolution);
    while (std::abs(out.mass - 1.0) > kNormalizationTolerance && model.can_widen() && !spec.y_box) {
        model = model.widened();
        out.box_widened = true;
        out.mass = mass_at(model, spec, spec.resolution);
    }
    out.x_box = x_box_of(model, spec);
    out.y_box = y_box_of(model, spec);

    int n = spec.resolution;
    double prev = ud_at(model, spec, n);
    while (true) {
        if (2 * n > kMaxResolution)
            throw QuadratureDivergenceError("UD quadrature for " + model.name() + " did not settle below " +
                                            std::to_string(kRefinementTolerance) + " by resolution " +
                                            std::to_string(n));
        const double cur = ud_at(model, spec, 2 * n);
        if (std::abs(cur - prev) < kRefinementTolerance) {
            out.value = cur;
            out.previous = prev;
            out.resolution = 2 * n;
            return out;
        }
        prev = cur;
        n *= 2;
    }
}

}  // namespace

double joint_mass(const AnalyticModel& model, const QuadratureSpec& spec) {
    spec.validate();
    return mass_at(model, spec, spec.resolution);
}

QuadratureOutcome integrate_ud(const AnalyticModel& model, const QuadratureSpec& spec) {
    if (model.kind() != ModelKind::ContinuousContinuous)
        throw std::invalid_argument(model.name() + " is mixed; use the mixed UD formulation");
    return refine(model, spec);
}

QuadratureOutcome integrate_ud_mixed(const AnalyticModel& model, const QuadratureSpec& spec) {
    if (model.kind() == ModelKind::ContinuousContinuous)
        throw std::invalid_argument(model.name() + " is continuous on both axes");
    return refine(model, spec);
}

double ud_quadrature(const AnalyticModel& model, const QuadratureSpec& spec) { return integrate_ud(model, spec).value; }

double ud_mixed(const AnalyticModel& model, const QuadratureSpec& spec) { return integrate_ud_mixed(model, spec).value; }

double ud_self_atoms(std::span<const double> atom_masses) {
    double sq = 0.0;
    for (double m : atom_masses) sq += m * m;
    return 2.0 * (1.0 - sq);
}

double ud_self_continuous(const AnalyticModel& model, Axis axis) {
    const auto atoms = axis == Axis::X ? model.x_atoms() : model.y_atoms();
    std::vector<double> masses;
    for (const auto& a : atoms) masses.push_back(a.mass);
    return ud_self_atoms(masses);
}

DepResult bp_dep_model(const AnalyticModel& model, const QuadratureSpec& spec, Direction direction) {
    const QuadratureOutcome q =
        model.kind() == ModelKind::ContinuousContinuous ? integrate_ud(model, spec) : integrate_ud_mixed(model, spec);
    DepResult r;
    r.method = Method::Quadrature;
    r.direction = direction;
    r.ud = q.value;
    const Axis target = direction == Direction::YonX ? Axis::Y : Axis::X;
    const auto atoms = target == Axis::X ? model.x_atoms() : model.y_atoms();
    r.ud_max = ud_self_continuous(model, target);
    const bool constant = atoms.size() == 1 && atoms.front().mass == 1.0;
    if (!constant) r.score = r.ud / r.ud_max;

    r.parameters = model.parameters();
    r.parameters.emplace_back("rule", spec.rule == QuadratureRule::Midpoint ? "midpoint" : "simpson");
    r.parameters.emplace_back("resolution", std::int64_t{q.resolution});
    r.parameters.emplace_back("refinement_delta", std::abs(q.value - q.previous));
    r.parameters.emplace_back("box_mass", q.mass);
    r.parameters.emplace_back("x_box", std::vector<double>{q.x_box.lo, q.x_box.hi});
    r.parameters.emplace_back("y_box", std::vector<double>{q.y_box.lo, q.y_box.hi});
    return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> edges(Interval box, int k) {
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) e[static_cast<std::size_t>(i)] = box.lo + box.width() * i / k;
    return e;
}

double overlap(double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); }

std::vector<Label> index_labels(std::size_t n) {
    std::vector<Label> l;
    for (std::size_t i = 0; i < n; ++i) l.emplace_back(static_cast<std::int64_t>(i));
    return l;
}

}  // namespace

JointPmf discretize(const AnalyticModel& model, int kx, int ky) {
    if (kx < 1 || ky < 1) throw std::invalid_argument("discretize needs positive bin counts");
    const auto ux = static_cast<std::size_t>(kx);
    const auto uy = static_cast<std::size_t>(ky);
    switch (model.id()) {
        case ModelId::UniformPlusGaussianNoise: {
            const double s = model.sigma();
            const auto xe = edges(model.x_support(), kx);
            auto ye = edges(model.y_support(), ky);
            ye.front() = -std::numeric_limits<double>::infinity();
            ye.back() = std::numeric_limits<double>::infinity();
            // P(X in [a,b], Y in [c,d]) = s [G((d-a)/s) - G((d-b)/s) - G((c-a)/s) + G((c-b)/s)],
            // G the antiderivative of Phi.
            auto strip = [&](double a, double b, double d) {
                if (d == std::numeric_limits<double>::infinity()) return b - a;
                if (d == -std::numeric_limits<double>::infinity()) return 0.0;
                return s * (normal_cdf_integral((d - a) / s) - normal_cdf_integral((d - b) / s));
            };
            std::vector<double> w(ux * uy);
            for (std::size_t i = 0; i < ux; ++i)
                for (std::size_t j = 0; j < uy; ++j)
                    w[i * uy + j] = std::max(0.0, strip(xe[i], xe[i + 1], ye[j + 1]) - strip(xe[i], xe[i + 1], ye[j]));
            return JointPmf::from_dense(index_labels(ux), index_labels(uy), w);
        }
        case ModelId::IndependentUniforms: {
            std::vector<double> w(ux * uy, 1.0);
            return JointPmf::from_dense(index_labels(ux), index_labels(uy), w);
        }
        case ModelId::UniformSignHalves: {
            const auto xe = edges(model.x_support(), kx);
            std::vector<double> w(ux * 2);
            for (std::size_t i = 0; i < ux; ++i) {
                w[i * 2 + 0] = overlap(xe[i], xe[i + 1], 0.0, 0.5);
                w[i * 2 + 1] = overlap(xe[i], xe[i + 1], 0.5, 1.0);
            }
            return JointPmf::from_dense(index_labels(ux), {Label(-1), Label(1)}, w);
        }
        case ModelId::QuadraticLink: {
            const auto atoms = model.x_atoms();
            const auto ye = edges(model.y_support(), ky);
            std::vector<double> w(atoms.size() * uy);
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                const double lo = std::sqrt(static_cast<double>(i) / model.x_bins());
                const double hi = std::sqrt(static_cast<double>(i + 1) / model.x_bins());
                for (std::size_t j = 0; j < uy; ++j)
                    w[i * uy + j] = 0.5 * (overlap(ye[j], ye[j + 1], lo, hi) + overlap(ye[j], ye[j + 1], -hi, -lo));
            }
            return JointPmf::from_dense(index_labels(atoms.size()), index_labels(uy), w);
        }
    }
    throw std::logic_error("unknown model");
}

}  // namespace bpdep
