#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "bpdep/pmf.hpp"
#include "bpdep/pmf_ops.hpp"

namespace bpdep {

std::string to_string(Direction d) { return d == Direction::YonX ? "y-on-x" : "x-on-y"; }

std::string to_string(Method m) {
    switch (m) {
        case Method::ExactPmf: return "exact";
        case Method::Quadrature: return "quadrature";
        case Method::Binned: return "binned";
        case Method::Kde: return "kde";
    }
    return "unknown";
}

namespace {

void check_weight(double w) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidPmfError("pmf weights must be finite and nonnegative");
}

}  // namespace

MarginalPmf MarginalPmf::from_weights(std::span<const std::pair<Label, double>> weights) {
    std::map<Label, double> acc;
    for (const auto& [label, w] : weights) {
        check_weight(w);
        acc[label] += w;
    }
    double total = 0.0;
    for (const auto& [label, w] : acc) total += w;
    if (!(total > 0.0)) throw InvalidPmfError("pmf has zero total mass");
    std::vector<Label> labels;
    std::vector<double> probs;
    for (const auto& [label, w] : acc) {
        if (w == 0.0) continue;
        labels.push_back(label);
        probs.push_back(w / total);
    }
    return MarginalPmf(std::move(labels), std::move(probs));
}

MarginalPmf MarginalPmf::point_mass(Label l) { return MarginalPmf({std::move(l)}, {1.0}); }

MarginalPmf MarginalPmf::uniform(std::span<const Label> labels) {
    std::vector<std::pair<Label, double>> w;
    for (const auto& l : labels) w.emplace_back(l, 1.0);
    return from_weights(w);
}

double MarginalPmf::prob(const Label& l) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return 0.0;
    return probs_[static_cast<std::size_t>(it - labels_.begin())];
}

JointPmf JointPmf::from_entries(std::span<const Entry> entries) {
    std::set<Label> xs;
    std::set<Label> ys;
    for (const auto& e : entries) {
        check_weight(e.weight);
        xs.insert(e.x);
        ys.insert(e.y);
    }
    std::vector<Label> xv(xs.begin(), xs.end());
    std::vector<Label> yv(ys.begin(), ys.end());
    std::vector<double> dense(xv.size() * yv.size(), 0.0);
    for (const auto& e : entries) {
        const auto i = static_cast<std::size_t>(std::lower_bound(xv.begin(), xv.end(), e.x) - xv.begin());
        const auto j = static_cast<std::size_t>(std::lower_bound(yv.begin(), yv.end(), e.y) - yv.begin());
        dense[i * yv.size() + j] += e.weight;
    }
    return from_dense(std::move(xv), std::move(yv), dense);
}

JointPmf JointPmf::from_dense(std::vector<Label> xs, std::vector<Label> ys, std::span<const double> weights) {
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    if (weights.size() != nx * ny) throw InvalidPmfError("dense weight matrix has the wrong size");
    for (double w : weights) check_weight(w);

    // Sort both axes so iteration order (and hence every summation) is fixed.
    std::vector<std::size_t> ox(nx), oy(ny);
    for (std::size_t i = 0; i < nx; ++i) ox[i] = i;
    for (std::size_t j = 0; j < ny; ++j) oy[j] = j;
    std::sort(ox.begin(), ox.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
    std::sort(oy.begin(), oy.end(), [&](auto a, auto b) { return ys[a] < ys[b]; });
    for (std::size_t i = 1; i < nx; ++i)
        if (xs[ox[i]] == xs[ox[i - 1]]) throw InvalidPmfError("duplicate X label " + xs[ox[i]].to_string());
    for (std::size_t j = 1; j < ny; ++j)
        if (ys[oy[j]] == ys[oy[j - 1]]) throw InvalidPmfError("duplicate Y label " + ys[oy[j]].to_string());

    std::vector<double> row_w(nx, 0.0), col_w(ny, 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < nx; ++a) {
        for (std::size_t b = 0; b < ny; ++b) {
            const double w = weights[ox[a] * ny + oy[b]];
            row_w[a] += w;
            col_w[b] += w;
            total += w;
        }
    }
    if (!(total > 0.0)) throw InvalidPmfError("joint pmf has zero total mass");

    std::vector<std::size_t> keep_x, keep_y;
    for (std::size_t a = 0; a < nx; ++a)
        if (row_w[a] > 0.0) keep_x.push_back(a);
    for (std::size_t b = 0; b < ny; ++b)
        if (col_w[b] > 0.0) keep_y.push_back(b);

    JointPmf out;
    const std::size_t kx = keep_x.size();
    const std::size_t ky = keep_y.size();
    out.cells_.assign(kx * ky, 0.0);
    std::vector<double> px(kx, 0.0), py(ky, 0.0);
    for (std::size_t a = 0; a < kx; ++a) {
        for (std::size_t b = 0; b < ky; ++b) {
            const double p = weights[ox[keep_x[a]] * ny + oy[keep_y[b]]] / total;
            out.cells_[a * ky + b] = p;
            px[a] += p;
            py[b] += p;
        }
    }
    std::vector<Label> lx, ly;
    lx.reserve(kx);
    ly.reserve(ky);
    for (auto a : keep_x) lx.push_back(std::move(xs[ox[a]]));
    for (auto b : keep_y) ly.push_back(std::move(ys[oy[b]]));
    out.marginal_x_ = MarginalPmf(std::move(lx), std::move(px));
    out.marginal_y_ = MarginalPmf(std::move(ly), std::move(py));
    return out;
}

JointPmf JointPmf::product(const MarginalPmf& px, const MarginalPmf& py) {
    std::vector<double> w(px.size() * py.size());
    for (std::size_t i = 0; i < px.size(); ++i)
        for (std::size_t j = 0; j < py.size(); ++j) w[i * py.size() + j] = px.probabilities()[i] * py.probabilities()[j];
    return from_dense(px.labels(), py.labels(), w);
}

double JointPmf::prob(const Label& x, const Label& y) const {
    const auto& xs = x_labels();
    const auto& ys = y_labels();
    const auto ix = std::lower_bound(xs.begin(), xs.end(), x);
    const auto iy = std::lower_bound(ys.begin(), ys.end(), y);
    if (ix == xs.end() || *ix != x || iy == ys.end() || *iy != y) return 0.0;
    return at(static_cast<std::size_t>(ix - xs.begin()), static_cast<std::size_t>(iy - ys.begin()));
}

std::vector<JointPmf::Entry> JointPmf::entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            if (at(i, j) > 0.0) out.push_back({x_labels()[i], y_labels()[j], at(i, j)});
    return out;
}

// ---------------------------------------------------------------------------

MarginalPmf marginalize(const JointPmf& joint, Axis axis) {
    return axis == Axis::X ? joint.marginal_x() : joint.marginal_y();
}

JointPmf transpose(const JointPmf& joint) {
    const std::size_t r = joint.rows();
    const std::size_t c = joint.cols();
    std::vector<double> w(r * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) w[j * r + i] = joint.at(i, j);
    return JointPmf::from_dense(joint.y_labels(), joint.x_labels(), w);
}

double ud_discrete(const JointPmf& joint) {
    const auto& px = joint.marginal_x().probabilities();
    const auto& py = joint.marginal_y().probabilities();
    double ud = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i)
        for (std::size_t j = 0; j < joint.cols(); ++j) ud += std::abs(joint.at(i, j) - px[i] * py[j]);
    return ud;
}

double ud_sup_form(const JointPmf& joint) {
    const auto& px = joint.marginal_x().probabilities();
    const auto& py = joint.marginal_y().probabilities();
    double positive = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i) {
        for (std::size_t j = 0; j < joint.cols(); ++j) {
            const double d = joint.at(i, j) - px[i] * py[j];
            if (d > 0.0) positive += d;
        }
    }
    return 2.0 * positive;
}

double ud_self(const MarginalPmf& marginal) {
    if (marginal.size() <= 1) return 0.0;
    double sq = 0.0;
    for (double p : marginal.probabilities()) sq += p * p;
    return 2.0 * (1.0 - sq);
}

DepResult bp_dep(const JointPmf& joint, Direction direction) {
    DepResult r;
    r.method = Method::ExactPmf;
    r.direction = direction;
    r.ud = ud_discrete(joint);
    const MarginalPmf& target = direction == Direction::YonX ? joint.marginal_y() : joint.marginal_x();
    r.ud_max = ud_self(target);
    // Support size 1 is the a.s.-constant case; decided exactly, not by rounding.
    // The ratio is at most 1 exactly; clamp round-off of a few ulps.
    if (target.size() > 1) r.score = std::clamp(r.ud / r.ud_max, 0.0, 1.0);
    return r;
}

JointPmf apply_function_x(const JointPmf& joint, const std::function<Label(const Label&)>& f) {
    std::vector<JointPmf::Entry> mapped;
    mapped.reserve(joint.rows() * joint.cols());
    for (std::size_t i = 0; i < joint.rows(); ++i) {
        const Label fx = f(joint.x_labels()[i]);
        for (std::size_t j = 0; j < joint.cols(); ++j) mapped.push_back({fx, joint.y_labels()[j], joint.at(i, j)});
    }
    return JointPmf::from_entries(mapped);
}

namespace {

std::vector<Label> relabel_injective(const std::vector<Label>& labels, const std::function<Label(const Label&)>& f,
                                     const char* axis) {
    std::vector<Label> out;
    out.reserve(labels.size());
    std::set<Label> seen;
    for (const auto& l : labels) {
        Label m = f(l);
        if (!seen.insert(m).second)
            throw std::invalid_argument(std::string("permute_labels: mapping on ") + axis +
                                        " is not injective (image " + m.to_string() + " repeated)");
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

JointPmf permute_labels(const JointPmf& joint, const std::function<Label(const Label&)>& perm_x,
                        const std::function<Label(const Label&)>& perm_y) {
    auto xs = relabel_injective(joint.x_labels(), perm_x, "X");
    auto ys = relabel_injective(joint.y_labels(), perm_y, "Y");
    std::vector<double> w(joint.cells().begin(), joint.cells().end());
    return JointPmf::from_dense(std::move(xs), std::move(ys), w);
}

double max_cell_deviation(const JointPmf& joint) {
    const auto& px = joint.marginal_x().probabilities();
    const auto& py = joint.marginal_y().probabilities();
    double m = 0.0;
    for (std::size_t i = 0; i < joint.rows(); ++i)
        for (std::size_t j = 0; j < joint.cols(); ++j) m = std::max(m, std::abs(joint.at(i, j) - px[i] * py[j]));
    return m;
}

}  // namespace bpdep
