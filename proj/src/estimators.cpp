#include "bpdep/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <functional>

#include "bpdep/kernels.hpp"
#include "bpdep/normal.hpp"
#include "bpdep/pmf_ops.hpp"

namespace bpdep {

void BinningSpec::validate() const {
    if (bins_x < 1 || bins_y < 1) throw std::invalid_argument("bin counts must be at least 1");
}

namespace {

struct Coded {
    std::vector<Label> labels;
    std::vector<std::size_t> codes;
    std::vector<double> edges;
};

Coded code_column(const Column& col, int bins) {
    Coded out;
    out.codes.resize(col.size());
    if (col.kind() == ColumnKind::Discrete) {
        std::map<Label, std::size_t> index;
        for (const auto& l : col.labels()) index.emplace(l, 0);
        std::size_t k = 0;
        for (auto& [label, idx] : index) {
            idx = k++;
            out.labels.push_back(label);
        }
        for (std::size_t r = 0; r < col.size(); ++r) out.codes[r] = index.at(col.labels()[r]);
        return out;
    }
    const auto& v = col.values();
    const auto [mn_it, mx_it] = std::minmax_element(v.begin(), v.end());
    const double mn = *mn_it;
    const double mx = *mx_it;
    if (bins > 1 && !(mx > mn)) throw DegenerateColumnError(col.name());
    const double width = mx - mn;
    for (std::size_t r = 0; r < v.size(); ++r) {
        std::size_t b = 0;
        if (bins > 1) {
            const double pos = std::floor((v[r] - mn) * bins / width);
            b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
        }
        out.codes[r] = b;
    }
    for (int b = 0; b < bins; ++b) out.labels.emplace_back(std::int64_t{b});
    for (int e = 0; e <= bins; ++e) out.edges.push_back(bins > 1 ? mn + width * e / bins : (e == 0 ? mn : mx));
    return out;
}

}  // namespace

BinnedJoint bin_samples_with_edges(const SampleTable& samples, const BinningSpec& spec) {
    spec.validate();
    Coded cx = code_column(samples.x(), spec.bins_x);
    Coded cy = code_column(samples.y(), spec.bins_y);
    const std::size_t nx = cx.labels.size();
    const std::size_t ny = cy.labels.size();
    std::vector<double> counts(nx * ny, 0.0);
    for (std::size_t r = 0; r < samples.size(); ++r) counts[cx.codes[r] * ny + cy.codes[r]] += 1.0;
    return {JointPmf::from_dense(std::move(cx.labels), std::move(cy.labels), counts), std::move(cx.edges),
            std::move(cy.edges)};
}

JointPmf bin_samples(const SampleTable& samples, const BinningSpec& spec) {
    return bin_samples_with_edges(samples, spec).joint;
}

DepResult dep_binned(const SampleTable& samples, const BinningSpec& spec, Direction direction) {
    BinnedJoint b = bin_samples_with_edges(samples, spec);
    DepResult r = bp_dep(b.joint, direction);
    r.method = Method::Binned;
    const bool cx = samples.x().kind() == ColumnKind::Continuous;
    const bool cy = samples.y().kind() == ColumnKind::Continuous;
    r.parameters.emplace_back("n", static_cast<std::int64_t>(samples.size()));
    r.parameters.emplace_back("bins_x", cx ? std::int64_t{spec.bins_x} : static_cast<std::int64_t>(b.joint.rows()));
    r.parameters.emplace_back("bins_y", cy ? std::int64_t{spec.bins_y} : static_cast<std::int64_t>(b.joint.cols()));
    if (cx) r.parameters.emplace_back("x_edges", std::move(b.x_edges));
    if (cy) r.parameters.emplace_back("y_edges", std::move(b.y_edges));
    return r;
}

// ---------------------------------------------------------------------------

std::string to_string(BandwidthScale s) { return s == BandwidthScale::ColumnStd ? "column-std" : "absolute"; }

void KdeSpec::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw std::invalid_argument("KDE bandwidth must be positive");
    if (resolution < 64) throw std::invalid_argument("KDE grid resolution must be at least 64");
    if (!(extension >= 0.0)) throw std::invalid_argument("KDE grid extension must be nonnegative");
}

double KdeGrid::total_mass() const {
    double m = 0.0;
    for (double v : joint_mass) m += v;
    return m;
}

double kernel_width(const Column& column, const KdeSpec& spec) {
    if (spec.scale == BandwidthScale::Absolute) return spec.bandwidth;
    const auto& v = column.values();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    if (!(sd > 0.0)) throw DegenerateColumnError(column.name());
    return spec.bandwidth * sd;
}

namespace {

// Kernel mass beyond 8.5 widths is below 1e-16 and is not spread.
constexpr double kKernelReach = 8.5;

GridAxis make_grid(const std::vector<double>& v, double h, const KdeSpec& spec) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    GridAxis g;
    g.lo = *mn - spec.extension * h;
    const double hi = *mx + spec.extension * h;
    g.cells = spec.resolution;
    g.step = (hi - g.lo) / g.cells;
    return g;
}

std::vector<kernels::CellWeights> cell_weights(const std::vector<double>& v, double h, const GridAxis& g) {
    std::vector<kernels::CellWeights> out(v.size());
    for (std::size_t s = 0; s < v.size(); ++s) {
        const int first = std::max(0, static_cast<int>(std::floor((v[s] - kKernelReach * h - g.lo) / g.step)));
        const int last = std::min(g.cells - 1, static_cast<int>(std::floor((v[s] + kKernelReach * h - g.lo) / g.step)));
        auto& w = out[s];
        w.first = static_cast<std::size_t>(first);
        if (last < first) continue;
        w.mass.resize(static_cast<std::size_t>(last - first + 1));
        double prev = normal_cdf((g.edge(first) - v[s]) / h);
        for (int c = first; c <= last; ++c) {
            const double next = normal_cdf((g.edge(c + 1) - v[s]) / h);
            w.mass[static_cast<std::size_t>(c - first)] = next - prev;
            prev = next;
        }
    }
    return out;
}

std::vector<double> marginal_mass(const std::vector<kernels::CellWeights>& w, int cells, double scale) {
    std::vector<double> m(static_cast<std::size_t>(cells), 0.0);
    for (const auto& cw : w)
        for (std::size_t k = 0; k < cw.mass.size(); ++k) m[cw.first + k] += cw.mass[k];
    for (double& x : m) x *= scale;
    return m;
}

KdeGrid kde_impl(const SampleTable& samples, const KdeSpec& spec, bool parallel) {
    spec.validate();
    if (samples.x().kind() != ColumnKind::Continuous || samples.y().kind() != ColumnKind::Continuous)
        throw std::invalid_argument("kernel density estimation needs two continuous columns; bin mixed data instead");
    KdeGrid g;
    g.hx = kernel_width(samples.x(), spec);
    g.hy = kernel_width(samples.y(), spec);
    g.x = make_grid(samples.x().values(), g.hx, spec);
    g.y = make_grid(samples.y().values(), g.hy, spec);
    const auto wx = cell_weights(samples.x().values(), g.hx, g.x);
    const auto wy = cell_weights(samples.y().values(), g.hy, g.y);
    const double scale = 1.0 / static_cast<double>(samples.size());
    const auto nx = static_cast<std::size_t>(g.x.cells);
    const auto ny = static_cast<std::size_t>(g.y.cells);
    g.joint_mass = parallel ? kernels::accumulate_outer(wx, wy, nx, ny, scale)
                            : kernels::accumulate_outer_serial(wx, wy, nx, ny, scale);
    g.x_mass = marginal_mass(wx, g.x.cells, scale);
    g.y_mass = marginal_mass(wy, g.y.cells, scale);
    return g;
}

}  // namespace

KdeGrid kde_joint(const SampleTable& samples, const KdeSpec& spec) { return kde_impl(samples, spec, true); }

KdeGrid kde_joint_serial(const SampleTable& samples, const KdeSpec& spec) { return kde_impl(samples, spec, false); }

DepResult dep_kde(const SampleTable& samples, const KdeSpec& spec, Direction direction) {
    const KdeGrid g = kde_joint(samples, spec);
    DepResult r;
    r.method = Method::Kde;
    r.direction = direction;
    r.ud = kernels::abs_deviation(g.joint_mass, g.x_mass, g.y_mass);
    r.ud_max = 2.0;
    const double raw = r.ud / r.ud_max;
    r.score = std::clamp(raw, 0.0, 1.0);
    r.parameters = {
        {"n", static_cast<std::int64_t>(samples.size())},
        {"bandwidth", spec.bandwidth},
        {"bandwidth_scale", to_string(spec.scale)},
        {"kernel_width_x", g.hx},
        {"kernel_width_y", g.hy},
        {"grid", std::int64_t{spec.resolution}},
        {"grid_mass", g.total_mass()},
        {"clamped", std::int64_t{raw != *r.score ? 1 : 0}},
    };
    return r;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
void check_increasing(std::span<const T> values, const char* what) {
    if (values.empty()) throw std::invalid_argument(std::string("sweep needs at least one ") + what);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > T{0})) throw std::invalid_argument(std::string("sweep ") + what + " must be positive");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw std::invalid_argument(std::string("sweep ") + what + " must be strictly increasing");
    }
}

SweepPoint point_from(double parameter, const std::function<DepResult()>& run) {
    SweepPoint p{parameter, std::nullopt, {}};
    try {
        const DepResult r = run();
        if (r.score) p.score = r.score;
        else p.reason = "undefined: target variable is constant";
    } catch (const std::exception& e) {
        p.reason = e.what();
    }
    return p;
}

}  // namespace

SweepCurve sweep_bins(const SampleTable& samples, std::span<const int> counts, Direction direction,
                      std::uint64_t seed) {
    check_increasing(counts, "bin counts");
    SweepCurve c{"bins", std::vector<SweepPoint>(counts.size()), Method::Binned, direction, seed, samples.size()};
    const auto n = static_cast<std::ptrdiff_t>(counts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const int k = counts[static_cast<std::size_t>(i)];
        c.points[static_cast<std::size_t>(i)] =
            point_from(k, [&] { return dep_binned(samples, BinningSpec{k, k}, direction); });
    }
    return c;
}

SweepCurve sweep_bandwidth(const SampleTable& samples, std::span<const double> bandwidths, Direction direction,
                           const KdeSpec& base, std::uint64_t seed) {
    check_increasing(bandwidths, "bandwidths");
    SweepCurve c{"bandwidth", {}, Method::Kde, direction, seed, samples.size()};
    // Each point is already parallel inside the grid accumulation.
    for (double h : bandwidths) {
        KdeSpec s = base;
        s.bandwidth = h;
        c.points.push_back(point_from(h, [&] { return dep_kde(samples, s, direction); }));
    }
    return c;
}

std::vector<int> default_bin_counts() {
    std::vector<int> v;
    for (int k = 2; k <= 200; ++k) v.push_back(k);
    return v;
}

std::vector<double> default_bandwidths() {
    std::vector<double> v;
    constexpr int n = 50;
    for (int i = 0; i < n; ++i) v.push_back(std::pow(10.0, -3.0 + 4.0 * i / (n - 1)));
    return v;
}

}  // namespace bpdep
