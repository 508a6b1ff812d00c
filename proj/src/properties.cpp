#include "bpdep/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "bpdep/density_ref.hpp"
#include "bpdep/estimators.hpp"
#include "bpdep/pmf_ops.hpp"
#include "bpdep/synthlab.hpp"

namespace bpdep {

namespace fuzz {

JointPmf random_joint(CounterRng& rng, int rows, int cols) {
    const auto r = static_cast<std::size_t>(rows);
    const auto c = static_cast<std::size_t>(cols);
    std::vector<double> w(r * c);
    for (double& v : w) v = rng.uniform() < 0.25 ? 0.0 : rng.uniform();
    // Keep every row and column populated so the support stays rows x cols.
    for (std::size_t i = 0; i < r; ++i) w[i * c + (i % c)] += rng.uniform() + 0.01;
    for (std::size_t j = 0; j < c; ++j) w[(j % r) * c + j] += rng.uniform() + 0.01;
    std::vector<Label> xs, ys;
    for (int i = 0; i < rows; ++i) xs.emplace_back(i);
    for (int j = 0; j < cols; ++j) ys.emplace_back(j);
    return JointPmf::from_dense(xs, ys, w);
}

JointPmf random_functional_joint(CounterRng& rng, int rows, int cols) {
    std::vector<JointPmf::Entry> e;
    for (int i = 0; i < rows; ++i) {
        // First `cols` rows cover every image so Y really has `cols` values.
        const auto y = i < cols ? static_cast<std::int64_t>(i) : static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cols)));
        e.push_back({i, y, rng.uniform() + 0.01});
    }
    return JointPmf::from_entries(e);
}

MarginalPmf random_marginal(CounterRng& rng, int size) {
    std::vector<std::pair<Label, double>> w;
    for (int i = 0; i < size; ++i) w.emplace_back(i, rng.uniform() + 0.01);
    return MarginalPmf::from_weights(w);
}

std::vector<std::pair<Label, Label>> random_relabeling(CounterRng& rng, const std::vector<Label>& labels) {
    std::vector<std::size_t> perm(labels.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        out.emplace_back(labels[i], Label("v" + std::to_string(perm[i] * 7 + 3)));
    return out;
}

}  // namespace fuzz

namespace {

constexpr double kTol = 1e-12;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int random_size(CounterRng& rng, int max_support) {
    return 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_support - 1)));
}

std::function<Label(const Label&)> lookup(const std::vector<std::pair<Label, Label>>& table) {
    std::map<Label, Label> m(table.begin(), table.end());
    return [m](const Label& l) { return m.at(l); };
}

PropertyCheck asymmetry() {
    PropertyCheck c{"II.1", "asymmetry", false, 2, 0, {}};
    const auto model = AnalyticModel::uniform_sign_halves();
    const double y_on_x = *bp_dep_model(model, {}, Direction::YonX).score;
    const double x_on_y = *bp_dep_model(model, {}, Direction::XonY).score;
    const JointPmf ex2 = exact_pmf(GeneratorSpec{.id = GeneratorId::Example2});
    const double e2_y = *bp_dep(ex2, Direction::YonX).score;
    const double e2_x = *bp_dep(ex2, Direction::XonY).score;
    if (!(std::abs(y_on_x - 1.0) < 1e-6 && std::abs(x_on_y - 0.5) < 1e-6)) ++c.violations;
    if (!(std::abs(e2_y - 1.0) < kTol && std::abs(e2_x - 2.0 / 3.0) < kTol)) ++c.violations;
    c.passed = c.violations == 0;
    c.witness = "example 1: Dep(X|Y)=" + num(y_on_x) + " vs Dep(Y|X)=" + num(x_on_y) + "; example 2: " + num(e2_y) +
                " vs " + num(e2_x);
    return c;
}

PropertyCheck range(const PropertySuiteConfig& cfg, CounterRng& rng) {
    PropertyCheck c{"II.2", "range [0,1]", false, cfg.fuzz_trials, 0, {}};
    double lo = 1.0, hi = 0.0;
    for (std::size_t t = 0; t < cfg.fuzz_trials; ++t) {
        const JointPmf j = fuzz::random_joint(rng, random_size(rng, cfg.max_support), random_size(rng, cfg.max_support));
        for (Direction d : {Direction::YonX, Direction::XonY}) {
            const double s = *bp_dep(j, d).score;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            if (!(s >= 0.0 && s <= 1.0 + kTol)) ++c.violations;
        }
    }
    c.passed = c.violations == 0;
    c.witness = "scores spanned [" + num(lo) + ", " + num(hi) + "] over " + std::to_string(2 * cfg.fuzz_trials) + " evaluations";
    return c;
}

PropertyCheck independence(const PropertySuiteConfig& cfg, CounterRng& rng) {
    PropertyCheck c{"II.3", "zero iff independent", false, 2 * cfg.fuzz_trials, 0, {}};
    double worst_product = 0.0;
    for (std::size_t t = 0; t < cfg.fuzz_trials; ++t) {
        const int r = random_size(rng, cfg.max_support);
        const int k = random_size(rng, cfg.max_support);
        const JointPmf prod = JointPmf::product(fuzz::random_marginal(rng, r), fuzz::random_marginal(rng, k));
        const JointPmf dep = fuzz::random_joint(rng, r, k);
        for (const JointPmf* j : {&prod, &dep}) {
            const bool zero = ud_discrete(*j) <= kTol;
            const bool indep = max_cell_deviation(*j) <= kTol;
            if (zero != indep) ++c.violations;
        }
        worst_product = std::max(worst_product, ud_discrete(prod));
        if (!(*bp_dep(prod).score <= kTol)) ++c.violations;
    }
    c.passed = c.violations == 0;
    c.witness = "largest UD on a product pmf " + num(worst_product);
    return c;
}

PropertyCheck functional(const PropertySuiteConfig& cfg, CounterRng& rng) {
    PropertyCheck c{"II.4", "functional dependence gives 1", false, cfg.fuzz_trials, 0, {}};
    double worst = 0.0;
    for (std::size_t t = 0; t < cfg.fuzz_trials; ++t) {
        const int r = random_size(rng, cfg.max_support);
        const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(r - 1)));
        const double s = *bp_dep(fuzz::random_functional_joint(rng, r, k)).score;
        worst = std::max(worst, std::abs(s - 1.0));
        if (std::abs(s - 1.0) > kTol) ++c.violations;
    }
    c.passed = c.violations == 0;
    c.witness = "largest |score - 1| for Y = f(X): " + num(worst);
    return c;
}

PropertyCheck unambiguity(CounterRng& rng) {
    PropertyCheck c{"II.5", "unambiguity (selection mixture)", false, 3, 0, {}};
    const std::vector<double> p{0.2, 0.3, 0.5};
    std::vector<MarginalPmf> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(fuzz::random_marginal(rng, 4));
    c.witness = "p=(0.2,0.3,0.5) scores=(";
    for (std::size_t i = 0; i < 3; ++i) {
        const double s = *bp_dep(exact_pmf(selection_mixture(p, comps, i))).score;
        if (std::abs(s - p[i]) > kTol) ++c.violations;
        c.witness += (i ? "," : "") + num(s);
    }
    c.witness += ")";
    c.passed = c.violations == 0;
    return c;
}

PropertyCheck applicability(std::uint64_t seed) {
    PropertyCheck c{"II.6", "general applicability", false, 0, 0, {}};
    auto record = [&](const std::string& tag, const DepResult& r) {
        ++c.trials;
        const bool ok = r.score && std::isfinite(*r.score) && *r.score >= 0.0 && *r.score <= 1.0 + kTol;
        if (!ok) ++c.violations;
        c.witness += (c.witness.empty() ? "" : "; ") + tag + "=" + (r.score ? num(*r.score) : std::string("undefined"));
    };
    record("discrete/discrete exact", bp_dep(exact_pmf(GeneratorSpec{.id = GeneratorId::Example2})));
    record("continuous/discrete model", bp_dep_model(AnalyticModel::uniform_sign_halves()));
    record("discrete/continuous model", bp_dep_model(AnalyticModel::quadratic_link(8)));
    record("continuous/continuous model", bp_dep_model(AnalyticModel::uniform_plus_gaussian_noise(0.1)));

    const SampleTable ex1 = sample(GeneratorSpec{.id = GeneratorId::Example1, .n = 2000, .seed = seed});
    record("continuous/discrete binned", dep_binned(ex1, {16, 16}));
    record("discrete/continuous binned", dep_binned(ex1.swapped(), {16, 16}));
    const SampleTable noisy = sample(GeneratorSpec{.id = GeneratorId::NoisyUniform, .n = 2000, .seed = seed});
    record("continuous/continuous binned", dep_binned(noisy, {16, 16}));
    record("continuous/continuous kde", dep_kde(noisy, KdeSpec{.bandwidth = 0.1, .resolution = 128}));
    c.passed = c.violations == 0;
    return c;
}

PropertyCheck isomorphism(const PropertySuiteConfig& cfg, CounterRng& rng) {
    PropertyCheck c{"II.7", "invariance under isomorphisms", false, cfg.fuzz_trials + 1, 0, {}};
    double worst = 0.0;
    for (std::size_t t = 0; t < cfg.fuzz_trials; ++t) {
        const JointPmf j = fuzz::random_joint(rng, random_size(rng, cfg.max_support), random_size(rng, cfg.max_support));
        const JointPmf p = permute_labels(j, lookup(fuzz::random_relabeling(rng, j.x_labels())),
                                          lookup(fuzz::random_relabeling(rng, j.y_labels())));
        for (Direction d : {Direction::YonX, Direction::XonY}) {
            const double diff = std::abs(*bp_dep(j, d).score - *bp_dep(p, d).score);
            worst = std::max(worst, diff);
            if (diff > kTol) ++c.violations;
        }
    }
    const JointPmf e2 = exact_pmf(GeneratorSpec{.id = GeneratorId::Example2});
    const JointPmf e3 = exact_pmf(GeneratorSpec{.id = GeneratorId::Example3});
    for (Direction d : {Direction::YonX, Direction::XonY})
        if (std::abs(*bp_dep(e2, d).score - *bp_dep(e3, d).score) > kTol) ++c.violations;
    c.passed = c.violations == 0;
    c.witness = "largest score change under relabeling " + num(worst) + "; example 2 and example 3 agree";
    return c;
}

PropertyCheck data_processing(const PropertySuiteConfig& cfg, CounterRng& rng) {
    PropertyCheck c{"II.8", "non-increasing under functions of X", false, cfg.fuzz_trials, 0, {}};
    double worst = -1.0;
    for (std::size_t t = 0; t < cfg.fuzz_trials; ++t) {
        const int r = random_size(rng, cfg.max_support);
        const JointPmf j = fuzz::random_joint(rng, r, random_size(rng, cfg.max_support));
        const auto images = 1 + rng.below(static_cast<std::uint64_t>(r));
        std::vector<std::pair<Label, Label>> f;
        for (const auto& l : j.x_labels()) f.emplace_back(l, static_cast<std::int64_t>(rng.below(images)));
        const double before = *bp_dep(j).score;
        const double after = *bp_dep(apply_function_x(j, lookup(f))).score;
        worst = std::max(worst, after - before);
        if (after > before + kTol) ++c.violations;
    }
    c.passed = c.violations == 0;
    c.witness = "largest increase after mapping X " + num(worst);
    return c;
}

}  // namespace

std::vector<PropertyCheck> run_property_suite(const PropertySuiteConfig& config) {
    if (config.max_support < 2) throw std::invalid_argument("property fuzzing needs max_support >= 2");
    CounterRng rng(config.seed);
    std::vector<PropertyCheck> out;
    out.push_back(asymmetry());
    out.push_back(range(config, rng));
    out.push_back(independence(config, rng));
    out.push_back(functional(config, rng));
    out.push_back(unambiguity(rng));
    out.push_back(applicability(config.seed));
    out.push_back(isomorphism(config, rng));
    out.push_back(data_processing(config, rng));
    return out;
}

}  // namespace bpdep
