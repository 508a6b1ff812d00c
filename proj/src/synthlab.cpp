#include "bpdep/synthlab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bpdep/rng.hpp"

namespace bpdep {

namespace {

struct NamedId {
    GeneratorId id;
    const char* name;
};

constexpr NamedId kNames[] = {
    {GeneratorId::Example1, "example1"},
    {GeneratorId::Example2, "example2"},
    {GeneratorId::Example3, "example3"},
    {GeneratorId::SelectionMixture, "selection-mixture"},
    {GeneratorId::NoisyUniform, "noisy-uniform"},
    {GeneratorId::IndependentPair, "independent-pair"},
    {GeneratorId::IndependentUniform, "independent-uniform"},
    {GeneratorId::RandomJoint, "random-joint"},
    {GeneratorId::QuadraticLink, "quadratic-link"},
};

const std::vector<Label>& example3_x() {
    static const std::vector<Label> xs{Label("∘"), Label("△"), Label("□"), Label("◊")};
    return xs;
}

// Y' = club for circle and square, spade for triangle and lozenge.
Label example3_y(std::size_t x_index) { return x_index % 2 == 0 ? Label("♣") : Label("♠"); }

Label draw(const MarginalPmf& pmf, CounterRng& rng) {
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        cum += pmf.probabilities()[k];
        if (u < cum) return pmf.labels()[k];
    }
    return pmf.labels().back();
}

std::size_t draw_index(std::span<const double> probs, CounterRng& rng) {
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) return k;
    }
    return probs.size() - 1;
}

std::vector<double> random_cell_weights(const GeneratorSpec& spec, CounterRng& rng) {
    std::vector<double> w(static_cast<std::size_t>(spec.rows) * static_cast<std::size_t>(spec.cols));
    for (double& v : w) v = rng.uniform();
    return w;
}

std::vector<Label> range_labels(int n) {
    std::vector<Label> l;
    for (int i = 0; i < n; ++i) l.emplace_back(i);
    return l;
}

}  // namespace

std::string to_string(GeneratorId id) {
    for (const auto& n : kNames)
        if (n.id == id) return n.name;
    return "unknown";
}

std::optional<GeneratorId> generator_from_string(std::string_view name) {
    for (const auto& n : kNames)
        if (name == n.name) return n.id;
    return std::nullopt;
}

bool is_discrete(GeneratorId id) {
    switch (id) {
        case GeneratorId::Example2:
        case GeneratorId::Example3:
        case GeneratorId::SelectionMixture:
        case GeneratorId::IndependentPair:
        case GeneratorId::RandomJoint:
            return true;
        default:
            return false;
    }
}

void GeneratorSpec::validate() const {
    if (n < 2) throw std::invalid_argument("generator needs n >= 2");
    if (id == GeneratorId::NoisyUniform && !(sigma > 0.0 && std::isfinite(sigma)))
        throw std::invalid_argument("noisy-uniform needs sigma > 0");
    if ((id == GeneratorId::IndependentPair || id == GeneratorId::RandomJoint) && (rows < 1 || cols < 1))
        throw std::invalid_argument("support sizes must be positive");
    if (id == GeneratorId::SelectionMixture) {
        if (mixture_weights.empty() || mixture_weights.size() != components.size())
            throw std::invalid_argument("selection mixture needs one weight per component");
        double total = 0.0;
        for (double p : mixture_weights) {
            if (!(p >= 0.0)) throw std::invalid_argument("selection probabilities must be nonnegative");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("selection probabilities must sum to 1");
        if (target >= components.size()) throw std::invalid_argument("selection mixture target out of range");
        for (const auto& c : components)
            if (c.size() == 0) throw std::invalid_argument("selection mixture component is empty");
    }
}

GeneratorSpec selection_mixture(std::vector<double> weights, std::vector<MarginalPmf> components, std::size_t target) {
    GeneratorSpec s;
    s.id = GeneratorId::SelectionMixture;
    s.mixture_weights = std::move(weights);
    s.components = std::move(components);
    s.target = target;
    s.validate();
    return s;
}

JointPmf exact_pmf(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.id) {
        case GeneratorId::Example2: {
            std::vector<JointPmf::Entry> e;
            for (int x = 1; x <= 4; ++x) e.push_back({x, x % 2, 0.25});
            return JointPmf::from_entries(e);
        }
        case GeneratorId::Example3: {
            std::vector<JointPmf::Entry> e;
            for (std::size_t i = 0; i < 4; ++i) e.push_back({example3_x()[i], example3_y(i), 0.25});
            return JointPmf::from_entries(e);
        }
        case GeneratorId::IndependentPair: {
            const auto xs = range_labels(spec.rows);
            const auto ys = range_labels(spec.cols);
            return JointPmf::product(MarginalPmf::uniform(xs), MarginalPmf::uniform(ys));
        }
        case GeneratorId::RandomJoint: {
            CounterRng rng(spec.seed);
            const auto w = random_cell_weights(spec, rng);
            return JointPmf::from_dense(range_labels(spec.rows), range_labels(spec.cols), w);
        }
        case GeneratorId::SelectionMixture: {
            // P(X=x, Y_i=y) = p_i 1[x=y] P_i(y) + sum_{j != i} p_j P_j(x) P_i(y)
            const std::size_t i = spec.target;
            const MarginalPmf& yi = spec.components[i];
            std::set<Label> xs;
            for (const auto& c : spec.components)
                for (const auto& l : c.labels()) xs.insert(l);
            std::vector<JointPmf::Entry> e;
            for (const auto& x : xs) {
                double other = 0.0;
                for (std::size_t j = 0; j < spec.components.size(); ++j)
                    if (j != i) other += spec.mixture_weights[j] * spec.components[j].prob(x);
                for (std::size_t k = 0; k < yi.size(); ++k) {
                    const Label& y = yi.labels()[k];
                    const double py = yi.probabilities()[k];
                    double p = other * py;
                    if (x == y) p += spec.mixture_weights[i] * py;
                    e.push_back({x, y, p});
                }
            }
            return JointPmf::from_entries(e);
        }
        default:
            throw std::invalid_argument("generator '" + to_string(spec.id) + "' is continuous; it has no exact pmf");
    }
}

SampleTable sample(const GeneratorSpec& spec) {
    spec.validate();
    CounterRng rng(spec.seed);
    const std::size_t n = spec.n;
    switch (spec.id) {
        case GeneratorId::Example1: {
            std::vector<double> x(n);
            std::vector<Label> y(n);
            for (std::size_t r = 0; r < n; ++r) {
                x[r] = rng.uniform();
                y[r] = x[r] <= 0.5 ? Label(-1) : Label(1);
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::Example2:
        case GeneratorId::Example3: {
            const bool symbols = spec.id == GeneratorId::Example3;
            std::vector<Label> x(n), y(n);
            for (std::size_t r = 0; r < n; ++r) {
                const auto k = rng.below(4);
                if (symbols) {
                    x[r] = example3_x()[k];
                    y[r] = example3_y(k);
                } else {
                    const auto v = static_cast<std::int64_t>(k + 1);
                    x[r] = v;
                    y[r] = v % 2;
                }
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::SelectionMixture: {
            std::vector<Label> x(n), y(n);
            std::vector<Label> draws(spec.components.size());
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t s = draw_index(spec.mixture_weights, rng);
                for (std::size_t j = 0; j < spec.components.size(); ++j) draws[j] = draw(spec.components[j], rng);
                x[r] = draws[s];
                y[r] = draws[spec.target];
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::NoisyUniform: {
            std::vector<double> x(n), y(n);
            for (std::size_t r = 0; r < n; ++r) {
                x[r] = rng.uniform();
                y[r] = x[r] + spec.sigma * rng.normal();
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::IndependentUniform: {
            std::vector<double> x(n), y(n);
            for (std::size_t r = 0; r < n; ++r) {
                x[r] = rng.uniform();
                y[r] = rng.uniform();
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::IndependentPair: {
            std::vector<Label> x(n), y(n);
            for (std::size_t r = 0; r < n; ++r) {
                x[r] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(spec.rows)));
                y[r] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(spec.cols)));
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::RandomJoint: {
            const JointPmf joint = exact_pmf(spec);
            CounterRng draws(spec.seed, static_cast<std::uint64_t>(spec.rows) * static_cast<std::uint64_t>(spec.cols));
            std::vector<Label> x(n), y(n);
            const auto cells = joint.cells();
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t k = draw_index(cells, draws);
                x[r] = joint.x_labels()[k / joint.cols()];
                y[r] = joint.y_labels()[k % joint.cols()];
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
        case GeneratorId::QuadraticLink: {
            std::vector<double> x(n), y(n);
            for (std::size_t r = 0; r < n; ++r) {
                y[r] = -1.0 + 2.0 * rng.uniform();
                x[r] = y[r] * y[r];
            }
            return {Column("x", std::move(x)), Column("y", std::move(y))};
        }
    }
    throw std::logic_error("unknown generator");
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("bad number for '" + key + "': " + s);
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument("bad integer for '" + key + "': " + s);
    return v;
}

Label parse_label(const std::string& s) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && p == s.data() + s.size()) return v;
    return s;
}

}  // namespace

std::string serialize(const GeneratorSpec& spec) {
    std::ostringstream os;
    os << "id = " << to_string(spec.id) << '\n';
    os << "n = " << spec.n << '\n';
    os << "seed = " << spec.seed << '\n';
    switch (spec.id) {
        case GeneratorId::NoisyUniform:
            os << "sigma = " << fmt_double(spec.sigma) << '\n';
            break;
        case GeneratorId::IndependentPair:
        case GeneratorId::RandomJoint:
            os << "rows = " << spec.rows << '\n' << "cols = " << spec.cols << '\n';
            break;
        case GeneratorId::SelectionMixture: {
            os << "weights = ";
            for (std::size_t i = 0; i < spec.mixture_weights.size(); ++i)
                os << (i ? "," : "") << fmt_double(spec.mixture_weights[i]);
            os << '\n';
            for (const auto& c : spec.components) {
                os << "component = ";
                for (std::size_t k = 0; k < c.size(); ++k)
                    os << (k ? "," : "") << c.labels()[k].to_string() << ':' << fmt_double(c.probabilities()[k]);
                os << '\n';
            }
            os << "target = " << spec.target << '\n';
            break;
        }
        default:
            break;
    }
    return os.str();
}

GeneratorSpec parse_generator_spec(std::string_view text) {
    GeneratorSpec spec;
    bool have_id = false;
    std::size_t line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("generator config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "id") {
            const auto id = generator_from_string(value);
            if (!id) throw std::invalid_argument("unknown generator '" + value + "'");
            spec.id = *id;
            have_id = true;
        } else if (key == "n") {
            spec.n = parse_u64(value, key);
        } else if (key == "seed") {
            spec.seed = parse_u64(value, key);
        } else if (key == "sigma") {
            spec.sigma = parse_double(value, key);
        } else if (key == "rows") {
            spec.rows = static_cast<int>(parse_u64(value, key));
        } else if (key == "cols") {
            spec.cols = static_cast<int>(parse_u64(value, key));
        } else if (key == "target") {
            spec.target = parse_u64(value, key);
        } else if (key == "weights") {
            spec.mixture_weights.clear();
            for (const auto& w : split(value, ',')) spec.mixture_weights.push_back(parse_double(w, key));
        } else if (key == "component") {
            std::vector<std::pair<Label, double>> w;
            for (const auto& item : split(value, ',')) {
                const auto colon = item.rfind(':');
                if (colon == std::string::npos) throw std::invalid_argument("component entry needs label:probability");
                w.emplace_back(parse_label(trim(std::string_view(item).substr(0, colon))),
                               parse_double(trim(std::string_view(item).substr(colon + 1)), key));
            }
            spec.components.push_back(MarginalPmf::from_weights(w));
        } else {
            throw std::invalid_argument("unknown generator config key '" + key + "'");
        }
    }
    if (!have_id) throw std::invalid_argument("generator config has no id");
    spec.validate();
    return spec;
}

}  // namespace bpdep
