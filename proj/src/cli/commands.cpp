#include "bpdep/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bpdep/baselines.hpp"
#include "bpdep/density_ref.hpp"
#include "bpdep/pmf_ops.hpp"
#include "bpdep/properties.hpp"
#include "bpdep/synthlab.hpp"

namespace bpdep::cli {

std::string to_string(Command c) {
    switch (c) {
        case Command::Compute: return "compute";
        case Command::Sweep: return "sweep";
        case Command::Properties: return "properties";
        case Command::Compare: return "compare";
        case Command::Demo: return "demo";
    }
    return "unknown";
}

std::string to_string(DirectionRequest d) {
    switch (d) {
        case DirectionRequest::YonX: return "y-on-x";
        case DirectionRequest::XonY: return "x-on-y";
        case DirectionRequest::Both: return "both";
    }
    return "unknown";
}

DirectionRequest direction_request_from_string(const std::string& s) {
    if (s == "y-on-x") return DirectionRequest::YonX;
    if (s == "x-on-y") return DirectionRequest::XonY;
    if (s == "both") return DirectionRequest::Both;
    throw UsageError("direction must be y-on-x, x-on-y or both, got '" + s + "'");
}

Method method_from_string(const std::string& s) {
    if (s == "binned") return Method::Binned;
    if (s == "kde") return Method::Kde;
    throw UsageError("method must be binned or kde, got '" + s + "'");
}

void RunConfig::validate() const {
    if (bins < 1) throw UsageError("--bins must be at least 1");
    if (!(bandwidth > 0.0)) throw UsageError("--bandwidth must be positive");
    if (grid < 64) throw UsageError("--grid must be at least 64");
    if (auto_threshold < 0) throw UsageError("--auto-threshold must be non-negative");
    if (n < 2) throw UsageError("--n must be at least 2");
    if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
    const bool needs_data = command == Command::Compute || command == Command::Sweep || command == Command::Compare;
    if (needs_data && !input && !generator && !generator_config)
        throw UsageError(to_string(command) + " needs --input or --generator");
    if (input && (generator || generator_config)) throw UsageError("--input and --generator are mutually exclusive");
}

namespace {

std::string kind_name(KindRequest k) {
    switch (k) {
        case KindRequest::Discrete: return "discrete";
        case KindRequest::Continuous: return "continuous";
        case KindRequest::Auto: return "auto";
    }
    return "unknown";
}

std::vector<Direction> directions(DirectionRequest d) {
    switch (d) {
        case DirectionRequest::YonX: return {Direction::YonX};
        case DirectionRequest::XonY: return {Direction::XonY};
        case DirectionRequest::Both: break;
    }
    return {Direction::YonX, Direction::XonY};
}

Report base_report(const RunConfig& c) {
    Report r;
    auto& cfg = r.config;
    cfg.emplace_back("command", to_string(c.command));
    if (c.input) cfg.emplace_back("input", *c.input);
    if (c.generator) cfg.emplace_back("generator", *c.generator);
    if (c.generator_config) cfg.emplace_back("generator_config", *c.generator_config);
    if (c.input) {
        cfg.emplace_back("x", c.x);
        cfg.emplace_back("y", c.y);
        cfg.emplace_back("kind_x", kind_name(c.kind_x));
        cfg.emplace_back("kind_y", kind_name(c.kind_y));
        cfg.emplace_back("auto_threshold", std::int64_t{c.auto_threshold});
    }
    cfg.emplace_back("method", to_string(c.method));
    cfg.emplace_back("bins", std::int64_t{c.bins});
    cfg.emplace_back("bandwidth", c.bandwidth);
    cfg.emplace_back("bandwidth_scale", to_string(c.bandwidth_scale));
    cfg.emplace_back("grid", std::int64_t{c.grid});
    cfg.emplace_back("direction", to_string(c.direction));
    cfg.emplace_back("seed", static_cast<std::int64_t>(c.seed));
    if (!c.input && !c.generator_config) {
        cfg.emplace_back("n", static_cast<std::int64_t>(c.n));
        cfg.emplace_back("sigma", c.sigma);
    }
    if (c.values) cfg.emplace_back("values", *c.values);
    if (c.command == Command::Properties) cfg.emplace_back("trials", static_cast<std::int64_t>(c.trials));
    return r;
}

GeneratorSpec default_mixture() {
    const std::vector<Label> ab{Label("a"), Label("b")};
    const std::vector<Label> abc{Label("a"), Label("b"), Label("c")};
    const std::vector<std::pair<Label, double>> skew{{Label("a"), 0.7}, {Label("b"), 0.2}, {Label("d"), 0.1}};
    return selection_mixture({0.2, 0.3, 0.5},
                             {MarginalPmf::uniform(ab), MarginalPmf::uniform(abc), MarginalPmf::from_weights(skew)}, 0);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GeneratorSpec generator_spec(const RunConfig& c) {
    GeneratorSpec spec;
    if (c.generator_config) {
        spec = parse_generator_spec(read_file(*c.generator_config));
    } else {
        const auto id = generator_from_string(*c.generator);
        if (!id) throw UsageError("unknown generator '" + *c.generator + "'");
        if (*id == GeneratorId::SelectionMixture) spec = default_mixture();
        spec.id = *id;
        spec.n = c.n;
        spec.sigma = c.sigma;
    }
    // One seed flag drives every random draw.
    spec.seed = c.seed;
    spec.validate();
    return spec;
}

/// A constant continuous column is a point mass: keep it as a single label so
/// the target-side score comes out Undefined instead of a binning error.
Column collapse_constant(Column col, std::vector<std::string>& warnings) {
    if (col.kind() != ColumnKind::Continuous) return col;
    const auto& v = col.values();
    if (std::any_of(v.begin(), v.end(), [&](double a) { return a != v.front(); })) return col;
    warnings.push_back("column '" + col.name() + "' is constant; treated as a single discrete value");
    std::vector<Label> labels(v.size(), Label(format_number(v.front())));
    return Column(col.name(), std::move(labels));
}

std::optional<double> reference_value(const GeneratorSpec& spec, Direction d) {
    std::optional<AnalyticModel> model;
    switch (spec.id) {
        case GeneratorId::NoisyUniform: model = AnalyticModel::uniform_plus_gaussian_noise(spec.sigma); break;
        case GeneratorId::IndependentUniform: model = AnalyticModel::independent_uniforms(); break;
        case GeneratorId::Example1: model = AnalyticModel::uniform_sign_halves(); break;
        default: return std::nullopt;
    }
    return bp_dep_model(*model, {}, d).score;
}

void kde_warnings(const DepResult& r, std::vector<std::string>& warnings) {
    for (const auto& [k, v] : r.parameters) {
        if (k == "clamped" && std::get<std::int64_t>(v) != 0)
            warnings.push_back("kde score for " + to_string(r.direction) + " clamped into [0, 1]");
        if (k == "grid_mass" && std::get<double>(v) < 0.999)
            warnings.push_back("kde grid holds only " + format_number(std::get<double>(v)) + " of the kernel mass");
    }
}

KdeSpec kde_spec(const RunConfig& c) {
    KdeSpec k;
    k.bandwidth = c.bandwidth;
    k.resolution = c.grid;
    k.scale = c.bandwidth_scale;
    return k;
}

void require_continuous(const SampleTable& s) {
    if (s.x().kind() != ColumnKind::Continuous || s.y().kind() != ColumnKind::Continuous)
        throw KindConflictError("kde needs two continuous columns; use --method binned for discrete data");
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
            throw UsageError("bad value '" + tok + "' in --values");
        if constexpr (std::is_integral_v<T>) {
            if (v != static_cast<double>(static_cast<T>(v))) throw UsageError("--values must be integers for bins");
        }
        out.push_back(static_cast<T>(v));
    }
    if (out.empty()) throw UsageError("--values is empty");
    return out;
}

}  // namespace

SampleTable load_samples(const RunConfig& config, std::vector<std::string>& warnings) {
    if (config.input) {
        const CsvTable table = read_csv_file(*config.input);
        Column x = resolve_column(table, config.x, config.kind_x, config.auto_threshold);
        Column y = resolve_column(table, config.y, config.kind_y, config.auto_threshold);
        return SampleTable(collapse_constant(std::move(x), warnings), collapse_constant(std::move(y), warnings));
    }
    const SampleTable s = sample(generator_spec(config));
    return SampleTable(collapse_constant(s.x(), warnings), collapse_constant(s.y(), warnings));
}

CommandOutcome cmd_compute(const RunConfig& config) {
    config.validate();
    CommandOutcome out{base_report(config)};
    const SampleTable samples = load_samples(config, out.report.warnings);
    if (config.method == Method::Kde) require_continuous(samples);
    for (Direction d : directions(config.direction)) {
        if (config.method == Method::Kde) {
            // A constant target has no spread to scale a kernel by.
            const Column& target = d == Direction::YonX ? samples.y() : samples.x();
            if (target.kind() == ColumnKind::Discrete) {
                DepResult r{std::nullopt, 0.0, 0.0, Method::Kde, d, {}};
                out.report.results.push_back(DepEntry{"bp", r});
                continue;
            }
            DepResult r = dep_kde(samples, kde_spec(config), d);
            kde_warnings(r, out.report.warnings);
            out.report.results.push_back(DepEntry{"bp", std::move(r)});
        } else {
            out.report.results.push_back(DepEntry{"bp", dep_binned(samples, {config.bins, config.bins}, d)});
        }
    }
    return out;
}

CommandOutcome cmd_sweep(const RunConfig& config) {
    config.validate();
    CommandOutcome out{base_report(config)};
    const SampleTable samples = load_samples(config, out.report.warnings);
    std::optional<GeneratorSpec> gen;
    if (!config.input) gen = generator_spec(config);
    for (Direction d : directions(config.direction)) {
        SweepEntry entry;
        if (config.method == Method::Kde) {
            require_continuous(samples);
            const auto grid = config.values ? parse_list<double>(*config.values) : default_bandwidths();
            entry.curve = sweep_bandwidth(samples, grid, d, kde_spec(config), config.seed);
        } else {
            const auto grid = config.values ? parse_list<int>(*config.values) : default_bin_counts();
            entry.curve = sweep_bins(samples, grid, d, config.seed);
        }
        if (gen) entry.reference = reference_value(*gen, d);
        for (const auto& p : entry.curve.points)
            if (!p.score && !p.reason.empty())
                out.report.warnings.push_back("no score at " + entry.curve.parameter_name + "=" +
                                              format_number(p.parameter) + ": " + p.reason);
        out.report.results.push_back(std::move(entry));
    }
    return out;
}

CommandOutcome cmd_properties(const RunConfig& config) {
    CommandOutcome out{base_report(config)};
    PropertySuiteConfig suite;
    suite.seed = config.seed;
    suite.fuzz_trials = config.trials;
    for (auto& check : run_property_suite(suite)) {
        out.ok = out.ok && check.passed;
        out.report.results.push_back(std::move(check));
    }
    return out;
}

CommandOutcome cmd_compare(const RunConfig& config) {
    config.validate();
    CommandOutcome out{base_report(config)};
    auto& w = out.report.warnings;
    const SampleTable samples = load_samples(config, w);
    const BinningSpec bins{config.bins, config.bins};
    const JointPmf joint = bin_samples(samples, bins);
    const auto dirs = directions(config.direction);

    for (Direction d : dirs) out.report.results.push_back(DepEntry{"bp", dep_binned(samples, bins, d)});
    for (Measure m : {Measure::Pearson, Measure::Spearman}) {
        BaselineScore s{m, 0.0, false};
        try {
            s = m == Measure::Pearson ? pearson(samples) : spearman(samples);
        } catch (const std::invalid_argument&) {
            w.push_back(to_string(m) + " needs numeric columns");
        }
        out.report.results.push_back(BaselineEntry{s, std::nullopt});
    }
    out.report.results.push_back(BaselineEntry{mutual_information(joint), std::nullopt});
    for (Direction d : dirs) out.report.results.push_back(BaselineEntry{uncertainty_coefficient(joint, d), d});
    return out;
}

CommandOutcome cmd_demo(const RunConfig& config) {
    CommandOutcome out{base_report(config)};
    auto& res = out.report.results;
    const auto dirs = directions(config.direction);

    for (Direction d : dirs) res.push_back(DepEntry{"example1", bp_dep_model(AnalyticModel::uniform_sign_halves(), {}, d)});
    for (Direction d : dirs) res.push_back(DepEntry{"example2", bp_dep(exact_pmf(GeneratorSpec{.id = GeneratorId::Example2}), d)});
    for (Direction d : dirs) res.push_back(DepEntry{"example3", bp_dep(exact_pmf(GeneratorSpec{.id = GeneratorId::Example3}), d)});

    GeneratorSpec mix = default_mixture();
    for (std::size_t i = 0; i < mix.components.size(); ++i) {
        mix.target = i;
        res.push_back(DepEntry{"mixture-target-" + std::to_string(i), bp_dep(exact_pmf(mix), Direction::YonX)});
    }

    for (Direction d : dirs)
        res.push_back(DepEntry{"noisy-uniform-oracle",
                               bp_dep_model(AnalyticModel::uniform_plus_gaussian_noise(config.sigma), {}, d)});

    GeneratorSpec quad{.id = GeneratorId::QuadraticLink, .n = config.n, .seed = config.seed};
    const SampleTable qs = sample(quad);
    res.push_back(BaselineEntry{pearson(qs), std::nullopt});
    for (Direction d : dirs) res.push_back(DepEntry{"quadratic-link-binned", dep_binned(qs, {config.bins, config.bins}, d)});
    return out;
}

CommandOutcome execute(const RunConfig& config) {
    switch (config.command) {
        case Command::Compute: return cmd_compute(config);
        case Command::Sweep: return cmd_sweep(config);
        case Command::Properties: return cmd_properties(config);
        case Command::Compare: return cmd_compare(config);
        case Command::Demo: return cmd_demo(config);
    }
    throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const CommandOutcome result = execute(config);
        const std::string text =
            config.format == OutputFormat::Json ? render_json(result.report) : render_csv(result.report);
        if (config.format == OutputFormat::Csv)
            for (const auto& w : result.report.warnings) err << "warning: " << w << '\n';
        if (config.output) {
            std::ofstream f(*config.output);
            if (!f) throw MissingFileError(*config.output);
            f << text;
        } else {
            out << text;
        }
        return result.ok ? 0 : 1;
    } catch (const CliError& e) {
        err << "error[" << e.category() << "]: " << e.what() << '\n';
        return e.exit_code();
    } catch (const DegenerateColumnError& e) {
        err << "error[degenerate-column]: " << e.what() << '\n';
        return 7;
    } catch (const QuadratureDivergenceError& e) {
        err << "error[quadrature-divergence]: " << e.what() << '\n';
        return 8;
    } catch (const std::exception& e) {
        err << "error[invalid-input]: " << e.what() << '\n';
        return 9;
    }
}

}  // namespace bpdep::cli
