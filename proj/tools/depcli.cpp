#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "bpdep/cli/commands.hpp"

using namespace bpdep;
using namespace bpdep::cli;

int main(int argc, char** argv) {
    CLI::App app{"Bivariate dependency scores from samples, models and worked examples"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string kind_x = "auto", kind_y = "auto", method = "binned", direction = "both";
    std::string scale = "column-std", format = "json";

    app.add_option("--input", cfg.input, "CSV file with a header row");
    app.add_option("--x", cfg.x, "X column name or 0-based index");
    app.add_option("--y", cfg.y, "Y column name or 0-based index");
    app.add_option("--kind-x", kind_x, "discrete|continuous|auto");
    app.add_option("--kind-y", kind_y, "discrete|continuous|auto");
    app.add_option("--auto-threshold", cfg.auto_threshold, "max distinct numeric values for an auto-discrete column");
    app.add_option("--method", method, "binned|kde");
    app.add_option("--bins", cfg.bins, "bins per continuous axis");
    app.add_option("--bandwidth", cfg.bandwidth, "KDE bandwidth");
    app.add_option("--bandwidth-scale", scale, "column-std|absolute");
    app.add_option("--grid", cfg.grid, "KDE grid cells per axis");
    app.add_option("--direction", direction, "y-on-x|x-on-y|both");
    app.add_option("--seed", cfg.seed, "seed for every random draw");
    app.add_option("--format", format, "json|csv");
    app.add_option("--output", cfg.output, "write the report here instead of stdout");
    app.add_option("--generator", cfg.generator, "synthlab generator name");
    app.add_option("--config", cfg.generator_config, "generator spec file (key = value lines)");
    app.add_option("--n", cfg.n, "generator sample size");
    app.add_option("--sigma", cfg.sigma, "noise level for noisy-uniform");
    app.add_option("--values", cfg.values, "sweep grid, comma separated");
    app.add_option("--trials", cfg.trials, "fuzz trials per property");

    const std::map<std::string, Command> commands{{"compute", Command::Compute},
                                                  {"sweep", Command::Sweep},
                                                  {"properties", Command::Properties},
                                                  {"compare", Command::Compare},
                                                  {"demo", Command::Demo}};
    app.add_subcommand("compute", "dependency scores for two columns");
    app.add_subcommand("sweep", "score as a function of bins or bandwidth");
    app.add_subcommand("properties", "run the property checks");
    app.add_subcommand("compare", "BP score next to classical measures");
    app.add_subcommand("demo", "worked examples");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.command = commands.at(app.get_subcommands().front()->get_name());
        cfg.kind_x = kind_request_from_string(kind_x);
        cfg.kind_y = kind_request_from_string(kind_y);
        cfg.method = method_from_string(method);
        cfg.direction = direction_request_from_string(direction);
        if (scale == "column-std")
            cfg.bandwidth_scale = BandwidthScale::ColumnStd;
        else if (scale == "absolute")
            cfg.bandwidth_scale = BandwidthScale::Absolute;
        else
            throw UsageError("--bandwidth-scale must be column-std or absolute");
        if (format == "json")
            cfg.format = OutputFormat::Json;
        else if (format == "csv")
            cfg.format = OutputFormat::Csv;
        else
            throw UsageError("--format must be json or csv");
    } catch (const CliError& e) {
        std::cerr << "error[" << e.category() << "]: " << e.what() << '\n';
        return e.exit_code();
    }
    return run(cfg, std::cout, std::cerr);
}
