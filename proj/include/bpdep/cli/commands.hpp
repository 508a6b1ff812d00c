#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpdep/cli/csv.hpp"
#include "bpdep/cli/report.hpp"
#include "bpdep/estimators.hpp"

namespace bpdep::cli {

enum class Command { Compute, Sweep, Properties, Compare, Demo };
enum class DirectionRequest { YonX, XonY, Both };
enum class OutputFormat { Json, Csv };

std::string to_string(Command c);
std::string to_string(DirectionRequest d);
DirectionRequest direction_request_from_string(const std::string& s);
Method method_from_string(const std::string& s);  // binned | kde

struct RunConfig {
    Command command = Command::Compute;
    std::optional<std::string> input;
    std::optional<std::string> generator;         // synthlab id
    std::optional<std::string> generator_config;  // key = value file; overrides --generator
    std::string x = "0";
    std::string y = "1";
    KindRequest kind_x = KindRequest::Auto;
    KindRequest kind_y = KindRequest::Auto;
    int auto_threshold = 20;
    Method method = Method::Binned;
    int bins = 20;
    double bandwidth = 0.1;
    BandwidthScale bandwidth_scale = BandwidthScale::ColumnStd;
    int grid = 256;
    DirectionRequest direction = DirectionRequest::Both;
    std::uint64_t seed = 42;
    std::size_t n = 5000;
    double sigma = 0.1;
    std::optional<std::string> values;  // sweep grid, comma separated
    std::size_t trials = 1000;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::string> output;

    void validate() const;
};

/// The report plus whether it counts as a success (all properties passed).
struct CommandOutcome {
    Report report;
    bool ok = true;
};

/// Samples from --input or from the named generator.
SampleTable load_samples(const RunConfig& config, std::vector<std::string>& warnings);

CommandOutcome cmd_compute(const RunConfig& config);
CommandOutcome cmd_sweep(const RunConfig& config);
CommandOutcome cmd_properties(const RunConfig& config);
CommandOutcome cmd_compare(const RunConfig& config);
CommandOutcome cmd_demo(const RunConfig& config);

CommandOutcome execute(const RunConfig& config);

/// Runs the command, writes the rendered report to --output or `out`, and
/// errors to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bpdep::cli
