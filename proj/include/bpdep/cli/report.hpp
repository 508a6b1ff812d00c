#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bpdep/baselines.hpp"
#include "bpdep/estimators.hpp"
#include "bpdep/pmf.hpp"
#include "bpdep/properties.hpp"

namespace bpdep::cli {

inline constexpr const char* kToolVersion = "bpdep 1.0.0";
inline constexpr const char* kUndefinedToken = "undefined";

struct DepEntry {
    std::string name;  // e.g. "bp"
    DepResult result;
};

struct BaselineEntry {
    BaselineScore score;
    std::optional<Direction> direction;  // only for direction-dependent measures
};

struct SweepEntry {
    SweepCurve curve;
    std::optional<double> reference;  // oracle value for a horizontal reference line
};

using ReportItem = std::variant<DepEntry, BaselineEntry, SweepEntry, PropertyCheck>;

/// Config echo values keep insertion order.
using ConfigValue = std::variant<std::string, std::int64_t, double>;

struct Report {
    std::string version = kToolVersion;
    std::vector<std::pair<std::string, ConfigValue>> config;
    std::vector<ReportItem> results;
    std::vector<std::string> warnings;
};

/// %.12g; non-finite values are a programming error and throw.
std::string format_number(double v);

/// {version, config, results, warnings}, two-space indent, trailing newline.
std::string render_json(const Report& report);

/// Sweep-only reports render as "parameter,score" blocks; everything else as
/// one row per result under a fixed header.
std::string render_csv(const Report& report);

}  // namespace bpdep::cli
