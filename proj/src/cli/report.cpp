#include "bpdep/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bpdep::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::logic_error("non-finite value in report");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

// Round to 12 significant digits so the serializer's shortest repr matches.
Json number(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

Json score_json(const std::optional<double>& s) { return s ? number(*s) : Json(kUndefinedToken); }

Json param_json(const ParamValue& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                return number(x);
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                Json a = Json::array();
                for (double d : x) a.push_back(number(d));
                return a;
            } else {
                return x;
            }
        },
        v);
}

Json item_json(const ReportItem& item) {
    return std::visit(
        [](const auto& e) -> Json {
            using T = std::decay_t<decltype(e)>;
            Json j;
            if constexpr (std::is_same_v<T, DepEntry>) {
                j["type"] = "dependency";
                j["name"] = e.name;
                j["direction"] = to_string(e.result.direction);
                j["method"] = to_string(e.result.method);
                j["score"] = score_json(e.result.score);
                j["ud"] = number(e.result.ud);
                j["ud_max"] = number(e.result.ud_max);
                Json p = Json::object();
                for (const auto& [k, v] : e.result.parameters) p[k] = param_json(v);
                j["parameters"] = std::move(p);
            } else if constexpr (std::is_same_v<T, BaselineEntry>) {
                j["type"] = "baseline";
                j["measure"] = to_string(e.score.measure);
                if (e.direction) j["direction"] = to_string(*e.direction);
                j["value"] = e.score.defined ? number(e.score.value) : Json(kUndefinedToken);
            } else if constexpr (std::is_same_v<T, SweepEntry>) {
                j["type"] = "sweep";
                j["parameter"] = e.curve.parameter_name;
                j["method"] = to_string(e.curve.method);
                j["direction"] = to_string(e.curve.direction);
                j["seed"] = e.curve.seed;
                j["n"] = e.curve.n;
                if (e.reference) j["reference"] = number(*e.reference);
                Json pts = Json::array();
                for (const auto& p : e.curve.points) {
                    Json q;
                    q["parameter"] = number(p.parameter);
                    q["score"] = score_json(p.score);
                    if (!p.score) q["reason"] = p.reason;
                    pts.push_back(std::move(q));
                }
                j["points"] = std::move(pts);
            } else {
                j["type"] = "property";
                j["id"] = e.id;
                j["name"] = e.name;
                j["passed"] = e.passed;
                j["trials"] = e.trials;
                j["violations"] = e.violations;
                j["witness"] = e.witness;
            }
            return j;
        },
        item);
}

std::string csv_score(const std::optional<double>& s) { return s ? format_number(*s) : kUndefinedToken; }

}  // namespace

std::string render_json(const Report& report) {
    Json root;
    root["version"] = report.version;
    Json cfg = Json::object();
    for (const auto& [k, v] : report.config)
        std::visit(
            [&](const auto& x) {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>)
                    cfg[k] = number(x);
                else
                    cfg[k] = x;
            },
            v);
    root["config"] = std::move(cfg);
    Json results = Json::array();
    for (const auto& item : report.results) results.push_back(item_json(item));
    root["results"] = std::move(results);
    root["warnings"] = report.warnings;
    return root.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    std::ostringstream out;
    const bool sweeps_only =
        !report.results.empty() &&
        std::all_of(report.results.begin(), report.results.end(),
                    [](const ReportItem& r) { return std::holds_alternative<SweepEntry>(r); });
    if (sweeps_only) {
        bool first = true;
        for (const auto& item : report.results) {
            if (!first) out << '\n';
            first = false;
            out << "parameter,score\n";
            for (const auto& p : std::get<SweepEntry>(item).curve.points)
                out << format_number(p.parameter) << ',' << csv_score(p.score) << '\n';
        }
        return out.str();
    }

    out << "kind,name,direction,method,value,ud,ud_max\n";
    for (const auto& item : report.results) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, DepEntry>) {
                    out << "dependency," << e.name << ',' << to_string(e.result.direction) << ','
                        << to_string(e.result.method) << ',' << csv_score(e.result.score) << ','
                        << format_number(e.result.ud) << ',' << format_number(e.result.ud_max) << '\n';
                } else if constexpr (std::is_same_v<T, BaselineEntry>) {
                    out << "baseline," << to_string(e.score.measure) << ','
                        << (e.direction ? to_string(*e.direction) : std::string{}) << ",,"
                        << (e.score.defined ? format_number(e.score.value) : std::string(kUndefinedToken)) << ",,\n";
                } else if constexpr (std::is_same_v<T, SweepEntry>) {
                    for (const auto& p : e.curve.points)
                        out << "sweep-" << e.curve.parameter_name << ',' << format_number(p.parameter) << ','
                            << to_string(e.curve.direction) << ',' << to_string(e.curve.method) << ','
                            << csv_score(p.score) << ",,\n";
                } else {
                    out << "property," << e.id << ",,," << (e.passed ? "pass" : "fail") << ",,\n";
                }
            },
            item);
    }
    return out.str();
}

}  // namespace bpdep::cli
