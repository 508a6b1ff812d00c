#include "bpdep/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace bpdep::cli {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        std::string cell = line.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        // Trim surrounding blanks.
        const auto b = cell.find_first_not_of(" \t");
        const auto e = cell.find_last_not_of(" \t");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return cells;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            t.header = split_line(line);
            have_header = true;
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != t.header.size())
            throw CsvFormatError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                 " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (!have_header) throw CsvFormatError("input has no header row");
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError(path);
    return read_csv(in);
}

KindRequest kind_request_from_string(const std::string& s) {
    if (s == "discrete") return KindRequest::Discrete;
    if (s == "continuous") return KindRequest::Continuous;
    if (s == "auto") return KindRequest::Auto;
    throw UsageError("column kind must be discrete, continuous or auto, got '" + s + "'");
}

Column resolve_column(const CsvTable& table, const std::string& selector, KindRequest kind, int auto_threshold) {
    std::size_t idx = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == selector) {
            idx = i;
            break;
        }
    if (idx == table.header.size()) {
        char* end = nullptr;
        const long v = std::strtol(selector.c_str(), &end, 10);
        if (selector.empty() || end != selector.c_str() + selector.size() || v < 0 ||
            static_cast<std::size_t>(v) >= table.header.size())
            throw UnknownColumnError(selector);
        idx = static_cast<std::size_t>(v);
    }
    const std::string& name = table.header[idx];

    std::vector<double> numbers;
    numbers.reserve(table.rows.size());
    bool all_numeric = true;
    for (const auto& row : table.rows) {
        double v = 0.0;
        if (!parse_number(row[idx], v)) {
            all_numeric = false;
            break;
        }
        numbers.push_back(v);
    }

    bool continuous = false;
    switch (kind) {
        case KindRequest::Continuous:
            if (!all_numeric)
                throw KindConflictError("column '" + name + "' was declared continuous but has non-numeric values");
            continuous = true;
            break;
        case KindRequest::Discrete:
            continuous = false;
            break;
        case KindRequest::Auto: {
            if (all_numeric) {
                const std::set<double> distinct(numbers.begin(), numbers.end());
                continuous = distinct.size() > static_cast<std::size_t>(auto_threshold);
            }
            break;
        }
    }
    if (continuous) return Column(name, std::move(numbers));
    std::vector<Label> labels;
    labels.reserve(table.rows.size());
    for (const auto& row : table.rows) labels.emplace_back(row[idx]);
    return Column(name, std::move(labels));
}

void write_samples_csv(std::ostream& out, const SampleTable& samples) {
    out << samples.x().name() << ',' << samples.y().name() << '\n';
    auto cell = [](const Column& c, std::size_t r) {
        if (c.kind() == ColumnKind::Discrete) return c.labels()[r].to_string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", c.values()[r]);
        return std::string(buf);
    };
    for (std::size_t r = 0; r < samples.size(); ++r) out << cell(samples.x(), r) << ',' << cell(samples.y(), r) << '\n';
}

}  // namespace bpdep::cli
