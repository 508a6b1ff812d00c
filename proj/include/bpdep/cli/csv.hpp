#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpdep/samples.hpp"

namespace bpdep::cli {

/// Base for user-facing input errors. `category` is a stable short name used
/// in messages and for choosing the exit code.
class CliError : public std::runtime_error {
public:
    CliError(std::string category, const std::string& what, int exit_code)
        : std::runtime_error(what), category_(std::move(category)), exit_code_(exit_code) {}
    const std::string& category() const { return category_; }
    int exit_code() const { return exit_code_; }

private:
    std::string category_;
    int exit_code_;
};

struct MissingFileError : CliError {
    explicit MissingFileError(const std::string& path) : CliError("missing-file", "cannot open '" + path + "'", 3) {}
};

struct UnknownColumnError : CliError {
    explicit UnknownColumnError(const std::string& col) : CliError("unknown-column", "no column '" + col + "'", 4) {}
};

struct KindConflictError : CliError {
    explicit KindConflictError(const std::string& what) : CliError("kind-conflict", what, 5) {}
};

struct CsvFormatError : CliError {
    explicit CsvFormatError(const std::string& what) : CliError("csv-format", what, 6) {}
};

struct UsageError : CliError {
    explicit UsageError(const std::string& what) : CliError("usage", what, 2) {}
};

/// Header row plus raw string cells. Comma separated, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

enum class KindRequest { Discrete, Continuous, Auto };

KindRequest kind_request_from_string(const std::string& s);

/// Column selected by header name, or by 0-based index when no header
/// matches. Auto resolves to continuous when every cell parses as a number
/// and there are more than `auto_threshold` distinct values, else discrete.
Column resolve_column(const CsvTable& table, const std::string& selector, KindRequest kind, int auto_threshold = 20);

/// Header "x,y"; continuous values at full round-trip precision.
void write_samples_csv(std::ostream& out, const SampleTable& samples);

}  // namespace bpdep::cli
