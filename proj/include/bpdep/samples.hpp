#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bpdep/label.hpp"

namespace bpdep {

enum class ColumnKind { Discrete, Continuous };

std::string to_string(ColumnKind k);

/// One observed variable: finite reals or categorical labels.
class Column {
public:
    Column() = default;
    Column(std::string name, std::vector<double> values);
    Column(std::string name, std::vector<Label> labels);

    const std::string& name() const { return name_; }
    ColumnKind kind() const { return std::holds_alternative<std::vector<double>>(data_) ? ColumnKind::Continuous
                                                                                         : ColumnKind::Discrete; }
    std::size_t size() const;

    const std::vector<double>& values() const { return std::get<std::vector<double>>(data_); }
    const std::vector<Label>& labels() const { return std::get<std::vector<Label>>(data_); }

    /// Numeric view: continuous values as-is, discrete labels through
    /// Label::numeric. Throws std::invalid_argument for a non-numeric label.
    std::vector<double> numeric() const;

    friend bool operator==(const Column&, const Column&) = default;

private:
    std::string name_;
    std::variant<std::vector<double>, std::vector<Label>> data_;
};

/// Paired observations of (X, Y). Both columns have the same length n >= 2
/// and continuous entries are finite.
class SampleTable {
public:
    SampleTable(Column x, Column y);

    const Column& x() const { return x_; }
    const Column& y() const { return y_; }
    std::size_t size() const { return x_.size(); }

    SampleTable swapped() const { return SampleTable(y_, x_); }

    friend bool operator==(const SampleTable&, const SampleTable&) = default;

private:
    Column x_;
    Column y_;
};

}  // namespace bpdep
