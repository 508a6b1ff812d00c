#include "bpdep/samples.hpp"

#include <cmath>

namespace bpdep {

std::string to_string(ColumnKind k) { return k == ColumnKind::Discrete ? "discrete" : "continuous"; }

Column::Column(std::string name, std::vector<double> values) : name_(std::move(name)), data_(std::move(values)) {
    for (double v : this->values())
        if (!std::isfinite(v)) throw std::invalid_argument("column '" + name_ + "' has a non-finite value");
}

Column::Column(std::string name, std::vector<Label> labels) : name_(std::move(name)), data_(std::move(labels)) {}

std::size_t Column::size() const {
    return std::visit([](const auto& v) { return v.size(); }, data_);
}

std::vector<double> Column::numeric() const {
    if (kind() == ColumnKind::Continuous) return values();
    std::vector<double> out;
    out.reserve(size());
    for (const auto& l : labels()) {
        const auto v = l.numeric();
        if (!v) throw std::invalid_argument("column '" + name_ + "' has non-numeric label '" + l.to_string() + "'");
        out.push_back(*v);
    }
    return out;
}

SampleTable::SampleTable(Column x, Column y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size())
        throw std::invalid_argument("sample columns differ in length (" + std::to_string(x_.size()) + " vs " +
                                    std::to_string(y_.size()) + ")");
    if (x_.size() < 2) throw std::invalid_argument("a sample table needs at least two rows");
}

}  // namespace bpdep
