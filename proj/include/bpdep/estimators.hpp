#pragma once

// Sample-based BP dependency estimates: fixed-width binning into a JointPmf,
// and Gaussian product-kernel density estimation integrated on a grid.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpdep/pmf.hpp"
#include "bpdep/samples.hpp"

namespace bpdep {

/// A continuous column with a single distinct value where more than one bin
/// (or a data-scaled bandwidth) was requested.
class DegenerateColumnError : public std::invalid_argument {
public:
    explicit DegenerateColumnError(const std::string& column)
        : std::invalid_argument("column '" + column + "' is constant; cannot bin or scale it"), column_(column) {}
    const std::string& column() const { return column_; }

private:
    std::string column_;
};

struct BinningSpec {
    int bins_x = 20;  // ignored for a discrete X column
    int bins_y = 20;  // ignored for a discrete Y column
    void validate() const;
};

struct BinnedJoint {
    JointPmf joint;
    std::vector<double> x_edges;  // empty for a discrete column
    std::vector<double> y_edges;
};

/// Bin index floor((v - min) * bins / (max - min)), the maximum clamped into
/// the last bin. Discrete columns pass through unchanged.
BinnedJoint bin_samples_with_edges(const SampleTable& samples, const BinningSpec& spec);
JointPmf bin_samples(const SampleTable& samples, const BinningSpec& spec);

DepResult dep_binned(const SampleTable& samples, const BinningSpec& spec, Direction direction = Direction::YonX);

enum class BandwidthScale {
    ColumnStd,  // kernel width = bandwidth * sample standard deviation of the column
    Absolute,   // kernel width = bandwidth, in data units
};

std::string to_string(BandwidthScale s);

struct KdeSpec {
    double bandwidth = 0.1;
    int resolution = 256;   // grid cells per axis
    double extension = 4.0; // grid reaches this many kernel widths past the data range
    BandwidthScale scale = BandwidthScale::ColumnStd;
    void validate() const;
};

struct GridAxis {
    double lo = 0.0;
    double step = 1.0;
    int cells = 0;
    double center(int i) const { return lo + (i + 0.5) * step; }
    double edge(int i) const { return lo + i * step; }
};

/// Product-kernel KDE on a uniform grid. Values are cell averages of the
/// density (the kernel is integrated exactly over each cell), so the grid
/// mass equals the kernel mass that falls inside the grid.
struct KdeGrid {
    GridAxis x;
    GridAxis y;
    double hx = 0.0;  // effective kernel widths
    double hy = 0.0;
    std::vector<double> joint_mass;  // row-major x.cells * y.cells
    std::vector<double> x_mass;      // 1-D KDE of X, per cell
    std::vector<double> y_mass;

    double density(int i, int j) const { return joint_mass[static_cast<std::size_t>(i) * y.cells + j] / (x.step * y.step); }
    double x_density(int i) const { return x_mass[static_cast<std::size_t>(i)] / x.step; }
    double y_density(int j) const { return y_mass[static_cast<std::size_t>(j)] / y.step; }
    double total_mass() const;
};

/// Effective kernel width for one column under the KdeSpec scale convention.
double kernel_width(const Column& column, const KdeSpec& spec);

KdeGrid kde_joint(const SampleTable& samples, const KdeSpec& spec);
KdeGrid kde_joint_serial(const SampleTable& samples, const KdeSpec& spec);

/// UD from the grid quadrature of |f_XY - f_X f_Y|; ud_max = 2 since both
/// variables are continuous; score clamped to [0, 1].
DepResult dep_kde(const SampleTable& samples, const KdeSpec& spec, Direction direction = Direction::YonX);

struct SweepPoint {
    double parameter = 0.0;
    std::optional<double> score;
    std::string reason;  // set when score is absent
};

struct SweepCurve {
    std::string parameter_name;
    std::vector<SweepPoint> points;
    Method method = Method::Binned;
    Direction direction = Direction::YonX;
    std::uint64_t seed = 0;
    std::size_t n = 0;
};

/// Square binning (bins_x = bins_y = count) at each count.
SweepCurve sweep_bins(const SampleTable& samples, std::span<const int> counts, Direction direction,
                      std::uint64_t seed = 0);

SweepCurve sweep_bandwidth(const SampleTable& samples, std::span<const double> bandwidths, Direction direction,
                           const KdeSpec& base = {}, std::uint64_t seed = 0);

/// 2, 3, ..., 200.
std::vector<int> default_bin_counts();
/// 50 log-spaced values from 1e-3 to 1e1.
std::vector<double> default_bandwidths();

}  // namespace bpdep
