#pragma once

// Data-parallel inner loops shared by the quadrature oracle and the KDE
// estimator. Each kernel has a plain serial reference (`*_serial`) kept for
// testing and benchmarking, and an OpenMP version whose result does not depend
// on the thread count: rows are reduced independently and the row partials
// are then added in row order.

#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

namespace bpdep::kernels {

/// sum_i wx[i] * sum_j wy[j] * f(i, j), single accumulator.
template <typename F>
double weighted_grid_sum_serial(std::span<const double> wx, std::span<const double> wy, F&& f) {
    double total = 0.0;
    for (std::size_t i = 0; i < wx.size(); ++i)
        for (std::size_t j = 0; j < wy.size(); ++j) total += wx[i] * wy[j] * f(i, j);
    return total;
}

template <typename F>
double weighted_grid_sum(std::span<const double> wx, std::span<const double> wy, F&& f) {
    const auto nx = static_cast<std::ptrdiff_t>(wx.size());
    std::vector<double> rows(wx.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < wy.size(); ++j) acc += wy[j] * f(ui, j);
        rows[ui] = wx[ui] * acc;
    }
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

/// Per-sample kernel mass over a contiguous run of grid cells on one axis.
struct CellWeights {
    std::size_t first = 0;
    std::vector<double> mass;
};

/// Joint grid mass M[a][b] = scale * sum_s wx_s[a] * wy_s[b], row-major nx x ny.
inline std::vector<double> accumulate_outer_serial(std::span<const CellWeights> wx, std::span<const CellWeights> wy,
                                                   std::size_t nx, std::size_t ny, double scale) {
    std::vector<double> m(nx * ny, 0.0);
    for (std::size_t s = 0; s < wx.size(); ++s) {
        const auto& kx = wx[s];
        const auto& ky = wy[s];
        for (std::size_t a = 0; a < kx.mass.size(); ++a) {
            double* row = m.data() + (kx.first + a) * ny + ky.first;
            const double va = kx.mass[a];
            for (std::size_t b = 0; b < ky.mass.size(); ++b) row[b] += va * ky.mass[b];
        }
    }
    for (double& v : m) v *= scale;
    return m;
}

/// Parallel over grid rows. Each row visits the samples touching it in sample
/// order, so every cell sees the same sequence of additions as the serial
/// version and the two agree bit for bit.
inline std::vector<double> accumulate_outer(std::span<const CellWeights> wx, std::span<const CellWeights> wy,
                                            std::size_t nx, std::size_t ny, double scale) {
    std::vector<std::vector<std::size_t>> touching(nx);
    for (std::size_t s = 0; s < wx.size(); ++s)
        for (std::size_t a = 0; a < wx[s].mass.size(); ++a) touching[wx[s].first + a].push_back(s);

    std::vector<double> m(nx * ny, 0.0);
    const auto n_rows = static_cast<std::ptrdiff_t>(nx);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t r = 0; r < n_rows; ++r) {
        const auto row_idx = static_cast<std::size_t>(r);
        double* row = m.data() + row_idx * ny;
        for (std::size_t s : touching[row_idx]) {
            const double va = wx[s].mass[row_idx - wx[s].first];
            const auto& ky = wy[s];
            double* dst = row + ky.first;
            for (std::size_t b = 0; b < ky.mass.size(); ++b) dst[b] += va * ky.mass[b];
        }
        for (std::size_t b = 0; b < ny; ++b) row[b] *= scale;
    }
    return m;
}

/// sum_{a,b} |m[a][b] - px[a] * py[b]|, single accumulator.
inline double abs_deviation_serial(std::span<const double> m, std::span<const double> px,
                                   std::span<const double> py) {
    double total = 0.0;
    for (std::size_t a = 0; a < px.size(); ++a)
        for (std::size_t b = 0; b < py.size(); ++b) {
            const double d = m[a * py.size() + b] - px[a] * py[b];
            total += d < 0.0 ? -d : d;
        }
    return total;
}

inline double abs_deviation(std::span<const double> m, std::span<const double> px, std::span<const double> py) {
    const auto nx = static_cast<std::ptrdiff_t>(px.size());
    std::vector<double> rows(px.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < nx; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        double acc = 0.0;
        for (std::size_t b = 0; b < py.size(); ++b) {
            const double d = m[ua * py.size() + b] - px[ua] * py[b];
            acc += d < 0.0 ? -d : d;
        }
        rows[ua] = acc;
    }
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

}  // namespace bpdep::kernels
