#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wigner_lab/error.hpp"

namespace wigner_lab {

using complex = std::complex<double>;

/// Uniform sampling axis: points start + k*step for k = 0..count-1.
struct Grid1D {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  /// FFT-style symmetric grid: start = center - (count/2)*step, so the
  /// center is sample count/2.
  static Grid1D centered(std::size_t count, double step, double center = 0.0) {
    Grid1D g{center - static_cast<double>(count / 2) * step, step, count};
    g.validate();
    return g;
  }

  /// Closed grid with both endpoints sampled.
  static Grid1D closed(double lo, double hi, std::size_t count) {
    require(count >= 2, ErrorKind::invalid_argument, "closed grid needs at least two points");
    Grid1D g{lo, (hi - lo) / static_cast<double>(count - 1), count};
    g.validate();
    return g;
  }

  // Measured from the middle sample, so on a centered grid x[N/2 - m] == -x[N/2 + m] exactly.
  double operator[](std::size_t k) const {
    const auto half = static_cast<double>(count / 2);
    return (start + half * step) + (static_cast<double>(k) - half) * step;
  }
  double front() const { return start; }
  double back() const { return (*this)[count - 1]; }
  double length() const { return step * static_cast<double>(count); }

  /// Index of the sample closest to x (clamped).
  std::size_t nearest(double x) const {
    const double k = std::round((x - start) / step);
    if (k <= 0) return 0;
    if (k >= static_cast<double>(count - 1)) return count - 1;
    return static_cast<std::size_t>(k);
  }

  bool is_centered(double tol = 1e-12) const {
    return count % 2 == 0 &&
           std::abs(start + static_cast<double>(count / 2) * step) <= tol * std::max(1.0, std::abs(step) * count);
  }

  void validate() const {
    require(std::isfinite(start) && std::isfinite(step), ErrorKind::invalid_argument,
            "grid start/step must be finite");
    require(step > 0.0, ErrorKind::invalid_argument, "grid step must be positive");
    require(count >= 8 && count % 2 == 0, ErrorKind::invalid_argument,
            "grid count must be even and at least 8 (got " + std::to_string(count) + ")");
  }

  bool same_as(const Grid1D& other, double tol = 1e-12) const {
    const double scale = std::max({1.0, std::abs(start), std::abs(other.start)});
    return count == other.count && std::abs(start - other.start) <= tol * scale &&
           std::abs(step - other.step) <= tol * std::max(step, other.step);
  }

  std::vector<double> points() const {
    std::vector<double> p(count);
    for (std::size_t k = 0; k < count; ++k) p[k] = (*this)[k];
    return p;
  }
};

/// A direct axis and its discrete-Fourier reciprocal:
/// reciprocal.step * direct.step * direct.count = 2*pi.
struct ConjugatePair {
  Grid1D direct;
  Grid1D reciprocal;
  double hbar = 1.0;

  double reciprocity_error() const {
    return std::abs(reciprocal.step * direct.step * static_cast<double>(direct.count) -
                    2.0 * std::numbers::pi) /
           (2.0 * std::numbers::pi);
  }
};

inline ConjugatePair make_conjugate_pair(const Grid1D& direct, double hbar) {
  direct.validate();
  require(hbar > 0.0 && std::isfinite(hbar), ErrorKind::invalid_argument, "hbar must be positive");
  const double step = 2.0 * std::numbers::pi / (static_cast<double>(direct.count) * direct.step);
  return ConjugatePair{direct, Grid1D::centered(direct.count, step), hbar};
}

/// Hologram z coordinate expressed as a position, l_z = (hbar/2) z.
constexpr double z_to_position(double z, double hbar) { return 0.5 * hbar * z; }

template <class T>
struct Field1D {
  Grid1D grid;
  std::vector<T> values;

  Field1D() = default;
  Field1D(Grid1D g, std::vector<T> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.count, ErrorKind::invalid_argument, "field size does not match grid");
  }
  explicit Field1D(Grid1D g) : grid(g), values(g.count) {}

  T& operator[](std::size_t k) { return values[k]; }
  const T& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }
};

/// Row-major 2D field: index (i, j) with i along grid_x, j along grid_y.
template <class T>
struct Field2D {
  Grid1D grid_x;
  Grid1D grid_y;
  std::vector<T> values;

  Field2D() = default;
  Field2D(Grid1D gx, Grid1D gy) : grid_x(gx), grid_y(gy), values(gx.count * gy.count) {}
  Field2D(Grid1D gx, Grid1D gy, std::vector<T> v) : grid_x(gx), grid_y(gy), values(std::move(v)) {
    require(values.size() == grid_x.count * grid_y.count, ErrorKind::invalid_argument,
            "field size does not match grids");
  }

  std::size_t nx() const { return grid_x.count; }
  std::size_t ny() const { return grid_y.count; }
  T& operator()(std::size_t i, std::size_t j) { return values[i * grid_y.count + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values[i * grid_y.count + j]; }
  std::span<T> row(std::size_t i) { return {values.data() + i * grid_y.count, grid_y.count}; }
  std::span<const T> row(std::size_t i) const { return {values.data() + i * grid_y.count, grid_y.count}; }
};

using RealField1D = Field1D<double>;
using ComplexField1D = Field1D<complex>;
using RealField2D = Field2D<double>;
using ComplexField2D = Field2D<complex>;

template <class T>
bool all_finite(const std::vector<T>& values) {
  for (const auto& v : values) {
    if constexpr (std::is_same_v<T, complex>) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    } else {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

/// Transposes a 2D field so rows run along the former y axis.
template <class T>
Field2D<T> transpose(const Field2D<T>& f) {
  Field2D<T> out(f.grid_y, f.grid_x);
  for (std::size_t i = 0; i < f.nx(); ++i)
    for (std::size_t j = 0; j < f.ny(); ++j) out(j, i) = f(i, j);
  return out;
}

// Quadrature -----------------------------------------------------------------

/// Pairwise (cascade) summation with a fixed split, so the result depends only
/// on the order of the input.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 16) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Trapezoid weights. A centered grid samples the half-open interval
/// [-L, L); its closing endpoint is the periodic image of the first sample,
/// so the rule reduces to uniform weights. Any other grid is treated as
/// closed, with half weights at both ends.
inline std::vector<double> trapezoid_weights(const Grid1D& g) {
  std::vector<double> w(g.count, g.step);
  if (!w.empty() && !g.is_centered()) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

inline double integrate_1d(const RealField1D& f) {
  const auto w = trapezoid_weights(f.grid);
  std::vector<double> terms(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) terms[k] = w[k] * f[k];
  return pairwise_sum<double>(terms);
}

/// Trapezoidal rule over the full grid, summed pairwise in row-major order.
inline double integrate_2d(const RealField2D& f) {
  const auto wx = trapezoid_weights(f.grid_x);
  const auto wy = trapezoid_weights(f.grid_y);
  std::vector<double> terms(f.values.size());
  for (std::size_t i = 0; i < f.nx(); ++i)
    for (std::size_t j = 0; j < f.ny(); ++j) terms[i * f.ny() + j] = wx[i] * wy[j] * f(i, j);
  return pairwise_sum<double>(terms);
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs(std::span<const complex> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace wigner_lab
