#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/fft.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/interpolation.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/states.hpp"

namespace wigner_lab {

/// Real Wigner density over (x, mu).
struct WignerField {
  RealField2D base;
  double hbar = 1.0;
  std::shared_ptr<const StateSpec> source;  // null for fields built from raw samples
};

/// How samples of a field are continued past the ends of its grid.
enum class Outside {
  automatic,  // zero if the edge samples are negligible, else domain-coverage error
  zero,
  periodic,
};

namespace detail {

/// Value of a sampled field at an integer index that may fall off the grid.
class IndexedSamples {
 public:
  IndexedSamples(const ComplexField1D& f, Outside policy) : f_(f), policy_(policy) {
    if (policy_ == Outside::automatic) {
      const double peak = max_abs(std::span<const complex>(f.values));
      const double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
      policy_ = edge <= 1e-6 * peak ? Outside::zero : Outside::automatic;
    }
  }

  complex operator()(long k) const {
    const auto n = static_cast<long>(f_.size());
    if (k >= 0 && k < n) return f_[static_cast<std::size_t>(k)];
    if (policy_ == Outside::zero) return {0.0, 0.0};
    if (policy_ == Outside::periodic) return f_[static_cast<std::size_t>(((k % n) + n) % n)];
    fail(ErrorKind::domain_coverage, "correlation argument leaves the sampled grid (edge samples not negligible)");
  }

 private:
  const ComplexField1D& f_;
  Outside policy_;
};

/// Integer r with alpha*t.step = r*rows.step, if one exists.
inline std::optional<long> lattice_ratio(double alpha, const Grid1D& t, const Grid1D& rows) {
  const double r = alpha * t.step / rows.step;
  const double rr = std::round(r);
  if (rr >= 1.0 && std::abs(r - rr) <= 1e-9 * rr) return static_cast<long>(rr);
  return std::nullopt;
}

}  // namespace detail

/// out(i, j) = (1/2pi) sum_k dt corr(i, t_k) exp(-i t_k w_j)
///
/// corr(i, k, t) returns the correlation at row i and lag coordinate t, where
/// k is the signed lag index (t = k * t.step on a centered lag grid). When
/// both the lag and output grids are centered, the unpaired sample at
/// t = -t_max is averaged with its mirror at +t_max; this is the trapezoid
/// rule on the symmetric interval and keeps Hermitian correlations real.
template <class Corr>
ComplexField2D correlation_transform(Corr&& corr, const Grid1D& rows, const Grid1D& t, const Grid1D& w) {
  t.validate();
  w.validate();
  const bool symmetric = t.is_centered() && w.is_centered();
  const long half = static_cast<long>(t.count / 2);
  const double scale = t.step / (2.0 * std::numbers::pi);
  ComplexField2D out(rows, w);
  parallel_for(rows.count, [&](std::size_t i) {
    std::vector<complex> c(t.count);
    for (std::size_t k = 0; k < t.count; ++k) {
      const long m = static_cast<long>(k) - half;
      c[k] = corr(i, m, t[k]);
    }
    if (symmetric) c[0] = 0.5 * (c[0] + corr(i, half, -t[0]));
    auto row = fft::grid_fourier(c, t, w, -1);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < w.count; ++j) dst[j] = scale * row[j];
  });
  return out;
}

namespace detail {

inline RealField2D take_real(const ComplexField2D& f, double tolerance, const char* what) {
  double max_re = 0.0, max_im = 0.0;
  for (const auto& v : f.values) {
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  require(max_im <= tolerance * max_re, ErrorKind::numerical_consistency,
          std::string(what) + ": imaginary residue " + std::to_string(max_im) + " relative to " +
              std::to_string(max_re));
  RealField2D out(f.grid_x, f.grid_y);
  for (std::size_t k = 0; k < f.values.size(); ++k) out.values[k] = f.values[k].real();
  return out;
}

// Renormalizes a density whose integral has drifted by less than 1e-6.
inline void renormalize(RealField2D& f) {
  const double total = integrate_2d(f);
  require(std::abs(total - 1.0) < 1e-6, ErrorKind::numerical_consistency,
          "Wigner field integrates to " + std::to_string(total) + "; refine or widen the grid");
  for (auto& v : f.values) v /= total;
}

// Correlation of f_plus(r + alpha t) * f_minus(r - alpha t) for sampled
// functions on the row grid. Lattice-aligned lags use the samples directly;
// anything else goes through cubic interpolation.
template <class Tp, class Tm>
ComplexField2D sampled_correlation(const ComplexField1D& fp, const ComplexField1D& fm, Tp tp, Tm tm,
                                   const Grid1D& t, const Grid1D& w, double alpha, Outside policy) {
  const Grid1D& rows = fp.grid;
  if (auto r = lattice_ratio(alpha, t, rows); r) {
    const IndexedSamples sp(fp, policy), sm(fm, policy);
    const long ratio = *r;
    return correlation_transform(
        [&](std::size_t i, long m, double) {
          const long ii = static_cast<long>(i);
          return tp(sp(ii + ratio * m)) * tm(sm(ii - ratio * m));
        },
        rows, t, w);
  }
  require(policy != Outside::periodic, ErrorKind::invalid_argument,
          "periodic continuation needs lags on the sample lattice");
  const CubicInterpolant ip(fp), im(fm);
  return correlation_transform(
      [&](std::size_t i, long, double tk) {
        const double x = rows[i];
        return tp(ip(x + alpha * tk)) * tm(im(x - alpha * tk));
      },
      rows, t, w);
}

inline complex identity(complex v) { return v; }
inline complex conjugate(complex v) { return std::conj(v); }

}  // namespace detail

/// W(x, mu) = (1/2pi) integral dz exp(-i z mu) psi*(x - hbar z/2) psi(x + hbar z/2)
/// on x = psi.grid, z = pair.direct, mu = pair.reciprocal.
inline WignerField wigner_transform(const ComplexField1D& psi, const ConjugatePair& pair,
                                    Outside policy = Outside::automatic) {
  psi.grid.validate();
  require(all_finite(psi.values), ErrorKind::invalid_argument, "psi samples must be finite");
  auto z = detail::sampled_correlation(psi, psi, detail::identity, detail::conjugate, pair.direct,
                                       pair.reciprocal, 0.5 * pair.hbar, policy);
  WignerField out{detail::take_real(z, 1e-9, "wigner_transform"), pair.hbar, nullptr};
  detail::renormalize(out.base);
  return out;
}

/// Same transform with psi evaluated exactly at every x +- hbar z/2.
inline WignerField wigner_transform(const BoundState& psi, const ConjugatePair& pair) {
  const double a = 0.5 * pair.hbar;
  const Grid1D& rows = psi.grid();
  auto z = correlation_transform(
      [&](std::size_t i, long, double t) {
        const double x = rows[i];
        return std::conj(psi(x - a * t)) * psi(x + a * t);
      },
      rows, pair.direct, pair.reciprocal);
  WignerField out{detail::take_real(z, 1e-9, "wigner_transform"), pair.hbar,
                  std::make_shared<const StateSpec>(psi.spec())};
  detail::renormalize(out.base);
  return out;
}

/// Convenience: bind the state to grid.x_grid() and transform.
inline WignerField wigner_transform(const StateSpec& spec, const PhaseSpaceGrid& grid) {
  const auto pair = grid.pair();
  return wigner_transform(BoundState(spec, grid.x_grid(), grid.hbar), pair);
}

/// (1/2pi) integral dz exp(-i z mu) f1(x + hbar z/2) f2(x - hbar z/2); complex in general.
inline ComplexField2D cross_wigner(const ComplexField1D& f1, const ComplexField1D& f2, const ConjugatePair& pair,
                                   Outside policy = Outside::automatic) {
  require(f1.grid.same_as(f2.grid), ErrorKind::invalid_argument, "cross_wigner inputs must share a grid");
  f1.grid.validate();
  return detail::sampled_correlation(f1, f2, detail::identity, detail::identity, pair.direct, pair.reciprocal,
                                     0.5 * pair.hbar, policy);
}

/// Momentum-representation Wigner:
/// W(x, mu) = (1/pi hbar) integral dk phi*(mu + k) phi(mu - k) exp(-2 i x k / hbar).
/// With t = 2k/hbar this is the position transform with phi* and phi swapped
/// in role; t uses step 2 dmu / hbar, so the x grid has step pi hbar / (N dmu).
inline WignerField wigner_momentum(const ComplexField1D& phi, double hbar, Outside policy = Outside::automatic) {
  phi.grid.validate();
  require(hbar > 0.0, ErrorKind::invalid_argument, "hbar must be positive");
  require(all_finite(phi.values), ErrorKind::invalid_argument, "phi samples must be finite");
  const auto tp = make_conjugate_pair(Grid1D::centered(phi.grid.count, 2.0 * phi.grid.step / hbar), hbar);
  auto z = detail::sampled_correlation(phi, phi, detail::conjugate, detail::identity, tp.direct, tp.reciprocal,
                                       0.5 * hbar, policy);
  WignerField out{transpose(detail::take_real(z, 1e-9, "wigner_momentum")), hbar, nullptr};
  detail::renormalize(out.base);
  return out;
}

/// Position grid produced by wigner_momentum for momentum samples on mu_grid.
inline Grid1D momentum_wigner_x_grid(const Grid1D& mu_grid, double hbar) {
  return make_conjugate_pair(Grid1D::centered(mu_grid.count, 2.0 * mu_grid.step / hbar), hbar).reciprocal;
}

/// (x-marginal over mu, mu-marginal over x), both trapezoidal.
inline std::pair<RealField1D, RealField1D> marginals(const WignerField& w) {
  const auto& f = w.base;
  RealField1D mx(f.grid_x), mm(f.grid_y);
  const auto wx = trapezoid_weights(f.grid_x);
  const auto wy = trapezoid_weights(f.grid_y);
  std::vector<double> terms(f.ny());
  for (std::size_t i = 0; i < f.nx(); ++i) {
    for (std::size_t j = 0; j < f.ny(); ++j) terms[j] = wy[j] * f(i, j);
    mx[i] = pairwise_sum<double>(terms);
  }
  terms.resize(f.nx());
  for (std::size_t j = 0; j < f.ny(); ++j) {
    for (std::size_t i = 0; i < f.nx(); ++i) terms[i] = wx[i] * f(i, j);
    mm[j] = pairwise_sum<double>(terms);
  }
  return {std::move(mx), std::move(mm)};
}

}  // namespace wigner_lab
