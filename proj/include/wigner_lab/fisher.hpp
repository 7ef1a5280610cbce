#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/hologram.hpp"
#include "wigner_lab/interpolation.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/rng.hpp"
#include "wigner_lab/states.hpp"

// Conventions
//   I_quadrature   = (8/hbar) integral dx dz [ |dPsi/dx|^2 - (2/hbar)^2 |dPsi/dz|^2 ]
//   I_closed_form  = Re l^2, l = ln[psi(b)/psi(-b)] with the phase continued along [-b, b]
//   I_cross_term   = Re [ integral_a^b (ln psi)' dw ]^2            (product domain)
//   I_diamond      = Re integral_{|w|+|v|<=b} (ln psi)'(w) (ln psi)'(v)
// On the rectangle |x| <= x0, |z| <= 2 x0 / hbar (b = 2 x0):
//   I_quadrature = (32 / hbar^2) I_diamond.
// The product and diamond forms agree only for special profiles; for a
// linear log-derivative (shifted Gaussian) the product is twice the diamond,
// which fixes the calibration ratio I_quadrature / I_closed_form = 16 / hbar^2.
// The source information J is zero in this model; the EPI constant kappa in
// I = kappa J therefore plays no numerical role and is not represented.

namespace wigner_lab {

struct FisherResult {
  double I_quadrature = 0.0;
  double I_quadrature_coarse = 0.0;  // one refinement level down (check_I_zero only)
  double I_closed_form = 0.0;
  double abs_integral = 0.0;  // quadrature of |integrand|, the scale for "zero"
  double x_half_extent = 0.0;
  double z_half_extent = 0.0;
  double b = 0.0;  // x0 + (hbar/2) z0
  double hbar = 1.0;
  double masked_fraction = 0.0;
  bool verdict = false;

  bool trustworthy() const { return masked_fraction < 0.05; }
};

/// Integrand of I without the 8/hbar prefactor, plus which points entered.
struct FisherIntegrand {
  RealField2D values;
  std::vector<std::uint8_t> valid;
  double excluded_fraction = 0.0;
};

namespace detail {

// Second-order derivative along one axis: central inside, one-sided at the
// ends. Returns false if any stencil point is masked.
template <class Get, class Masked>
bool derivative(std::size_t k, std::size_t n, double h, Get&& get, Masked&& masked, complex& out) {
  if (k == 0) {
    if (masked(0) || masked(1) || masked(2)) return false;
    out = (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
  } else if (k + 1 == n) {
    if (masked(n - 1) || masked(n - 2) || masked(n - 3)) return false;
    out = (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
  } else {
    if (masked(k - 1) || masked(k + 1) || masked(k)) return false;
    out = (get(k + 1) - get(k - 1)) / (2.0 * h);
  }
  return true;
}

}  // namespace detail

inline FisherIntegrand fisher_integrand(const HologramField& f) {
  const auto& P = f.Psi;
  const std::size_t nx = P.nx(), nz = P.ny();
  require(nx >= 3 && nz >= 3, ErrorKind::invalid_argument, "Fisher quadrature needs at least 3x3 points");
  const double hx = P.grid_x.step, hz = P.grid_y.step;
  const double c2 = 4.0 / (f.hbar * f.hbar);
  FisherIntegrand out{RealField2D(P.grid_x, P.grid_y), std::vector<std::uint8_t>(nx * nz, 0), 0.0};
  parallel_for(nx, [&](std::size_t i) {
    for (std::size_t j = 0; j < nz; ++j) {
      complex dx, dz;
      const bool okx = detail::derivative(
          i, nx, hx, [&](std::size_t a) { return P(a, j); }, [&](std::size_t a) { return f.masked(a, j); }, dx);
      const bool okz = detail::derivative(
          j, nz, hz, [&](std::size_t a) { return P(i, a); }, [&](std::size_t a) { return f.masked(i, a); }, dz);
      if (okx && okz) {
        out.values(i, j) = std::norm(dx) - c2 * std::norm(dz);
        out.valid[i * nz + j] = 1;
      }
    }
  });
  std::size_t bad = 0;
  for (auto v : out.valid) bad += v == 0;
  out.excluded_fraction = static_cast<double>(bad) / static_cast<double>(out.valid.size());
  return out;
}

/// (8/hbar) * trapezoid integral of the integrand over valid points. Raises
/// unreliable-domain when 5% or more of the points are excluded.
inline double fisher_quadrature(const HologramField& f, double* abs_integral = nullptr,
                                double* excluded_fraction = nullptr) {
  const auto in = fisher_integrand(f);
  if (excluded_fraction) *excluded_fraction = in.excluded_fraction;
  require(in.excluded_fraction < 0.05, ErrorKind::unreliable_domain,
          "node exclusions cover " + std::to_string(100.0 * in.excluded_fraction) + "% of the domain");
  RealField2D a(in.values.grid_x, in.values.grid_y);
  for (std::size_t k = 0; k < a.values.size(); ++k) a.values[k] = std::abs(in.values.values[k]);
  const double pref = 8.0 / f.hbar;
  if (abs_integral) *abs_integral = pref * integrate_2d(a);
  return pref * integrate_2d(in.values);
}

/// Phase profile on the closed rectangle [-x0, x0] x [-z0, z0] with n points per axis.
inline HologramField fisher_profile(const Amplitude& psi, double x0, double z0, std::size_t n, double hbar) {
  return phase_profile(psi, Grid1D::closed(-x0, x0, n), Grid1D::closed(-z0, z0, n), hbar);
}

// ---------------------------------------------------------------------------
// Appendix forms

struct BoundaryLimitOptions {
  double initial_offset = 1e-2;  // relative to b
  int max_halvings = 40;
  double tolerance = 1e-12;
};

namespace detail {

// arg psi continued along [a, b] on `samples` points; returns arg(b) - arg(a).
inline double phase_change(const Amplitude& psi, double a, double b, std::size_t samples = 4097) {
  double total = 0.0;
  complex prev = psi(a);
  for (std::size_t k = 1; k < samples; ++k) {
    const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(samples - 1);
    const complex cur = psi(x);
    if (std::abs(prev) > 0.0 && std::abs(cur) > 0.0) total += std::arg(cur / prev);
    prev = cur;
  }
  return total;
}

}  // namespace detail

/// Re [ln(psi(b)/psi(-b))]^2 with the phase difference continued along
/// [-b, b]. When both ends vanish the ratio is replaced by its limit along
/// psi(b - t)/psi(-b + t), t -> 0.
inline double fisher_closed_form(const Amplitude& psi, double b, const BoundaryLimitOptions& opt = {}) {
  require(b > 0.0 && std::isfinite(b), ErrorKind::invalid_argument, "boundary parameter must be positive");
  complex hi = psi(b), lo = psi(-b);
  double a_end = b;
  if (hi == complex{0.0, 0.0} || lo == complex{0.0, 0.0}) {
    require(hi == complex{0.0, 0.0} && lo == complex{0.0, 0.0}, ErrorKind::indeterminate_boundary,
            "psi vanishes at only one boundary; ln ratio diverges");
    double t = opt.initial_offset * b;
    complex prev = psi(b - t) / psi(-b + t);
    bool converged = false;
    for (int m = 1; m <= opt.max_halvings; ++m) {
      t *= 0.5;
      const complex l = psi(-b + t);
      require(l != complex{0.0, 0.0}, ErrorKind::indeterminate_boundary, "psi vanishes along the boundary approach");
      const complex cur = psi(b - t) / l;
      if (std::abs(cur - prev) <= opt.tolerance * (1.0 + std::abs(cur))) {
        converged = true;
        prev = cur;
        a_end = b - t;
        break;
      }
      prev = cur;
    }
    require(converged, ErrorKind::indeterminate_boundary, "boundary ratio does not converge as t -> 0");
    hi = prev;
    lo = 1.0;
  }
  const double re = std::log(std::abs(hi)) - std::log(std::abs(lo));
  const double im = detail::phase_change(psi, -a_end, a_end);
  return re * re - im * im;
}

inline double fisher_closed_form(const BoundState& psi, double b, const BoundaryLimitOptions& opt = {}) {
  return fisher_closed_form(detail::amplitude_of(psi), b, opt);
}

inline double fisher_closed_form(const ComplexField1D& psi, double b, const BoundaryLimitOptions& opt = {}) {
  return fisher_closed_form(detail::amplitude_of(psi, Outside::automatic), b, opt);
}

struct CrossTermOptions {
  std::size_t intervals = 2048;   // Simpson intervals; must be divisible by 4
  double node_threshold = 1e-10;  // relative to max |psi| on the nodes
};

namespace detail {

struct LogDerivative {
  std::vector<double> w;
  std::vector<complex> dlog;  // psi'/psi
  std::vector<complex> log;   // ln|psi| + i arg psi, continued along the path
};

inline LogDerivative log_derivative(const Amplitude& psi, double a, double b, const CrossTermOptions& opt) {
  require(b > a, ErrorKind::invalid_argument, "interval must satisfy a < b");
  const std::size_t m = opt.intervals;
  require(m >= 8 && m % 4 == 0, ErrorKind::invalid_argument, "Simpson interval count must be a multiple of 4");
  const double h = (b - a) / static_cast<double>(m);
  const double d = 0.25 * h;
  LogDerivative out;
  out.w.resize(m + 1);
  std::vector<complex> v(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    out.w[k] = k == m ? b : a + h * static_cast<double>(k);
    v[k] = psi(out.w[k]);
  }
  double peak = 0.0;
  for (const auto& x : v) peak = std::max(peak, std::abs(x));
  require(peak > 0.0, ErrorKind::degenerate_state, "psi vanishes on the interval");
  for (std::size_t k = 0; k <= m; ++k) {
    require(std::abs(v[k]) >= opt.node_threshold * peak, ErrorKind::node_singularity,
            "psi has a node at w=" + std::to_string(out.w[k]) + "; (ln psi)' is not integrable");
    if (k > 0)
      require(std::abs(std::arg(v[k] / v[k - 1])) <= 0.5 * std::numbers::pi, ErrorKind::node_singularity,
              "phase jump near w=" + std::to_string(out.w[k]) + " indicates a node");
  }
  out.dlog.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const double w = out.w[k];
    complex dp;
    if (k == 0) {
      dp = (-25.0 * v[0] + 48.0 * psi(w + d) - 36.0 * psi(w + 2 * d) + 16.0 * psi(w + 3 * d) - 3.0 * v[1]) / (12.0 * d);
    } else if (k == m) {
      dp = (25.0 * v[m] - 48.0 * psi(w - d) + 36.0 * psi(w - 2 * d) - 16.0 * psi(w - 3 * d) + 3.0 * v[m - 1]) /
           (12.0 * d);
    } else {
      dp = (psi(w - 2 * d) - 8.0 * psi(w - d) + 8.0 * psi(w + d) - psi(w + 2 * d)) / (12.0 * d);
    }
    out.dlog[k] = dp / v[k];
  }
  out.log.resize(m + 1);
  double phase = std::arg(v[0]);
  out.log[0] = {std::log(std::abs(v[0])), phase};
  for (std::size_t k = 1; k <= m; ++k) {
    phase += std::arg(v[k] / v[k - 1]);
    out.log[k] = {std::log(std::abs(v[k])), phase};
  }
  return out;
}

template <class T>
T simpson(const std::vector<T>& f, std::size_t from, std::size_t to, double h) {
  T s = f[from] + f[to];
  for (std::size_t k = from + 1; k < to; ++k) s += ((k - from) % 2 == 1 ? 4.0 : 2.0) * f[k];
  return s * (h / 3.0);
}

}  // namespace detail

/// Product-domain form: Re [integral_a^b psi'/psi dw]^2 by Simpson's rule.
inline double fisher_cross_term(const Amplitude& psi, double a, double b, const CrossTermOptions& opt = {}) {
  const auto d = detail::log_derivative(psi, a, b, opt);
  const complex l = detail::simpson(d.dlog, 0, opt.intervals, (b - a) / static_cast<double>(opt.intervals));
  return (l * l).real();
}

inline double fisher_cross_term(const BoundState& psi, double a, double b, const CrossTermOptions& opt = {}) {
  return fisher_cross_term(detail::amplitude_of(psi), a, b, opt);
}

inline double fisher_cross_term(const ComplexField1D& psi, double a, double b, const CrossTermOptions& opt = {}) {
  return fisher_cross_term(detail::amplitude_of(psi, Outside::automatic), a, b, opt);
}

/// Exact-region form over the diamond |w| + |v| <= b:
/// Re integral_{-b}^{b} (ln psi)'(w) [L(b - |w|) - L(|w| - b)] dw.
inline double fisher_cross_term_diamond(const Amplitude& psi, double b, const CrossTermOptions& opt = {}) {
  const auto d = detail::log_derivative(psi, -b, b, opt);
  const std::size_t m = opt.intervals, half = m / 2;
  std::vector<complex> f(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    // c = b - |w_k| sits on node (k <= half ? k + half : 3m/2 - k), -c on (k <= half ? half - k : k - half)
    const std::size_t up = k <= half ? k + half : 3 * half - k;
    const std::size_t dn = k <= half ? half - k : k - half;
    f[k] = d.dlog[k] * (d.log[up] - d.log[dn]);
  }
  const double h = 2.0 * b / static_cast<double>(m);
  return (detail::simpson(f, 0, half, h) + detail::simpson(f, half, m, h)).real();
}

/// I_quadrature / I_closed_form on the matched rectangle for the calibration
/// profile: analytically 16 / hbar^2.
inline double fisher_calibration_ratio(double hbar) { return 16.0 / (hbar * hbar); }

// ---------------------------------------------------------------------------
// I = 0 check

struct IZeroOptions {
  std::size_t coarse_points = 64;  // per axis; refined level uses 2n
  double tol = 1e-8;
  double min_drop = 3.5;
};

/// Closed form at b = 2 x0 and quadrature on |x| <= x0, |z| <= 2 x0 / hbar.
/// True iff |closed form| <= tol and the refined quadrature is zero relative
/// to its absolute integrand (|I| <= tol * S) or falls by at least min_drop
/// under one refinement.
inline FisherResult check_I_zero(const Amplitude& psi, double x0, double hbar, const IZeroOptions& opt = {}) {
  require(x0 > 0.0 && hbar > 0.0, ErrorKind::invalid_argument, "x0 and hbar must be positive");
  FisherResult r;
  r.hbar = hbar;
  r.x_half_extent = x0;
  r.z_half_extent = 2.0 * x0 / hbar;
  r.b = x0 + 0.5 * hbar * r.z_half_extent;
  r.I_closed_form = fisher_closed_form(psi, r.b);
  double s_coarse = 0.0, excl = 0.0;
  r.I_quadrature_coarse =
      fisher_quadrature(fisher_profile(psi, x0, r.z_half_extent, opt.coarse_points, hbar), &s_coarse);
  r.I_quadrature =
      fisher_quadrature(fisher_profile(psi, x0, r.z_half_extent, 2 * opt.coarse_points, hbar), &r.abs_integral, &excl);
  r.masked_fraction = excl;
  const bool closed_zero = std::abs(r.I_closed_form) <= opt.tol;
  const bool quad_zero = std::abs(r.I_quadrature) <= opt.tol * r.abs_integral ||
                         std::abs(r.I_quadrature_coarse) >= opt.min_drop * std::abs(r.I_quadrature);
  r.verdict = closed_zero && quad_zero;
  return r;
}

inline FisherResult check_I_zero(const StateSpec& spec, double x0, double hbar, const IZeroOptions& opt = {}) {
  const Grid1D g = Grid1D::centered(512, 4.0 * x0 / 512.0);
  // Bind for normalization only when the grid covers the state; the verdict
  // does not depend on the overall scale.
  Amplitude psi;
  try {
    const BoundState bound(spec, g, hbar);
    psi = detail::amplitude_of(bound);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::domain_coverage) throw;
    const auto c = compile(spec, hbar);
    psi = c.position;
  }
  return check_I_zero(psi, x0, hbar, opt);
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Draws grid points with probability proportional to their trapezoid
/// weights (valid points only) and averages the integrand:
/// estimate = (8/hbar) W mean, std_error = (8/hbar) W sd / sqrt(n).
inline MonteCarloEstimate fisher_monte_carlo(const HologramField& f, std::size_t n, std::uint64_t seed) {
  require(n >= 2, ErrorKind::invalid_argument, "Monte Carlo needs at least two samples");
  const auto in = fisher_integrand(f);
  const auto wx = trapezoid_weights(in.values.grid_x);
  const auto wz = trapezoid_weights(in.values.grid_y);
  const std::size_t nz = in.values.ny();
  std::vector<double> cdf(in.values.values.size());
  double total = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    if (in.valid[k]) total += wx[k / nz] * wz[k % nz];
    cdf[k] = total;
  }
  require(total > 0.0, ErrorKind::unreliable_domain, "no valid points for Monte Carlo");
  const CounterRng rng(seed);
  const std::size_t blocks = (n + 4095) / 4096;
  std::vector<double> sum(blocks, 0.0), sum2(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t blk) {
    const std::size_t end = std::min(n, (blk + 1) * 4096);
    for (std::size_t s = blk * 4096; s < end; ++s) {
      const double u = rng.uniform(s) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      const double v = in.values.values[static_cast<std::size_t>(it - cdf.begin())];
      sum[blk] += v;
      sum2[blk] += v * v;
    }
  });
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    s1 += sum[b];
    s2 += sum2[b];
  }
  const double dn = static_cast<double>(n);
  const double mean = s1 / dn;
  const double var = std::max(0.0, (s2 - dn * mean * mean) / (dn - 1.0));
  const double pref = 8.0 / f.hbar;
  return {pref * total * mean, pref * total * std::sqrt(var / dn), n};
}

}  // namespace wigner_lab
