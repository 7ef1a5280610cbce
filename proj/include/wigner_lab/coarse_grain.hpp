#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/fft.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/hologram.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/states.hpp"
#include "wigner_lab/wigner.hpp"

namespace wigner_lab {

enum class Axis { momentum, position };

inline std::string_view to_string(Axis a) { return a == Axis::momentum ? "momentum" : "position"; }

/// Gaussian kernel set by the z-domain (or k-domain) factor exp(-sigma^2 z^2 / 2).
/// Along momentum this is a normal density in mu with standard deviation sigma;
/// along position it is a normal density in x with standard deviation hbar*sigma/2.
struct GaussianWidth {
  double sigma = 1.0;
};

/// Explicit odd-length, non-negative, unit-sum kernel on the grid step, centered.
struct TabulatedKernel {
  std::vector<double> weights;
};

struct CoarseGrainSpec {
  Axis axis = Axis::momentum;
  std::variant<GaussianWidth, TabulatedKernel> kernel = GaussianWidth{};
  /// f_X(x) on the x grid (momentum axis) or f_M(mu) on the mu grid
  /// (position axis). Empty means uniform 1.
  std::vector<double> magnitude;
};

enum class ConvolutionMethod { fft, direct };

// ---------------------------------------------------------------------------
// Kernels

/// Samples of a centered normal density with standard deviation `sd` at
/// offsets m*step, |m| <= ceil(8 sd / step), normalized by their sum, then
/// truncated to |m| <= max_offset.
inline std::vector<double> gaussian_kernel(double sd, double step, std::size_t max_offset) {
  require(sd > 0.0 && std::isfinite(sd), ErrorKind::invalid_argument, "kernel width must be positive");
  const double reach = std::ceil(8.0 * sd / step);
  const auto full = static_cast<std::size_t>(std::min(reach, 1e8));
  std::vector<double> k(2 * full + 1);
  for (std::size_t m = 0; m <= full; ++m) {
    const double u = static_cast<double>(m) * step / sd;
    k[full + m] = k[full - m] = std::exp(-0.5 * u * u);
  }
  const double total = pairwise_sum<double>(k);
  for (auto& v : k) v /= total;
  if (full <= max_offset) return k;
  return std::vector<double>(k.begin() + static_cast<long>(full - max_offset),
                             k.begin() + static_cast<long>(full + max_offset + 1));
}

inline void validate_kernel(const std::vector<double>& k) {
  require(k.size() % 2 == 1, ErrorKind::invalid_argument, "tabulated kernel length must be odd");
  double s = 0.0;
  for (double v : k) {
    require(v >= 0.0 && std::isfinite(v), ErrorKind::invalid_argument, "tabulated kernel must be non-negative");
    s += v;
  }
  require(std::abs(s - 1.0) <= 1e-12, ErrorKind::invalid_argument, "tabulated kernel must sum to 1");
}

/// Induced kernel standard deviation in the convolved coordinate.
inline double kernel_sd(const GaussianWidth& g, Axis axis, double hbar) {
  return axis == Axis::momentum ? g.sigma : 0.5 * hbar * g.sigma;
}

namespace detail {

inline std::vector<double> kernel_for(const CoarseGrainSpec& spec, double step, std::size_t n, double hbar) {
  if (const auto* g = std::get_if<GaussianWidth>(&spec.kernel)) {
    require(g->sigma > 0.0, ErrorKind::invalid_argument, "sigma must be positive");
    return gaussian_kernel(kernel_sd(*g, spec.axis, hbar), step, n - 1);
  }
  const auto& t = std::get<TabulatedKernel>(spec.kernel);
  validate_kernel(t.weights);
  return t.weights;
}

inline std::vector<double> convolve(std::span<const double> s, std::span<const double> k, ConvolutionMethod m) {
  return m == ConvolutionMethod::fft ? fft::convolve_same(s, k) : fft::convolve_same_direct(s, k);
}

inline std::vector<double> magnitude_or_ones(const std::vector<double>& m, std::size_t n, const char* what) {
  if (m.empty()) return std::vector<double>(n, 1.0);
  require(m.size() == n, ErrorKind::invalid_argument, std::string(what) + " profile does not match the grid");
  for (double v : m) require(v >= 0.0 && std::isfinite(v), ErrorKind::invalid_argument,
                             std::string(what) + " profile must be non-negative");
  return m;
}

// Continuum mass of the weighted field: sum_i w_i f(row_i) * marginal(row_i).
inline double weighted_mass(const std::vector<double>& weights, const RealField1D& marginal) {
  const auto w = trapezoid_weights(marginal.grid);
  std::vector<double> terms(marginal.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = w[i] * weights[i] * marginal[i];
  return pairwise_sum<double>(terms);
}

}  // namespace detail

/// g(x, mu) = (1/2pi) integral dz exp(-i z mu) |Z(x, z)| per row.
inline RealField2D kernel_from_magnitude(const RealField2D& magnitude, const ConjugatePair& pair) {
  require(magnitude.grid_y.same_as(pair.direct, 1e-9), ErrorKind::invalid_argument,
          "magnitude z axis does not match the conjugate pair");
  ComplexField2D z(magnitude.grid_x, magnitude.grid_y);
  for (std::size_t k = 0; k < z.values.size(); ++k) {
    require(magnitude.values[k] >= 0.0, ErrorKind::invalid_argument, "hologram magnitude must be non-negative");
    z.values[k] = magnitude.values[k];
  }
  return reconstruct_pdf(z, pair);
}

/// |Z(x, z)| = f_X(x) exp(-sigma^2 z^2 / 2) on the given grids.
inline RealField2D gaussian_magnitude(const Grid1D& x, const Grid1D& z, double sigma,
                                      const std::vector<double>& f_x = {}) {
  const auto f = detail::magnitude_or_ones(f_x, x.count, "f_X");
  RealField2D m(x, z);
  for (std::size_t i = 0; i < x.count; ++i)
    for (std::size_t k = 0; k < z.count; ++k) m(i, k) = f[i] * std::exp(-0.5 * sigma * sigma * z[k] * z[k]);
  return m;
}

// ---------------------------------------------------------------------------
// One-dimensional coarse graining

/// p(x, mu) = f_X(x) * integral dmu' g(mu - mu') W(x, mu'), normalized by the
/// continuum mass integral dx f_X(x) integral dmu W(x, mu).
inline RealField2D convolve_mu(const WignerField& w, const CoarseGrainSpec& spec,
                               ConvolutionMethod method = ConvolutionMethod::fft) {
  require(spec.axis == Axis::momentum, ErrorKind::invalid_argument, "convolve_mu needs a momentum-axis spec");
  const auto& f = w.base;
  const auto kernel = detail::kernel_for(spec, f.grid_y.step, f.ny(), w.hbar);
  require(kernel.size() <= 2 * f.ny() - 1, ErrorKind::invalid_argument, "kernel longer than the momentum grid");
  const auto fx = detail::magnitude_or_ones(spec.magnitude, f.nx(), "f_X");
  const double mass = detail::weighted_mass(fx, marginals(w).first);
  require(mass > 0.0, ErrorKind::degenerate_state, "weighted field has no mass");
  RealField2D out(f.grid_x, f.grid_y);
  parallel_for(f.nx(), [&](std::size_t i) {
    auto r = detail::convolve(f.row(i), kernel, method);
    auto dst = out.row(i);
    const double s = fx[i] / mass;
    for (std::size_t j = 0; j < f.ny(); ++j) dst[j] = s * r[j];
  });
  return out;
}

/// p(x, mu) = f_M(mu) * integral dk g(x - k) W(k, mu), normalized likewise.
inline RealField2D convolve_x(const WignerField& w, const CoarseGrainSpec& spec,
                              ConvolutionMethod method = ConvolutionMethod::fft) {
  require(spec.axis == Axis::position, ErrorKind::invalid_argument, "convolve_x needs a position-axis spec");
  const auto& f = w.base;
  const auto kernel = detail::kernel_for(spec, f.grid_x.step, f.nx(), w.hbar);
  require(kernel.size() <= 2 * f.nx() - 1, ErrorKind::invalid_argument, "kernel longer than the position grid");
  const auto fm = detail::magnitude_or_ones(spec.magnitude, f.ny(), "f_M");
  const double mass = detail::weighted_mass(fm, marginals(w).second);
  require(mass > 0.0, ErrorKind::degenerate_state, "weighted field has no mass");
  RealField2D out(f.grid_x, f.grid_y);
  parallel_for(f.ny(), [&](std::size_t j) {
    std::vector<double> col(f.nx());
    for (std::size_t i = 0; i < f.nx(); ++i) col[i] = f(i, j);
    auto r = detail::convolve(col, kernel, method);
    const double s = fm[j] / mass;
    for (std::size_t i = 0; i < f.nx(); ++i) out(i, j) = s * r[i];
  });
  return out;
}

inline RealField2D coarse_grain(const WignerField& w, const CoarseGrainSpec& spec,
                                ConvolutionMethod method = ConvolutionMethod::fft) {
  return spec.axis == Axis::momentum ? convolve_mu(w, spec, method) : convolve_x(w, spec, method);
}

/// The momentum-axis coarse graining done through the hologram instead:
/// reconstruct_pdf(hologram_from_pdf(W) * f_X(x) exp(-sigma^2 z^2 / 2)), with
/// the same normalization as convolve_mu.
inline RealField2D convolve_mu_by_hologram(const WignerField& w, const ConjugatePair& pair, double sigma,
                                           const std::vector<double>& f_x = {}) {
  auto z = hologram_from_pdf(w.base, pair);
  const auto mag = gaussian_magnitude(z.grid_x, z.grid_y, sigma, f_x);
  for (std::size_t k = 0; k < z.values.size(); ++k) z.values[k] *= mag.values[k];
  auto p = reconstruct_pdf(z, pair);
  const auto fx = detail::magnitude_or_ones(f_x, w.base.nx(), "f_X");
  const double mass = detail::weighted_mass(fx, marginals(w).first);
  for (auto& v : p.values) v /= mass;
  return p;
}

/// Separable Gaussian smoothing with standard deviations sigma_x and sigma_mu
/// applied directly in x and mu; normalized to the integral of W.
inline RealField2D coarse_grain_2d(const WignerField& w, double sigma_x, double sigma_mu) {
  require(sigma_x > 0.0 && sigma_mu > 0.0, ErrorKind::invalid_argument, "2D kernel widths must be positive");
  const auto& f = w.base;
  const auto kx = gaussian_kernel(sigma_x, f.grid_x.step, f.nx() - 1);
  const auto km = gaussian_kernel(sigma_mu, f.grid_y.step, f.ny() - 1);
  RealField2D tmp(f.grid_x, f.grid_y), out(f.grid_x, f.grid_y);
  parallel_for(f.nx(), [&](std::size_t i) {
    auto r = fft::convolve_same(f.row(i), km);
    std::copy(r.begin(), r.end(), tmp.row(i).begin());
  });
  parallel_for(f.ny(), [&](std::size_t j) {
    std::vector<double> col(f.nx());
    for (std::size_t i = 0; i < f.nx(); ++i) col[i] = tmp(i, j);
    auto r = fft::convolve_same(col, kx);
    for (std::size_t i = 0; i < f.nx(); ++i) out(i, j) = r[i];
  });
  const double mass = integrate_2d(f);
  for (auto& v : out.values) v /= mass;
  return out;
}

// ---------------------------------------------------------------------------
// Positivity

struct PositivityReport {
  double min_value = 0.0;
  double min_x = 0.0;
  double min_y = 0.0;
  double max_abs = 0.0;
  double negative_mass_fraction = 0.0;
  double epsilon = 0.0;
  bool positive = true;
};

// Transformed fields carry negative roundoff of order 1e-14 relative even
// where the exact field is non-negative; the verdict never demands more than this.
inline constexpr double kPositivityFloor = 1e-12;

/// positive <=> min >= -max(epsilon, kPositivityFloor) * max|p|
inline PositivityReport positivity_report(const RealField2D& p, double epsilon) {
  require(epsilon >= 0.0, ErrorKind::invalid_argument, "epsilon must be non-negative");
  PositivityReport r;
  r.epsilon = epsilon;
  std::size_t at = 0;
  r.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    const double v = p.values[k];
    if (v < r.min_value) {
      r.min_value = v;
      at = k;
    }
    r.max_abs = std::max(r.max_abs, std::abs(v));
  }
  r.min_x = p.grid_x[at / p.ny()];
  r.min_y = p.grid_y[at % p.ny()];
  RealField2D neg(p.grid_x, p.grid_y), mag(p.grid_x, p.grid_y);
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    neg.values[k] = std::max(0.0, -p.values[k]);
    mag.values[k] = std::abs(p.values[k]);
  }
  const double total = integrate_2d(mag);
  r.negative_mass_fraction = total > 0.0 ? integrate_2d(neg) / total : 0.0;
  r.positive = r.min_value >= -std::max(epsilon, kPositivityFloor) * r.max_abs;
  return r;
}

// ---------------------------------------------------------------------------
// Large-sigma limits

/// Smallest symmetric half-width L (a grid |coordinate|) such that the mass of
/// the density outside [-L, L] is at most `tail`.
inline double extent_of(const RealField1D& density, double tail = 1e-6) {
  const auto& g = density.grid;
  std::vector<std::size_t> order(g.count);
  for (std::size_t k = 0; k < g.count; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(g[a]) > std::abs(g[b]) || (std::abs(g[a]) == std::abs(g[b]) && a < b);
  });
  double total = 0.0;
  for (double v : density.values) total += v;
  total *= g.step;
  double outside = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    // all points with the same |x| form one step of L
    const double a = std::abs(g[order[k]]);
    double add = 0.0;
    std::size_t e = k;
    while (e < order.size() && std::abs(g[order[e]]) == a) add += density[order[e++]] * g.step;
    if ((outside + add) > tail * total) return a;
    outside += add;
    k = e;
  }
  return 0.0;
}

struct StateExtents {
  double x = 0.0;
  double mu = 0.0;
};

inline StateExtents state_extents(const StateSpec& spec, const Grid1D& x_grid, const ConjugatePair& pair) {
  const auto psi = sample_position(BoundState(spec, x_grid, pair.hbar));
  const auto phi = sample_momentum(spec, x_grid, pair);
  RealField1D dx(psi.grid), dm(phi.grid);
  for (std::size_t k = 0; k < psi.size(); ++k) dx[k] = std::norm(psi[k]);
  for (std::size_t k = 0; k < phi.size(); ++k) dm[k] = std::norm(phi[k]);
  return {extent_of(dx), extent_of(dm)};
}

using RealFunction = std::function<double(double)>;

struct LimitCheckOptions {
  std::size_t lag_points = 401;    // trapezoid nodes over [-10/sigma, 10/sigma]
  std::size_t probe_points = 33;   // per axis, over [-Lx, Lx] x [-Lmu, Lmu]
};

namespace detail {

// sup |scale * p - limit| / max limit over the probe rectangle, where
// p(r, s) = c * f(r) * integral dt exp(-sigma^2 t^2 / 2) exp(-i t s / u) A(r, t)
// and the expected limit is f(r) * lim(r).
template <class Corr, class Lim>
double limit_deviation(Corr&& corr, Lim&& limit, const RealFunction& weight, double sigma, double scale,
                       double phase_scale, double row_extent, double col_extent, const LimitCheckOptions& opt) {
  require(sigma > 0.0, ErrorKind::invalid_argument, "sigma must be positive");
  require(opt.lag_points >= 3 && opt.probe_points >= 2, ErrorKind::invalid_argument, "too few quadrature points");
  const Grid1D t{-10.0 / sigma, 20.0 / sigma / static_cast<double>(opt.lag_points - 1), opt.lag_points};
  const auto tw = trapezoid_weights(t);
  const std::size_t np = opt.probe_points;
  auto probe = [&](double ext, std::size_t k) { return -ext + 2.0 * ext * static_cast<double>(k) / (np - 1); };
  std::vector<double> worst(np, 0.0), peak(np, 0.0);
  parallel_for(np, [&](std::size_t a) {
    const double r = probe(row_extent, a);
    std::vector<complex> c(t.count);
    for (std::size_t k = 0; k < t.count; ++k) c[k] = tw[k] * std::exp(-0.5 * sigma * sigma * t[k] * t[k]) * corr(r, t[k]);
    const double target = weight(r) * limit(r);
    peak[a] = std::abs(target);
    for (std::size_t b = 0; b < np; ++b) {
      const double s = probe(col_extent, b);
      complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < t.count; ++k) acc += c[k] * std::polar(1.0, -phase_scale * t[k] * s);
      const double value = scale * weight(r) * acc.real();
      worst[a] = std::max(worst[a], std::abs(value - target));
    }
  });
  const double top = *std::max_element(peak.begin(), peak.end());
  require(top > 0.0, ErrorKind::degenerate_state, "limit profile vanishes on the probe rectangle");
  return *std::max_element(worst.begin(), worst.end()) / top;
}

}  // namespace detail

/// Momentum-axis limit: sigma sqrt(2pi) p(x, mu) -> f_X(x) |psi(x)|^2 where
/// p = (1/2pi) f_X(x) integral dz exp(-sigma^2 z^2/2) exp(-i z mu) psi*(x - hbar z/2) psi(x + hbar z/2).
inline double limit_check_mu(const BoundState& psi, const RealFunction& f_x, double sigma, double x_extent,
                             double mu_extent, const LimitCheckOptions& opt = {}) {
  const double a = 0.5 * psi.hbar();
  return detail::limit_deviation(
      [&](double x, double z) { return std::conj(psi(x - a * z)) * psi(x + a * z); },
      [&](double x) { return std::norm(psi(x)); }, f_x, sigma,
      sigma * std::sqrt(2.0 * std::numbers::pi) / (2.0 * std::numbers::pi), 1.0, x_extent, mu_extent, opt);
}

/// Position-axis limit with the k-domain factor exp(-sigma^2 k^2/2):
/// p = (1/pi hbar) f_M(mu) integral dk exp(-sigma^2 k^2/2) exp(-2 i x k/hbar) phi*(mu + k) phi(mu - k),
/// and sigma hbar sqrt(pi/2) p(x, mu) -> f_M(mu) |phi(mu)|^2.
inline double limit_check_x(const std::function<complex(double)>& phi, double hbar, const RealFunction& f_m,
                            double sigma, double x_extent, double mu_extent, const LimitCheckOptions& opt = {}) {
  return detail::limit_deviation(
      [&](double mu, double k) { return std::conj(phi(mu + k)) * phi(mu - k); },
      [&](double mu) { return std::norm(phi(mu)); }, f_m, sigma,
      sigma * hbar * std::sqrt(0.5 * std::numbers::pi) / (std::numbers::pi * hbar), 2.0 / hbar, mu_extent, x_extent,
      opt);
}

inline double limit_check_x(const BoundState& psi, const RealFunction& f_m, double sigma, double x_extent,
                            double mu_extent, const LimitCheckOptions& opt = {}) {
  return limit_check_x([&psi](double p) { return psi.momentum(p); }, psi.hbar(), f_m, sigma, x_extent, mu_extent,
                       opt);
}

struct LimitLadder {
  std::vector<double> sigmas;
  std::vector<double> deviations;
  bool strictly_decreasing = false;
};

/// Deviations at sigma = {10, 30, 100} x the relevant extent (mu-extent for
/// the momentum axis, x-extent for the position axis).
inline LimitLadder limit_ladder(const StateSpec& spec, Axis axis, const PhaseSpaceGrid& grid,
                                const RealFunction& weight = [](double) { return 1.0; },
                                const std::vector<double>& multiples = {10.0, 30.0, 100.0}) {
  const BoundState psi(spec, grid.x_grid(), grid.hbar);
  const auto ext = state_extents(spec, grid.x_grid(), grid.pair());
  LimitLadder out;
  const double base = axis == Axis::momentum ? ext.mu : ext.x;
  for (double m : multiples) {
    const double s = m * base;
    out.sigmas.push_back(s);
    out.deviations.push_back(axis == Axis::momentum ? limit_check_mu(psi, weight, s, ext.x, ext.mu)
                                                    : limit_check_x(psi, weight, s, ext.x, ext.mu));
  }
  out.strictly_decreasing = true;
  for (std::size_t k = 1; k < out.deviations.size(); ++k)
    out.strictly_decreasing = out.strictly_decreasing && out.deviations[k] < out.deviations[k - 1];
  return out;
}

// ---------------------------------------------------------------------------
// Minimum grain size

class BracketingError : public Error {
 public:
  BracketingError(const std::string& message, PositivityReport lo, PositivityReport hi)
      : Error(ErrorKind::bracketing, message), lo_(lo), hi_(hi) {}
  const PositivityReport& lo() const { return lo_; }
  const PositivityReport& hi() const { return hi_; }

 private:
  PositivityReport lo_, hi_;
};

struct GrainSweepPoint {
  double sigma;
  double min_over_max;  // min / max|p|
  bool positive;
};

struct GrainSizeResult {
  double sigma_min = 0.0;
  double bracket_lo = 0.0;  // largest sigma known negative (== sigma_min if degenerate)
  double bracket_hi = 0.0;
  PositivityReport report;  // at sigma_min
  std::vector<GrainSweepPoint> sweep;
  std::vector<double> monotonicity_violations;  // negative sigmas above an already positive one
  std::size_t evaluations = 0;
};

struct GrainSizeOptions {
  double lo = 0.05;
  double hi = 500.0;
  std::size_t sweep_points = 25;
  double relative_width = 1e-3;
};

/// Smallest sigma (to relative width opt.relative_width) whose 1D coarse
/// graining along `axis` is epsilon-positive. A log-spaced sweep locates the
/// first sign change and records any later return to negative; bisection in
/// log sigma then refines that bracket.
inline GrainSizeResult min_grain_size(const StateSpec& state, Axis axis, double epsilon, const PhaseSpaceGrid& grid,
                                      const GrainSizeOptions& opt = {}) {
  require(epsilon >= 0.0, ErrorKind::invalid_argument, "epsilon must be non-negative");
  require(opt.lo > 0.0 && opt.hi > opt.lo, ErrorKind::invalid_argument, "sigma range must satisfy 0 < lo < hi");
  require(opt.sweep_points >= 2, ErrorKind::invalid_argument, "sweep needs at least two points");
  const auto w = wigner_transform(state, grid);
  GrainSizeResult res;
  auto eval = [&](double sigma) {
    ++res.evaluations;
    CoarseGrainSpec spec{axis, GaussianWidth{sigma}, {}};
    return positivity_report(coarse_grain(w, spec), epsilon);
  };
  auto ratio = [](const PositivityReport& r) { return r.max_abs > 0.0 ? r.min_value / r.max_abs : 0.0; };

  const auto rep_lo = eval(opt.lo);
  if (rep_lo.positive) {
    res.sigma_min = res.bracket_lo = res.bracket_hi = opt.lo;
    res.report = rep_lo;
    res.sweep.push_back({opt.lo, ratio(rep_lo), true});
    return res;
  }
  const auto rep_hi = eval(opt.hi);
  if (!rep_hi.positive) {
    throw BracketingError("no epsilon-positive coarse graining in sigma range [" + std::to_string(opt.lo) + ", " +
                              std::to_string(opt.hi) + "]",
                          rep_lo, rep_hi);
  }

  const double llo = std::log(opt.lo), lhi = std::log(opt.hi);
  const std::size_t n = opt.sweep_points;
  std::vector<PositivityReport> reports(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = k == 0 ? opt.lo : k + 1 == n ? opt.hi : std::exp(llo + (lhi - llo) * k / (n - 1.0));
    reports[k] = k == 0 ? rep_lo : k + 1 == n ? rep_hi : eval(s);
    res.sweep.push_back({s, ratio(reports[k]), reports[k].positive});
  }
  std::size_t first = n - 1;
  for (std::size_t k = 0; k < n; ++k)
    if (res.sweep[k].positive) {
      first = k;
      break;
    }
  for (std::size_t k = first + 1; k < n; ++k)
    if (!res.sweep[k].positive) res.monotonicity_violations.push_back(res.sweep[k].sigma);

  double a = res.sweep[first - 1].sigma, b = res.sweep[first].sigma;
  PositivityReport rb = reports[first];
  while (b / a - 1.0 > opt.relative_width) {
    const double m = std::sqrt(a * b);
    const auto rm = eval(m);
    if (rm.positive) {
      b = m;
      rb = rm;
    } else {
      a = m;
    }
  }
  res.sigma_min = b;
  res.bracket_lo = a;
  res.bracket_hi = b;
  res.report = rb;
  return res;
}

}  // namespace wigner_lab
