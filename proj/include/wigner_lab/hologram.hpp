#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/fft.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/interpolation.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/rng.hpp"
#include "wigner_lab/states.hpp"
#include "wigner_lab/wigner.hpp"

namespace wigner_lab {

using Amplitude = std::function<complex(double)>;

/// Z, the phase Psi = -i ln Z (complex, unwrapped along z), and the node mask.
/// For pure states Z is the correlation psi*(x - hbar z/2) psi(x + hbar z/2),
/// so exp(i Psi) reproduces Z wherever the mask is clear.
struct HologramField {
  ComplexField2D Z;
  ComplexField2D Psi;
  std::vector<std::uint8_t> mask;  // 1 where Psi is undefined
  double hbar = 1.0;

  bool masked(std::size_t i, std::size_t j) const { return mask[i * Psi.ny() + j] != 0; }

  double masked_fraction() const {
    if (mask.empty()) return 0.0;
    std::size_t n = 0;
    for (auto m : mask) n += m;
    return static_cast<double>(n) / static_cast<double>(mask.size());
  }

  /// Wraps an explicit phase field (no mask); Z is set to exp(i Psi).
  static HologramField from_phase(ComplexField2D psi, double hbar) {
    HologramField f;
    f.Z = ComplexField2D(psi.grid_x, psi.grid_y);
    for (std::size_t k = 0; k < psi.values.size(); ++k) f.Z.values[k] = std::exp(complex{0.0, 1.0} * psi.values[k]);
    f.Psi = std::move(psi);
    f.mask.assign(f.Psi.values.size(), 0);
    f.hbar = hbar;
    return f;
  }
};

// ---------------------------------------------------------------------------
// Transforms between p(x, mu) and Z(x, z)

/// Z(x, z) = integral dmu p(x, mu) exp(i z mu), row by row.
inline ComplexField2D hologram_from_pdf(const RealField2D& p, const ConjugatePair& pair) {
  require(p.grid_y.same_as(pair.reciprocal, 1e-9), ErrorKind::invalid_argument,
          "pdf momentum axis does not match the conjugate pair");
  const double total = integrate_2d(p);
  require(std::abs(total - 1.0) <= 1e-6, ErrorKind::invalid_argument,
          "pdf integrates to " + std::to_string(total) + ", expected 1");
  const Grid1D& mu = p.grid_y;
  const Grid1D& z = pair.direct;
  ComplexField2D out(p.grid_x, z);
  parallel_for(p.nx(), [&](std::size_t i) {
    std::vector<complex> row(p.row(i).begin(), p.row(i).end());
    auto t = fft::grid_fourier(row, mu, z, +1);
    auto dst = out.row(i);
    for (std::size_t k = 0; k < z.count; ++k) dst[k] = mu.step * t[k];
  });
  return out;
}

/// p(x, mu) = (1/2pi) integral dz Z(x, z) exp(-i z mu), imaginary residue
/// checked below 1e-8 relative.
inline RealField2D reconstruct_pdf(const ComplexField2D& Z, const ConjugatePair& pair) {
  require(Z.grid_y.same_as(pair.direct, 1e-9), ErrorKind::invalid_argument,
          "hologram z axis does not match the conjugate pair");
  const Grid1D& z = Z.grid_y;
  const Grid1D& mu = pair.reciprocal;
  ComplexField2D full(Z.grid_x, mu);
  const double scale = z.step / (2.0 * std::numbers::pi);
  parallel_for(Z.nx(), [&](std::size_t i) {
    std::vector<complex> row(Z.row(i).begin(), Z.row(i).end());
    auto t = fft::grid_fourier(row, z, mu, -1);
    auto dst = full.row(i);
    for (std::size_t j = 0; j < mu.count; ++j) dst[j] = scale * t[j];
  });
  return detail::take_real(full, 1e-8, "reconstruct_pdf");
}

// ---------------------------------------------------------------------------
// Pure-state hologram and phase profile

namespace detail {

// Samples f(x_i - a z_k) and f(x_i + a z_k) once for the whole grid.
struct Correlation {
  ComplexField2D minus;  // psi(x - a z)
  ComplexField2D plus;   // psi(x + a z)
};

inline Correlation correlate(const Amplitude& psi, const Grid1D& x, const Grid1D& z, double hbar) {
  x.validate();
  z.validate();
  require(hbar > 0.0, ErrorKind::invalid_argument, "hbar must be positive");
  const double a = 0.5 * hbar;
  Correlation c{ComplexField2D(x, z), ComplexField2D(x, z)};
  parallel_for(x.count, [&](std::size_t i) {
    for (std::size_t k = 0; k < z.count; ++k) {
      c.minus(i, k) = psi(x[i] - a * z[k]);
      c.plus(i, k) = psi(x[i] + a * z[k]);
    }
  });
  return c;
}

inline Amplitude amplitude_of(const ComplexField1D& psi, Outside policy) {
  if (policy == Outside::zero) {
    const CubicInterpolant interp(psi, 1e300);  // every edge counts as negligible
    return [interp](double x) { return interp(x); };
  }
  require(policy == Outside::automatic, ErrorKind::invalid_argument,
          "periodic continuation is not supported for holograms");
  const CubicInterpolant interp(psi);
  return [interp](double x) { return interp(x); };
}

inline Amplitude amplitude_of(const BoundState& psi) {
  return [psi](double x) { return psi(x); };
}

}  // namespace detail

/// Z(x, z) = psi*(x - hbar z/2) psi(x + hbar z/2) evaluated directly.
inline ComplexField2D hologram_from_state(const Amplitude& psi, const Grid1D& x, const Grid1D& z, double hbar) {
  const auto c = detail::correlate(psi, x, z, hbar);
  ComplexField2D out(x, z);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = std::conj(c.minus.values[k]) * c.plus.values[k];
  return out;
}

inline ComplexField2D hologram_from_state(const BoundState& psi, const ConjugatePair& pair) {
  return hologram_from_state(detail::amplitude_of(psi), psi.grid(), pair.direct, pair.hbar);
}

inline ComplexField2D hologram_from_state(const ComplexField1D& psi, const ConjugatePair& pair,
                                          Outside policy = Outside::automatic) {
  return hologram_from_state(detail::amplitude_of(psi, policy), psi.grid, pair.direct, pair.hbar);
}

/// Psi(x, z) = -i ln[psi(x + hbar z/2) psi*(x - hbar z/2)] = arg - i ln|.|.
/// The argument is unwrapped along z, outward from the sample nearest z = 0.
/// Points where either factor is below 1e-12 of the largest evaluated |psi|
/// are masked.
inline HologramField phase_profile(const Amplitude& psi, const Grid1D& x, const Grid1D& z, double hbar) {
  const auto c = detail::correlate(psi, x, z, hbar);
  double peak = 0.0;
  for (const auto& v : c.minus.values) peak = std::max(peak, std::abs(v));
  for (const auto& v : c.plus.values) peak = std::max(peak, std::abs(v));
  require(peak > 0.0, ErrorKind::degenerate_state, "state vanishes on the hologram grid");
  const double threshold = 1e-12 * peak;

  HologramField out;
  out.hbar = hbar;
  out.Z = ComplexField2D(x, z);
  out.Psi = ComplexField2D(x, z);
  out.mask.assign(x.count * z.count, 0);
  const std::size_t center = z.nearest(0.0);

  std::vector<std::size_t> bad_rows;
  std::mutex bad_mutex;
  parallel_for(x.count, [&](std::size_t i) {
    std::vector<double> arg(z.count, 0.0);
    bool any = false;
    for (std::size_t k = 0; k < z.count; ++k) {
      const complex m = c.minus(i, k), p = c.plus(i, k);
      const complex zz = std::conj(m) * p;
      out.Z(i, k) = zz;
      if (std::abs(m) < threshold || std::abs(p) < threshold) {
        out.mask[i * z.count + k] = 1;
        continue;
      }
      any = true;
      arg[k] = std::arg(zz);
    }
    if (!any) {
      std::lock_guard lock(bad_mutex);
      bad_rows.push_back(i);
      return;
    }
    // Unwrap outward in each direction, tracking the last unmasked value.
    auto unwrap = [&](long from, long to, long dir, std::optional<double> last) {
      for (long k = from; k != to; k += dir) {
        const auto kk = static_cast<std::size_t>(k);
        if (out.mask[i * z.count + kk]) continue;
        if (last) {
          double a = arg[kk];
          while (a - *last > std::numbers::pi) a -= 2.0 * std::numbers::pi;
          while (a - *last < -std::numbers::pi) a += 2.0 * std::numbers::pi;
          arg[kk] = a;
        }
        last = arg[kk];
      }
      return last;
    };
    const auto first = unwrap(static_cast<long>(center), static_cast<long>(z.count), +1, std::nullopt);
    std::optional<double> anchor;
    if (!out.mask[i * z.count + center]) anchor = arg[center];
    else if (first) anchor = first;  // center masked: continue from the nearest unmasked point on the right
    unwrap(static_cast<long>(center) - 1, -1, -1, anchor);
    for (std::size_t k = 0; k < z.count; ++k) {
      if (out.mask[i * z.count + k]) {
        out.Psi(i, k) = {0.0, 0.0};
      } else {
        out.Psi(i, k) = {arg[k], -std::log(std::abs(out.Z(i, k)))};
      }
    }
  });
  if (!bad_rows.empty()) {
    std::sort(bad_rows.begin(), bad_rows.end());
    fail(ErrorKind::degenerate_state,
         "psi vanishes along the whole hologram row x=" + std::to_string(x[bad_rows.front()]));
  }
  return out;
}

inline HologramField phase_profile(const BoundState& psi, const Grid1D& x, const Grid1D& z) {
  return phase_profile(detail::amplitude_of(psi), x, z, psi.hbar());
}

inline HologramField phase_profile(const BoundState& psi, const ConjugatePair& pair) {
  return phase_profile(detail::amplitude_of(psi), psi.grid(), pair.direct, pair.hbar);
}

inline HologramField phase_profile(const ComplexField1D& psi, const ConjugatePair& pair,
                                   Outside policy = Outside::automatic) {
  return phase_profile(detail::amplitude_of(psi, policy), psi.grid, pair.direct, pair.hbar);
}

/// max |exp(i Psi) - Z| / max |Z| over unmasked points.
inline double factorization_error(const HologramField& f) {
  double worst = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < f.Z.values.size(); ++k) {
    if (f.mask[k]) continue;
    scale = std::max(scale, std::abs(f.Z.values[k]));
    worst = std::max(worst, std::abs(std::exp(complex{0.0, 1.0} * f.Psi.values[k]) - f.Z.values[k]));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

/// max |Psi_xx - (2/hbar)^2 Psi_zz| over interior points whose five-point
/// stencil is unmasked; second-order central differences.
inline double wave_equation_residual(const HologramField& f) {
  const auto& P = f.Psi;
  const double hx = P.grid_x.step, hz = P.grid_y.step;
  const double c2 = 4.0 / (f.hbar * f.hbar);
  const std::size_t nx = P.nx(), nz = P.ny();
  auto m = [&](std::size_t i, std::size_t j) { return f.mask[i * nz + j] != 0; };
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < nx; ++i)
    for (std::size_t j = 1; j + 1 < nz; ++j) {
      if (m(i, j) || m(i - 1, j) || m(i + 1, j) || m(i, j - 1) || m(i, j + 1)) continue;
      const complex dxx = (P(i + 1, j) - 2.0 * P(i, j) + P(i - 1, j)) / (hx * hx);
      const complex dzz = (P(i, j + 1) - 2.0 * P(i, j) + P(i, j - 1)) / (hz * hz);
      worst = std::max(worst, std::abs(dxx - c2 * dzz));
    }
  return worst;
}

/// P = |Psi|^2 on unmasked points (0 on masked), normalized to unit integral.
inline RealField2D intensity(const HologramField& f) {
  RealField2D p(f.Psi.grid_x, f.Psi.grid_y);
  for (std::size_t k = 0; k < p.values.size(); ++k) p.values[k] = f.mask[k] ? 0.0 : std::norm(f.Psi.values[k]);
  const double total = integrate_2d(p);
  require(total > 0.0 && std::isfinite(total), ErrorKind::degenerate_state, "phase profile is identically zero");
  for (auto& v : p.values) v /= total;
  return p;
}

// ---------------------------------------------------------------------------
// Gedanken measurement

struct PhaseSample {
  double x;
  double z;
};

/// n draws from the cells of P (probability P_ij * hx * hz), with a uniform
/// position inside the chosen cell. Draw k uses stream indices 3k..3k+2, so
/// the output does not depend on the worker count.
inline std::vector<PhaseSample> sample_positions(const RealField2D& P, std::size_t n, std::uint64_t seed) {
  if (n == 0) return {};
  require(P.nx() > 0 && P.ny() > 0, ErrorKind::invalid_argument, "empty intensity field");
  for (double v : P.values)
    require(v >= 0.0 && std::isfinite(v), ErrorKind::invalid_argument, "intensity must be non-negative and finite");
  const double total = integrate_2d(P);
  require(std::abs(total - 1.0) <= 1e-6, ErrorKind::invalid_argument,
          "intensity integrates to " + std::to_string(total) + ", expected 1");
  const double hx = P.grid_x.step, hz = P.grid_y.step;
  std::vector<double> cdf(P.values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += P.values[k] * hx * hz;
    cdf[k] = acc;
  }
  require(acc > 0.0, ErrorKind::invalid_argument, "intensity has no mass");
  const CounterRng rng(seed);
  std::vector<PhaseSample> out(n);
  const std::size_t ny = P.ny();
  parallel_for((n + 1023) / 1024, [&](std::size_t block) {
    const std::size_t end = std::min(n, (block + 1) * 1024);
    for (std::size_t s = block * 1024; s < end; ++s) {
      const double u = rng.uniform(3 * s) * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      const auto cell = static_cast<std::size_t>(it - cdf.begin());
      const std::size_t i = cell / ny, j = cell % ny;
      out[s] = {P.grid_x[i] + (rng.uniform(3 * s + 1) - 0.5) * hx, P.grid_y[j] + (rng.uniform(3 * s + 2) - 0.5) * hz};
    }
  });
  return out;
}

}  // namespace wigner_lab
