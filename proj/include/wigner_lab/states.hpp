#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/fft.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/interpolation.hpp"

namespace wigner_lab {

// ---------------------------------------------------------------------------
// State descriptions

/// (pi s^2)^(-1/4) exp(-(x-center)^2/(2 s^2)) exp(i momentum x/hbar) exp(i chirp x^2/2)
struct Gaussian {
  double center = 0.0;
  double width = 1.0;
  double momentum = 0.0;
  double chirp = 0.0;
};

/// n-th Hermite function with length scale `width`.
struct HarmonicOscillator {
  unsigned n = 0;
  double width = 1.0;
};

/// b^(-1/2) cos(n pi x / 2b) on [-b, b], zero outside; n odd.
struct BoxMode {
  unsigned n = 1;
  double halfwidth = 1.0;
};

struct StateSpec;
struct SuperpositionTerm;

struct Superposition {
  std::vector<SuperpositionTerm> terms;
};

struct Tabulated {
  Grid1D grid;
  std::vector<complex> values;
};

struct StateSpec {
  std::variant<Gaussian, HarmonicOscillator, BoxMode, Superposition, Tabulated> value;
};

struct SuperpositionTerm {
  complex coefficient{1.0, 0.0};
  StateSpec state;
};

inline StateSpec make_cat_state(double separation_half, double width = 1.0) {
  Superposition s;
  s.terms.push_back({complex{1.0, 0.0}, StateSpec{Gaussian{-separation_half, width, 0.0, 0.0}}});
  s.terms.push_back({complex{1.0, 0.0}, StateSpec{Gaussian{separation_half, width, 0.0, 0.0}}});
  return StateSpec{s};
}

inline void validate(const StateSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          require(s.width > 0.0 && std::isfinite(s.width), ErrorKind::invalid_argument, "Gaussian width must be positive");
          require(std::isfinite(s.center) && std::isfinite(s.momentum) && std::isfinite(s.chirp),
                  ErrorKind::invalid_argument, "Gaussian parameters must be finite");
        } else if constexpr (std::is_same_v<T, HarmonicOscillator>) {
          require(s.width > 0.0 && std::isfinite(s.width), ErrorKind::invalid_argument,
                  "oscillator width must be positive");
        } else if constexpr (std::is_same_v<T, BoxMode>) {
          require(s.halfwidth > 0.0 && std::isfinite(s.halfwidth), ErrorKind::invalid_argument,
                  "box halfwidth must be positive");
          require(s.n % 2 == 1, ErrorKind::invalid_argument, "box mode index must be odd");
        } else if constexpr (std::is_same_v<T, Superposition>) {
          require(!s.terms.empty(), ErrorKind::invalid_argument, "superposition needs at least one term");
          for (const auto& t : s.terms) {
            require(std::isfinite(t.coefficient.real()) && std::isfinite(t.coefficient.imag()),
                    ErrorKind::invalid_argument, "superposition coefficient must be finite");
            validate(t.state);
          }
        } else {
          s.grid.validate();
          require(s.values.size() == s.grid.count, ErrorKind::invalid_argument,
                  "tabulated values do not match grid");
          require(all_finite(s.values), ErrorKind::invalid_argument, "tabulated values must be finite");
        }
      },
      spec.value);
}

inline std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          os << "Gaussian(center=" << s.center << ", width=" << s.width << ", momentum=" << s.momentum
             << ", chirp=" << s.chirp << ")";
        } else if constexpr (std::is_same_v<T, HarmonicOscillator>) {
          os << "HarmonicOscillator(n=" << s.n << ", width=" << s.width << ")";
        } else if constexpr (std::is_same_v<T, BoxMode>) {
          os << "BoxMode(n=" << s.n << ", b=" << s.halfwidth << ")";
        } else if constexpr (std::is_same_v<T, Superposition>) {
          os << "Superposition(" << s.terms.size() << " terms)";
        } else {
          os << "Tabulated(" << s.grid.count << " samples)";
        }
      },
      spec.value);
  return os.str();
}

// ---------------------------------------------------------------------------
// Closed forms

namespace analytic {

/// Normalized Hermite function h_n(y) = (2^n n! sqrt(pi))^(-1/2) H_n(y) e^(-y^2/2),
/// by the stable three-term recurrence.
inline double hermite_function(unsigned n, double y) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  for (unsigned k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline complex gaussian_position(const Gaussian& g, double x, double hbar) {
  const double d = (x - g.center) / g.width;
  const double amp = std::pow(std::numbers::pi * g.width * g.width, -0.25) * std::exp(-0.5 * d * d);
  return std::polar(amp, g.momentum * x / hbar + 0.5 * g.chirp * x * x);
}

/// (2 pi hbar)^(-1/2) * integral dx psi(x) exp(-i p x / hbar) of the Gaussian.
inline complex gaussian_momentum(const Gaussian& g, double p, double hbar) {
  const double a = 0.5 / (g.width * g.width);
  const complex big_a{a, -0.5 * g.chirp};
  const complex big_b{2.0 * a * g.center, (g.momentum - p) / hbar};
  const double c0 = -a * g.center * g.center;
  const double norm = std::pow(std::numbers::pi * g.width * g.width, -0.25) / std::sqrt(2.0 * std::numbers::pi * hbar);
  return norm * std::sqrt(std::numbers::pi / big_a) * std::exp(big_b * big_b / (4.0 * big_a) + c0);
}

inline complex oscillator_position(const HarmonicOscillator& h, double x) {
  return {hermite_function(h.n, x / h.width) / std::sqrt(h.width), 0.0};
}

inline complex oscillator_momentum(const HarmonicOscillator& h, double p, double hbar) {
  static const complex phases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const double scale = h.width / hbar;
  return phases[h.n % 4] * (hermite_function(h.n, p * scale) * std::sqrt(scale));
}

inline complex box_position(const BoxMode& b, double x) {
  if (std::abs(x) > b.halfwidth) return {0.0, 0.0};
  return {std::cos(b.n * std::numbers::pi * x / (2.0 * b.halfwidth)) / std::sqrt(b.halfwidth), 0.0};
}

}  // namespace analytic

// ---------------------------------------------------------------------------
// Evaluation

/// Position amplitude and, where the catalog has one, the closed-form
/// momentum partner. Primitives are normalized analytically; superpositions
/// and tabulated states are raw.
struct CompiledState {
  std::function<complex(double)> position;
  std::function<complex(double)> momentum;  // empty when no closed form exists
};

inline CompiledState compile(const StateSpec& spec, double hbar) {
  return std::visit(
      [hbar](const auto& s) -> CompiledState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return {[s, hbar](double x) { return analytic::gaussian_position(s, x, hbar); },
                  [s, hbar](double p) { return analytic::gaussian_momentum(s, p, hbar); }};
        } else if constexpr (std::is_same_v<T, HarmonicOscillator>) {
          return {[s](double x) { return analytic::oscillator_position(s, x); },
                  [s, hbar](double p) { return analytic::oscillator_momentum(s, p, hbar); }};
        } else if constexpr (std::is_same_v<T, BoxMode>) {
          return {[s](double x) { return analytic::box_position(s, x); }, {}};
        } else if constexpr (std::is_same_v<T, Superposition>) {
          std::vector<std::pair<complex, CompiledState>> parts;
          bool closed = true;
          for (const auto& t : s.terms) {
            parts.emplace_back(t.coefficient, compile(t.state, hbar));
            closed = closed && static_cast<bool>(parts.back().second.momentum);
          }
          auto shared = std::make_shared<const decltype(parts)>(std::move(parts));
          CompiledState out;
          out.position = [shared](double x) {
            complex acc{0.0, 0.0};
            for (const auto& [c, st] : *shared) acc += c * st.position(x);
            return acc;
          };
          if (closed) {
            out.momentum = [shared](double p) {
              complex acc{0.0, 0.0};
              for (const auto& [c, st] : *shared) acc += c * st.momentum(p);
              return acc;
            };
          }
          return out;
        } else {
          CubicInterpolant interp(ComplexField1D(s.grid, s.values));
          return {[interp](double x) { return interp(x); }, {}};
        }
      },
      spec.value);
}

namespace detail {

// Estimated probability outside the grid, per primitive. Superposition terms
// are checked individually; tabulated states are checked on evaluation.
inline void check_coverage(const StateSpec& spec, const Grid1D& grid, double hbar) {
  constexpr double max_tail = 1e-6;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian> || std::is_same_v<T, HarmonicOscillator>) {
          const auto st = compile(StateSpec{s}, hbar);
          double mass = 0.0;
          for (std::size_t k = 0; k < grid.count; ++k) mass += std::norm(st.position(grid[k]));
          mass *= grid.step;
          require(1.0 - mass <= max_tail, ErrorKind::domain_coverage,
                  "grid misses " + std::to_string(1.0 - mass) + " of the probability of " + describe(StateSpec{s}));
        } else if constexpr (std::is_same_v<T, BoxMode>) {
          const double tol = 1e-9 * s.halfwidth;
          require(grid.front() <= -s.halfwidth + tol && grid.back() + grid.step >= s.halfwidth - tol,
                  ErrorKind::domain_coverage, "grid must cover the box [-b, b]");
        } else if constexpr (std::is_same_v<T, Superposition>) {
          for (const auto& t : s.terms) check_coverage(t.state, grid, hbar);
        }
      },
      spec.value);
}

}  // namespace detail

/// A state bound to a sampling grid: amplitudes are scaled so that
/// sum |psi_k|^2 * step = 1 on that grid. Evaluation anywhere (on or off the
/// grid) uses the same scale.
class BoundState {
 public:
  BoundState(const StateSpec& spec, const Grid1D& grid, double hbar = 1.0)
      : spec_(std::make_shared<const StateSpec>(spec)), grid_(grid), hbar_(hbar) {
    validate(spec);
    grid.validate();
    require(hbar > 0.0, ErrorKind::invalid_argument, "hbar must be positive");
    detail::check_coverage(spec, grid, hbar);
    compiled_ = compile(spec, hbar);
    double mass = 0.0;
    for (std::size_t k = 0; k < grid.count; ++k) mass += std::norm(compiled_.position(grid[k]));
    mass *= grid.step;
    require(mass > 0.0 && std::isfinite(mass), ErrorKind::degenerate_state, "state vanishes on the grid");
    scale_ = 1.0 / std::sqrt(mass);
  }

  complex operator()(double x) const { return scale_ * compiled_.position(x); }

  bool has_closed_form_momentum() const { return static_cast<bool>(compiled_.momentum); }

  complex momentum(double p) const {
    require(has_closed_form_momentum(), ErrorKind::invalid_argument,
            "no closed-form momentum amplitude for " + describe(*spec_));
    return scale_ * compiled_.momentum(p);
  }

  const StateSpec& spec() const { return *spec_; }
  const Grid1D& grid() const { return grid_; }
  double hbar() const { return hbar_; }
  double scale() const { return scale_; }

 private:
  std::shared_ptr<const StateSpec> spec_;
  Grid1D grid_;
  double hbar_;
  double scale_ = 1.0;
  CompiledState compiled_;
};

/// Momentum amplitude of a bound state as a callable.
struct MomentumAmplitude {
  const BoundState* state;
  complex operator()(double p) const { return state->momentum(p); }
};

// ---------------------------------------------------------------------------
// Phase-space grids

/// z axis conjugate to momentum for a given position grid: step 2*dx/hbar,
/// so x +- hbar*z/2 lands on position samples. Its reciprocal is the
/// momentum grid with step pi*hbar/(N*dx).
inline ConjugatePair phase_space_pair(const Grid1D& x_grid, double hbar) {
  x_grid.validate();
  require(hbar > 0.0, ErrorKind::invalid_argument, "hbar must be positive");
  return make_conjugate_pair(Grid1D::centered(x_grid.count, 2.0 * x_grid.step / hbar), hbar);
}

/// Centered position grid matching a pair built by phase_space_pair.
inline Grid1D position_grid(const ConjugatePair& pair) {
  return Grid1D::centered(pair.direct.count, 0.5 * pair.hbar * pair.direct.step);
}

/// Square phase-space sampling: N points on [-extent, extent) and the
/// matching conjugate grids.
struct PhaseSpaceGrid {
  std::size_t count = 256;
  double extent = 8.0;
  double hbar = 1.0;

  Grid1D x_grid() const { return Grid1D::centered(count, 2.0 * extent / static_cast<double>(count)); }
  ConjugatePair pair() const { return phase_space_pair(x_grid(), hbar); }
};

inline double normalization(const ComplexField1D& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return s * f.grid.step;
}

inline void normalize_in_place(ComplexField1D& f) {
  const double n = normalization(f);
  require(n > 0.0, ErrorKind::degenerate_state, "cannot normalize a zero field");
  const double s = 1.0 / std::sqrt(n);
  for (auto& v : f.values) v *= s;
}

// ---------------------------------------------------------------------------
// Sampling

inline ComplexField1D sample_position(const BoundState& psi) {
  ComplexField1D out(psi.grid());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = psi(out.grid[k]);
  return out;
}

inline ComplexField1D sample_position(const StateSpec& spec, const Grid1D& grid) {
  return sample_position(BoundState(spec, grid));
}

/// Momentum amplitude on an arbitrary momentum grid by discrete Fourier
/// transform of position samples:
/// phi(p) = (2 pi hbar)^(-1/2) sum_k dx psi(x_k) exp(-i p x_k / hbar).
inline ComplexField1D momentum_by_transform(const ComplexField1D& psi, const Grid1D& mu_grid, double hbar) {
  const Grid1D omega{mu_grid.start / hbar, mu_grid.step / hbar, mu_grid.count};
  auto values = fft::grid_fourier(psi.values, psi.grid, omega, -1);
  const double scale = psi.grid.step / std::sqrt(2.0 * std::numbers::pi * hbar);
  for (auto& v : values) v *= scale;
  return ComplexField1D(mu_grid, std::move(values));
}

/// phi(mu) on pair.reciprocal. Closed form where available, otherwise the
/// transform of position samples on `x_grid`; normalized on the momentum grid.
inline ComplexField1D sample_momentum(const StateSpec& spec, const Grid1D& x_grid, const ConjugatePair& pair,
                                      bool force_transform = false) {
  BoundState psi(spec, x_grid, pair.hbar);
  ComplexField1D out(pair.reciprocal);
  if (psi.has_closed_form_momentum() && !force_transform) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = psi.momentum(out.grid[j]);
  } else {
    out = momentum_by_transform(sample_position(psi), pair.reciprocal, pair.hbar);
  }
  normalize_in_place(out);
  return out;
}

inline ComplexField1D sample_momentum(const StateSpec& spec, const ConjugatePair& pair) {
  return sample_momentum(spec, position_grid(pair), pair);
}

}  // namespace wigner_lab
