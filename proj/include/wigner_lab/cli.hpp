#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wigner_lab/coarse_grain.hpp"
#include "wigner_lab/fisher.hpp"
#include "wigner_lab/hologram.hpp"
#include "wigner_lab/io.hpp"
#include "wigner_lab/states.hpp"
#include "wigner_lab/wigner.hpp"

namespace wigner_lab::cli {

using json = nlohmann::json;

/// Everything a subcommand needs; filled by the parser.
struct RunConfig {
  double hbar = 1.0;
  std::size_t n = 256;
  std::optional<double> extent;  // default 8, or b for a BoxMode
  std::string state;
  std::string state_file;
  std::string state2;
  std::string out;
  std::string in;
  std::string format;
  std::uint64_t seed = 42;
  int threads = -1;

  // operation parameters
  std::string axis = "momentum";
  std::string positivity_axis = "none";  // positivity checks the raw field unless asked
  std::string method = "quadrature";
  double sigma = 1.0;
  double sigma_x = 0.0;
  double sigma_mu = 0.0;
  double epsilon = 1e-3;
  double lo = 0.05;
  double hi = 500.0;
  std::optional<double> x0;
  std::optional<double> z0;
  std::optional<double> b;
  double tol = 1e-8;
  std::size_t count = 1000;
  bool no_conjugate = false;
  bool from_pdf = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Context {
  const RunConfig& cfg;
  std::ostream& out;

  StateSpec state() const {
    std::string text = cfg.state;
    if (!cfg.state_file.empty()) text = io::read_file(cfg.state_file);
    if (text.empty()) throw UsageError("a state is required (--state or --state-file)");
    try {
      return io::parse_state(text);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  double extent_for(const StateSpec& s) const {
    if (cfg.extent) return *cfg.extent;
    if (const auto* b = std::get_if<BoxMode>(&s.value)) return b->halfwidth;
    return 8.0;
  }

  PhaseSpaceGrid grid(const StateSpec& s) const {
    require(cfg.n >= 8 && cfg.n % 2 == 0, ErrorKind::invalid_argument, "--n must be even and at least 8");
    return PhaseSpaceGrid{cfg.n, extent_for(s), cfg.hbar};
  }

  io::Format format() const {
    if (!cfg.format.empty()) return io::parse_format(cfg.format);
    if (auto f = io::format_from_path(cfg.out)) return *f;
    return io::Format::csv;
  }

  void emit_bytes(const std::string& path, const std::string& bytes) const {
    if (path.empty() || path == "-") out << bytes;
    else io::write_file(path, bytes);
  }

  void emit(const io::FieldData& d) const { emit_bytes(cfg.out, io::encode(d, format())); }

  void emit_json(json j) const {
    j["schema_version"] = 1;
    emit_bytes(cfg.out, j.dump(2) + "\n");
  }

  // "<stem>.<tag>.<ext>" next to the main output.
  std::string sibling(const std::string& tag) const {
    require(!cfg.out.empty() && cfg.out != "-", ErrorKind::invalid_argument,
            "this subcommand writes several files and needs --out");
    const auto ext = io::extension(format());
    std::string stem = cfg.out;
    const auto dot = stem.rfind('.');
    const auto slash = stem.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) stem = stem.substr(0, dot);
    return stem + "." + tag + "." + ext;
  }
};

inline Axis parse_axis(const std::string& s) {
  if (s == "momentum" || s == "mu") return Axis::momentum;
  if (s == "position" || s == "x") return Axis::position;
  throw UsageError("unknown axis '" + s + "' (momentum|mu, position|x)");
}

inline json report_json(const PositivityReport& r) {
  return {{"min_value", r.min_value},
          {"min_x", r.min_x},
          {"min_mu", r.min_y},
          {"max_abs", r.max_abs},
          {"negative_mass_fraction", r.negative_mass_fraction},
          {"epsilon", r.epsilon},
          {"positive", r.positive}};
}

inline json fisher_json(const FisherResult& r) {
  return {{"i_quadrature", r.I_quadrature},
          {"i_quadrature_coarse", r.I_quadrature_coarse},
          {"i_closed_form", r.I_closed_form},
          {"abs_integral", r.abs_integral},
          {"x_half_extent", r.x_half_extent},
          {"z_half_extent", r.z_half_extent},
          {"b", r.b},
          {"hbar", r.hbar},
          {"masked_fraction", r.masked_fraction},
          {"trustworthy", r.trustworthy()},
          {"verdict", r.verdict}};
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

inline WignerField state_wigner(const Context& c, const StateSpec& s) { return wigner_transform(s, c.grid(s)); }

// Hologram grid: the rectangle [-x0, x0] x [-z0, z0] when given, else the
// conjugate grids of the phase-space sampling.
inline std::pair<Grid1D, Grid1D> hologram_grids(const Context& c, const StateSpec& s) {
  const auto g = c.grid(s);
  if (c.cfg.x0 || c.cfg.z0) {
    const double x0 = c.cfg.x0.value_or(1.0);
    const double z0 = c.cfg.z0.value_or(2.0 * x0 / c.cfg.hbar);
    return {Grid1D::closed(-x0, x0, c.cfg.n), Grid1D::closed(-z0, z0, c.cfg.n)};
  }
  return {g.x_grid(), g.pair().direct};
}

// Phase profiles default to the rectangle x0 = L/4, z0 = 2 x0 / hbar; over the
// full grid psi underflows and whole rows would be masked.
inline HologramField state_profile(const Context& c, const StateSpec& s) {
  const double x0 = c.cfg.x0.value_or(0.25 * c.extent_for(s));
  const double z0 = c.cfg.z0.value_or(2.0 * x0 / c.cfg.hbar);
  const Grid1D x = Grid1D::closed(-x0, x0, c.cfg.n), z = Grid1D::closed(-z0, z0, c.cfg.n);
  const BoundState psi(s, c.grid(s).x_grid(), c.cfg.hbar);
  return phase_profile(psi, x, z);
}

// ---------------------------------------------------------------------------
// Subcommands

inline void cmd_state_info(const Context& c) {
  const auto s = c.state();
  const auto g = c.grid(s);
  const BoundState psi(s, g.x_grid(), g.hbar);
  const auto ext = state_extents(s, g.x_grid(), g.pair());
  const complex v0 = psi(0.0);
  c.emit_json({{"state", io::state_json(s)},
               {"description", describe(s)},
               {"hbar", g.hbar},
               {"count", g.count},
               {"extent", g.extent},
               {"grid_scale", psi.scale()},
               {"psi_at_zero", {v0.real(), v0.imag()}},
               {"x_extent", ext.x},
               {"mu_extent", ext.mu},
               {"closed_form_momentum", psi.has_closed_form_momentum()}});
}

inline void cmd_wigner(const Context& c) { c.emit(io::to_data(state_wigner(c, c.state()).base)); }

inline void cmd_cross_wigner(const Context& c) {
  const auto s1 = c.state();
  const auto g = c.grid(s1);
  const auto f1 = sample_position(BoundState(s1, g.x_grid(), g.hbar));
  auto f2 = c.cfg.state2.empty() ? f1 : sample_position(BoundState(io::parse_state(c.cfg.state2), g.x_grid(), g.hbar));
  if (!c.cfg.no_conjugate)
    for (auto& v : f2.values) v = std::conj(v);
  c.emit(io::to_data(cross_wigner(f1, f2, g.pair(), Outside::zero)));
}

inline void cmd_wigner_momentum(const Context& c) {
  const auto s = c.state();
  const auto g = c.grid(s);
  const auto phi = sample_momentum(s, g.x_grid(), g.pair());
  c.emit(io::to_data(wigner_momentum(phi, g.hbar, Outside::zero).base));
}

inline void cmd_marginals(const Context& c) {
  const auto w = state_wigner(c, c.state());
  const auto [mx, mm] = marginals(w);
  io::save(c.sibling("x"), io::to_data(mx), c.format());
  io::save(c.sibling("mu"), io::to_data(mm), c.format());
}

inline void cmd_hologram(const Context& c) {
  const auto s = c.state();
  const auto g = c.grid(s);
  if (c.cfg.from_pdf) {
    c.emit(io::to_data(hologram_from_pdf(state_wigner(c, s).base, g.pair())));
    return;
  }
  const auto [x, z] = hologram_grids(c, s);
  const BoundState psi(s, g.x_grid(), g.hbar);
  c.emit(io::to_data(hologram_from_state(wigner_lab::detail::amplitude_of(psi), x, z, g.hbar)));
}

inline void cmd_phase(const Context& c) {
  const auto f = state_profile(c, c.state());
  c.emit(io::to_data(f.Psi));
  RealField2D mask(f.Psi.grid_x, f.Psi.grid_y);
  for (std::size_t k = 0; k < mask.values.size(); ++k) mask.values[k] = f.mask[k];
  io::save(c.sibling("mask"), io::to_data(mask), c.format());
}

inline void cmd_intensity(const Context& c) { c.emit(io::to_data(intensity(state_profile(c, c.state())))); }

inline void cmd_sample(const Context& c) {
  const auto p = intensity(state_profile(c, c.state()));
  const auto samples = sample_positions(p, c.cfg.count, c.cfg.seed);
  const auto f = c.format();
  if (f == io::Format::bin) throw UsageError("samples are written as csv or json");
  if (f == io::Format::json) {
    std::vector<double> xs, zs;
    for (const auto& s : samples) {
      xs.push_back(s.x);
      zs.push_back(s.z);
    }
    c.emit_json({{"count", samples.size()}, {"seed", c.cfg.seed}, {"x", xs}, {"z", zs}});
    return;
  }
  std::string text = "# samples " + std::to_string(samples.size()) + " seed " + std::to_string(c.cfg.seed) + "\n";
  for (const auto& s : samples) text += fmt(s.x) + "," + fmt(s.z) + "\n";
  c.emit_bytes(c.cfg.out, text);
}

inline void cmd_reconstruct(const Context& c) {
  ComplexField2D z;
  ConjugatePair pair;
  if (!c.cfg.in.empty()) {
    z = io::to_complex_2d(io::load(c.cfg.in));
    pair = make_conjugate_pair(z.grid_y, c.cfg.hbar);
  } else {
    const auto s = c.state();
    const auto g = c.grid(s);
    pair = g.pair();
    z = hologram_from_state(BoundState(s, g.x_grid(), g.hbar), pair);
  }
  c.emit(io::to_data(reconstruct_pdf(z, pair)));
}

inline void cmd_coarse(const Context& c) {
  const auto w = state_wigner(c, c.state());
  if (c.cfg.axis == "2d") {
    const double sx = c.cfg.sigma_x > 0.0 ? c.cfg.sigma_x : std::sqrt(0.5 * c.cfg.hbar);
    const double sm = c.cfg.sigma_mu > 0.0 ? c.cfg.sigma_mu : 0.5 * c.cfg.hbar / sx;
    c.emit(io::to_data(coarse_grain_2d(w, sx, sm)));
    return;
  }
  const CoarseGrainSpec spec{parse_axis(c.cfg.axis), GaussianWidth{c.cfg.sigma}, {}};
  c.emit(io::to_data(coarse_grain(w, spec)));
}

inline void cmd_limit_check(const Context& c) {
  const auto s = c.state();
  const auto axis = parse_axis(c.cfg.axis);
  const auto ladder = limit_ladder(s, axis, c.grid(s));
  c.emit_json({{"axis", std::string(to_string(axis))},
               {"sigmas", ladder.sigmas},
               {"deviations", ladder.deviations},
               {"strictly_decreasing", ladder.strictly_decreasing},
               {"final_deviation", ladder.deviations.back()}});
}

inline void cmd_positivity(const Context& c) {
  const auto s = c.state();
  const auto w = state_wigner(c, s);
  json j;
  if (c.cfg.positivity_axis == "none") {
    j = report_json(positivity_report(w.base, c.cfg.epsilon));
  } else {
    const CoarseGrainSpec spec{parse_axis(c.cfg.positivity_axis), GaussianWidth{c.cfg.sigma}, {}};
    j = report_json(positivity_report(coarse_grain(w, spec), c.cfg.epsilon));
    j["sigma"] = c.cfg.sigma;
    j["axis"] = std::string(to_string(spec.axis));
  }
  c.emit_json(j);
}

inline void cmd_sigma_min(const Context& c) {
  const auto s = c.state();
  const auto axis = parse_axis(c.cfg.axis);
  GrainSizeOptions opt;
  opt.lo = c.cfg.lo;
  opt.hi = c.cfg.hi;
  try {
    const auto r = min_grain_size(s, axis, c.cfg.epsilon, c.grid(s), opt);
    json sweep = json::array();
    for (const auto& p : r.sweep) sweep.push_back({{"sigma", p.sigma}, {"min_over_max", p.min_over_max}, {"positive", p.positive}});
    c.emit_json({{"axis", std::string(to_string(axis))},
                 {"epsilon", c.cfg.epsilon},
                 {"count", c.cfg.n},
                 {"sigma_min", r.sigma_min},
                 {"bracket_lo", r.bracket_lo},
                 {"bracket_hi", r.bracket_hi},
                 {"report", report_json(r.report)},
                 {"monotonicity_violations", r.monotonicity_violations},
                 {"evaluations", r.evaluations},
                 {"sweep", sweep}});
  } catch (const BracketingError& e) {
    c.emit_json({{"axis", std::string(to_string(axis))},
                 {"epsilon", c.cfg.epsilon},
                 {"error", "bracketing"},
                 {"message", e.what()},
                 {"lo_report", report_json(e.lo())},
                 {"hi_report", report_json(e.hi())}});
    throw;
  }
}

inline void cmd_fisher(const Context& c) {
  const auto s = c.state();
  const auto g = c.grid(s);
  const BoundState psi(s, g.x_grid(), g.hbar);
  const auto amp = wigner_lab::detail::amplitude_of(psi);
  const double x0 = c.cfg.x0.value_or(1.0);
  const double z0 = c.cfg.z0.value_or(2.0 * x0 / g.hbar);
  const double b = c.cfg.b.value_or(x0 + 0.5 * g.hbar * z0);
  json j{{"method", c.cfg.method}, {"hbar", g.hbar}};
  if (c.cfg.method == "quadrature") {
    double abs_int = 0.0, excl = 0.0;
    j["i_quadrature"] = fisher_quadrature(fisher_profile(amp, x0, z0, c.cfg.n, g.hbar), &abs_int, &excl);
    j["abs_integral"] = abs_int;
    j["masked_fraction"] = excl;
    j["x_half_extent"] = x0;
    j["z_half_extent"] = z0;
  } else if (c.cfg.method == "closed-form") {
    j["i_closed_form"] = fisher_closed_form(amp, b);
    j["b"] = b;
  } else if (c.cfg.method == "cross-term") {
    j["i_cross_term"] = fisher_cross_term(amp, -b, b);
    j["i_cross_term_diamond"] = fisher_cross_term_diamond(amp, b);
    j["b"] = b;
  } else if (c.cfg.method == "monte-carlo") {
    const auto m = fisher_monte_carlo(fisher_profile(amp, x0, z0, c.cfg.n, g.hbar), c.cfg.count, c.cfg.seed);
    j["estimate"] = m.estimate;
    j["std_error"] = m.std_error;
    j["samples"] = m.samples;
    j["seed"] = c.cfg.seed;
  } else {
    throw UsageError("unknown --method '" + c.cfg.method + "'");
  }
  c.emit_json(j);
}

inline void cmd_fisher_check(const Context& c) {
  const auto s = c.state();
  double x0 = 1.0;
  if (const auto* bm = std::get_if<BoxMode>(&s.value)) x0 = 0.5 * bm->halfwidth;
  if (c.cfg.x0) x0 = *c.cfg.x0;
  IZeroOptions opt;
  opt.tol = c.cfg.tol;
  c.emit_json(fisher_json(check_I_zero(s, x0, c.cfg.hbar, opt)));
}

inline void cmd_roundtrip(const Context& c) {
  const auto s = c.state();
  const auto g = c.grid(s);
  const auto pair = g.pair();
  const BoundState psi(s, g.x_grid(), g.hbar);
  const auto w = wigner_transform(psi, pair);
  const auto held = reconstruct_pdf(hologram_from_state(psi, pair), pair);
  const auto cycle = reconstruct_pdf(hologram_from_pdf(w.base, pair), pair);
  const double e1 = max_diff(held.values, w.base.values);
  const double e2 = max_diff(cycle.values, w.base.values);
  c.emit_json({{"state_hologram_error", e1},
               {"pdf_cycle_error", e2},
               {"pass", e1 <= 1e-7 && e2 <= 1e-9}});
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on domain
/// errors, 2 on usage errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Phase-space numerics: Wigner functions, holograms, coarse graining, Fisher checks"};
  app.name("wigner-lab");
  app.require_subcommand(1);
  RunConfig cfg;

  using Handler = void (*)(const detail::Context&);
  std::map<CLI::App*, Handler> handlers;

  auto common = [&](CLI::App* sc, bool needs_state = true) {
    sc->add_option("--hbar", cfg.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
    sc->add_option("--n", cfg.n, "Points per axis");
    sc->add_option("--extent", cfg.extent, "Position half-extent L (grid is [-L, L))")->check(CLI::PositiveNumber);
    if (needs_state) {
      sc->add_option("--state", cfg.state, "State as JSON");
      sc->add_option("--state-file", cfg.state_file, "File holding the state JSON")->check(CLI::ExistingFile);
    }
    sc->add_option("--out", cfg.out, "Output path (stdout if omitted)");
    sc->add_option("--format", cfg.format, "csv, json or bin (default from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json", "bin"}));
    sc->add_option("--seed", cfg.seed, "Random seed");
    sc->add_option("--threads", cfg.threads, "Worker cap (overrides WIGNER_LAB_THREADS)");
  };
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* sc = app.add_subcommand(name, help);
    common(sc);
    handlers[sc] = h;
    return sc;
  };

  sub("state-info", "Summary of a state and its grid", detail::cmd_state_info);
  sub("wigner", "Wigner function W(x, mu)", detail::cmd_wigner);
  auto* cw = sub("cross-wigner", "Cross-Wigner transform of two states", detail::cmd_cross_wigner);
  cw->add_option("--state2", cfg.state2, "Second state as JSON (default: the first)");
  cw->add_flag("--no-conjugate", cfg.no_conjugate, "Use f2 = psi2 instead of psi2*");
  sub("wigner-momentum", "Wigner function from momentum samples", detail::cmd_wigner_momentum);
  sub("marginals", "Position and momentum marginals (<stem>.x.<ext>, <stem>.mu.<ext>)", detail::cmd_marginals);
  auto rect = [&](CLI::App* sc) {
    sc->add_option("--x0", cfg.x0, "Hologram position half-extent")->check(CLI::PositiveNumber);
    sc->add_option("--z0", cfg.z0, "Hologram z half-extent (default 2 x0 / hbar)")->check(CLI::PositiveNumber);
  };
  auto* ho = sub("hologram", "Pure-state hologram Z(x, z)", detail::cmd_hologram);
  rect(ho);
  ho->add_flag("--from-pdf", cfg.from_pdf, "Transform the Wigner function instead");
  rect(sub("phase", "Phase profile Psi(x, z) and its node mask (<stem>.mask.<ext>)", detail::cmd_phase));
  rect(sub("intensity", "Intensity P = |Psi|^2", detail::cmd_intensity));
  auto* sa = sub("sample", "Draw (x, z) positions from the intensity", detail::cmd_sample);
  rect(sa);
  sa->add_option("--count", cfg.count, "Number of draws");
  auto* re = sub("reconstruct", "p(x, mu) from a hologram", detail::cmd_reconstruct);
  re->add_option("--in", cfg.in, "Complex hologram file")->check(CLI::ExistingFile);
  auto* co = sub("coarse", "1D (mu or x) or 2D Gaussian coarse graining", detail::cmd_coarse);
  co->add_option("--axis", cfg.axis, "mu, x or 2d")->check(CLI::IsMember({"mu", "x", "momentum", "position", "2d"}));
  co->add_option("--sigma", cfg.sigma, "z-domain (k-domain) kernel width")->check(CLI::PositiveNumber);
  co->add_option("--sigma-x", cfg.sigma_x, "2D: position standard deviation")->check(CLI::PositiveNumber);
  co->add_option("--sigma-mu", cfg.sigma_mu, "2D: momentum standard deviation")->check(CLI::PositiveNumber);
  auto* lc = sub("limit-check", "Large-sigma limit ladder", detail::cmd_limit_check);
  lc->add_option("--axis", cfg.axis, "mu or x")->check(CLI::IsMember({"mu", "x", "momentum", "position"}));
  auto* po = sub("positivity", "Positivity report of W or of a coarse-grained field", detail::cmd_positivity);
  po->add_option("--axis", cfg.positivity_axis, "none, mu or x")->check(CLI::IsMember({"none", "mu", "x", "momentum", "position"}));
  po->add_option("--sigma", cfg.sigma, "Kernel width when --axis is mu or x")->check(CLI::PositiveNumber);
  po->add_option("--epsilon", cfg.epsilon, "Relative tolerance")->check(CLI::NonNegativeNumber);
  auto* sm = sub("sigma-min", "Minimum grain size for epsilon-positivity", detail::cmd_sigma_min);
  sm->add_option("--axis", cfg.axis, "momentum or position")->check(CLI::IsMember({"mu", "x", "momentum", "position"}));
  sm->add_option("--epsilon", cfg.epsilon, "Relative tolerance")->check(CLI::NonNegativeNumber);
  sm->add_option("--lo", cfg.lo, "Lower end of the sigma range")->check(CLI::PositiveNumber);
  sm->add_option("--hi", cfg.hi, "Upper end of the sigma range")->check(CLI::PositiveNumber);
  auto* fi = sub("fisher", "Fisher information by one method", detail::cmd_fisher);
  rect(fi);
  fi->add_option("--method", cfg.method, "quadrature, closed-form, cross-term, monte-carlo")
      ->check(CLI::IsMember({"quadrature", "closed-form", "cross-term", "monte-carlo"}));
  fi->add_option("--b", cfg.b, "Boundary parameter (default x0 + hbar z0 / 2)")->check(CLI::PositiveNumber);
  fi->add_option("--count", cfg.count, "Monte Carlo samples");
  auto* fc = sub("fisher-check", "I = 0 check: closed form and refined quadrature", detail::cmd_fisher_check);
  fc->add_option("--x0", cfg.x0, "Position half-extent (default 1, or b/2 for a BoxMode)")->check(CLI::PositiveNumber);
  fc->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
  sub("roundtrip", "Hologram/reconstruction consistency", detail::cmd_roundtrip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "wigner-lab: " << e.what() << "\n" << "run 'wigner-lab --help' for usage\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const int saved_threads = cfg.threads;
  if (saved_threads >= 0) set_thread_count(saved_threads);
  try {
    handlers.at(chosen)(detail::Context{cfg, out});
  } catch (const UsageError& e) {
    err << "wigner-lab " << chosen->get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "wigner-lab " << chosen->get_name() << ": " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "wigner-lab " << chosen->get_name() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace wigner_lab::cli
