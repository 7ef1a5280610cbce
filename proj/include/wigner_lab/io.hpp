#pragma once

#include <bit>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wigner_lab/error.hpp"
#include "wigner_lab/grid.hpp"
#include "wigner_lab/states.hpp"

namespace wigner_lab::io {

using json = nlohmann::json;

enum class Format { csv, json, bin };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "bin") return Format::bin;
  fail(ErrorKind::invalid_argument, "unknown format '" + s + "' (csv, json, bin)");
}

inline std::string extension(Format f) { return f == Format::csv ? "csv" : f == Format::json ? "json" : "bin"; }

/// Format implied by a file name, if any.
inline std::optional<Format> format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  const auto ext = path.substr(dot + 1);
  if (ext == "csv") return Format::csv;
  if (ext == "json") return Format::json;
  if (ext == "bin") return Format::bin;
  return std::nullopt;
}

/// Format-neutral field: axes plus row-major values (imaginary parts empty
/// for real fields).
struct FieldData {
  std::vector<Grid1D> axes;
  std::vector<double> re;
  std::vector<double> im;
  bool is_complex = false;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.count;
    return n;
  }
};

inline FieldData to_data(const RealField1D& f) { return {{f.grid}, f.values, {}, false}; }
inline FieldData to_data(const RealField2D& f) { return {{f.grid_x, f.grid_y}, f.values, {}, false}; }

inline FieldData to_data(const ComplexField1D& f) {
  FieldData d{{f.grid}, {}, {}, true};
  for (const auto& v : f.values) {
    d.re.push_back(v.real());
    d.im.push_back(v.imag());
  }
  return d;
}

inline FieldData to_data(const ComplexField2D& f) {
  FieldData d{{f.grid_x, f.grid_y}, {}, {}, true};
  d.re.reserve(f.values.size());
  d.im.reserve(f.values.size());
  for (const auto& v : f.values) {
    d.re.push_back(v.real());
    d.im.push_back(v.imag());
  }
  return d;
}

inline RealField2D to_real_2d(const FieldData& d) {
  require(d.axes.size() == 2 && !d.is_complex, ErrorKind::invalid_argument, "expected a real 2D field");
  return RealField2D(d.axes[0], d.axes[1], d.re);
}

inline ComplexField2D to_complex_2d(const FieldData& d) {
  require(d.axes.size() == 2, ErrorKind::invalid_argument, "expected a 2D field");
  ComplexField2D f(d.axes[0], d.axes[1]);
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = {d.re[k], d.is_complex ? d.im[k] : 0.0};
  return f;
}

inline RealField1D to_real_1d(const FieldData& d) {
  require(d.axes.size() == 1 && !d.is_complex, ErrorKind::invalid_argument, "expected a real 1D field");
  return RealField1D(d.axes[0], d.re);
}

inline ComplexField1D to_complex_1d(const FieldData& d) {
  require(d.axes.size() == 1, ErrorKind::invalid_argument, "expected a 1D field");
  ComplexField1D f(d.axes[0]);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = {d.re[k], d.is_complex ? d.im[k] : 0.0};
  return f;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline void put(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

inline void put_size(std::string& s, std::size_t v) { s += std::to_string(v); }

}  // namespace detail

inline std::string write_csv(const FieldData& d) {
  std::string s;
  for (std::size_t a = 0; a < d.axes.size(); ++a) {
    s += "# axis" + std::to_string(a + 1) + " ";
    detail::put(s, d.axes[a].start);
    s += ' ';
    detail::put(s, d.axes[a].step);
    s += ' ';
    detail::put_size(s, d.axes[a].count);
    s += '\n';
  }
  const std::size_t n = d.size();
  const std::size_t ny = d.axes.size() == 2 ? d.axes[1].count : 1;
  for (std::size_t k = 0; k < n; ++k) {
    detail::put(s, d.axes[0][k / ny]);
    if (d.axes.size() == 2) {
      s += ',';
      detail::put(s, d.axes[1][k % ny]);
    }
    s += ',';
    detail::put(s, d.re[k]);
    if (d.is_complex) {
      s += ',';
      detail::put(s, d.im[k]);
    }
    s += '\n';
  }
  return s;
}

inline FieldData read_csv(const std::string& text) {
  FieldData d;
  std::istringstream in(text);
  std::string line;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string name;
      Grid1D g;
      h >> name >> g.start >> g.step >> g.count;
      require(!h.fail() && name.rfind("axis", 0) == 0, ErrorKind::invalid_argument, "bad CSV header: " + line);
      d.axes.push_back(g);
      continue;
    }
    std::vector<double> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      const auto cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      cells.push_back(std::strtod(cell.c_str(), nullptr));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (columns == 0) {
      columns = cells.size();
      d.is_complex = columns == d.axes.size() + 2;
      require(columns == d.axes.size() + 1 || d.is_complex, ErrorKind::invalid_argument, "bad CSV row width");
    }
    require(cells.size() == columns, ErrorKind::invalid_argument, "ragged CSV rows");
    d.re.push_back(cells[d.axes.size()]);
    if (d.is_complex) d.im.push_back(cells[d.axes.size() + 1]);
  }
  require(!d.axes.empty() && d.re.size() == d.size(), ErrorKind::invalid_argument, "CSV value count does not match header");
  return d;
}

// ---------------------------------------------------------------------------
// Binary: magic, u32 rank, per axis (f64 start, f64 step, u32 count), f64 values; little-endian

namespace detail {

inline void put_u32(std::string& s, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) s += static_cast<char>((v >> (8 * b)) & 0xff);
}

inline void put_f64(std::string& s, double v) {
  const auto u = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) s += static_cast<char>((u >> (8 * b)) & 0xff);
}

struct Reader {
  const std::string& s;
  std::size_t pos = 0;

  std::uint64_t bytes(int n) {
    require(pos + n <= s.size(), ErrorKind::invalid_argument, "truncated binary field");
    std::uint64_t v = 0;
    for (int b = 0; b < n; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos + b])) << (8 * b);
    pos += n;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(bytes(4)); }
  double f64() { return std::bit_cast<double>(bytes(8)); }
};

}  // namespace detail

inline std::string write_bin(const FieldData& d) {
  std::string s = d.is_complex ? "WGC1" : "WGF1";
  detail::put_u32(s, static_cast<std::uint32_t>(d.axes.size()));
  for (const auto& a : d.axes) {
    detail::put_f64(s, a.start);
    detail::put_f64(s, a.step);
    detail::put_u32(s, static_cast<std::uint32_t>(a.count));
  }
  for (std::size_t k = 0; k < d.re.size(); ++k) {
    detail::put_f64(s, d.re[k]);
    if (d.is_complex) detail::put_f64(s, d.im[k]);
  }
  return s;
}

inline FieldData read_bin(const std::string& s) {
  require(s.size() >= 8, ErrorKind::invalid_argument, "binary field too short");
  const auto magic = s.substr(0, 4);
  require(magic == "WGF1" || magic == "WGC1", ErrorKind::invalid_argument, "bad binary magic");
  FieldData d;
  d.is_complex = magic == "WGC1";
  detail::Reader r{s, 4};
  const auto rank = r.u32();
  require(rank >= 1 && rank <= 2, ErrorKind::invalid_argument, "unsupported field rank");
  for (std::uint32_t a = 0; a < rank; ++a) {
    Grid1D g;
    g.start = r.f64();
    g.step = r.f64();
    g.count = r.u32();
    d.axes.push_back(g);
  }
  const std::size_t n = d.size();
  d.re.resize(n);
  if (d.is_complex) d.im.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    d.re[k] = r.f64();
    if (d.is_complex) d.im[k] = r.f64();
  }
  require(r.pos == s.size(), ErrorKind::invalid_argument, "trailing bytes in binary field");
  return d;
}

// ---------------------------------------------------------------------------
// JSON

inline json grid_json(const Grid1D& g) { return {{"start", g.start}, {"step", g.step}, {"count", g.count}}; }

inline Grid1D grid_from_json(const json& j) {
  return Grid1D{j.at("start").get<double>(), j.at("step").get<double>(), j.at("count").get<std::size_t>()};
}

inline json field_json(const FieldData& d) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = d.is_complex ? "complex_field" : "real_field";
  j["axes"] = json::array();
  for (const auto& a : d.axes) j["axes"].push_back(grid_json(a));
  if (d.is_complex) {
    j["re"] = d.re;
    j["im"] = d.im;
  } else {
    j["values"] = d.re;
  }
  return j;
}

inline FieldData field_from_json(const json& j) {
  FieldData d;
  for (const auto& a : j.at("axes")) d.axes.push_back(grid_from_json(a));
  d.is_complex = j.at("kind").get<std::string>() == "complex_field";
  if (d.is_complex) {
    d.re = j.at("re").get<std::vector<double>>();
    d.im = j.at("im").get<std::vector<double>>();
  } else {
    d.re = j.at("values").get<std::vector<double>>();
  }
  require(d.re.size() == d.size() && (!d.is_complex || d.im.size() == d.size()), ErrorKind::invalid_argument,
          "JSON field value count does not match axes");
  return d;
}

// ---------------------------------------------------------------------------
// Files

inline std::string encode(const FieldData& d, Format f) {
  switch (f) {
    case Format::csv: return write_csv(d);
    case Format::json: return field_json(d).dump() + "\n";
    case Format::bin: return write_bin(d);
  }
  return {};
}

inline FieldData decode(const std::string& text, Format f) {
  switch (f) {
    case Format::csv: return read_csv(text);
    case Format::json: return field_from_json(json::parse(text));
    case Format::bin: return read_bin(text);
  }
  return {};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::invalid_argument, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorKind::invalid_argument, "write failed for " + path);
}

inline void save(const std::string& path, const FieldData& d, Format f) { write_file(path, encode(d, f)); }

inline FieldData load(const std::string& path) {
  const auto f = format_from_path(path);
  const auto bytes = read_file(path);
  if (f) return decode(bytes, *f);
  // sniff: binary magic, JSON brace, otherwise CSV
  if (bytes.rfind("WG", 0) == 0) return read_bin(bytes);
  if (!bytes.empty() && bytes[0] == '{') return field_from_json(json::parse(bytes));
  return read_csv(bytes);
}

// ---------------------------------------------------------------------------
// State specs

inline complex coefficient_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2, ErrorKind::invalid_argument, "coefficient must be a number or [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline StateSpec state_from_json(const json& j) {
  require(j.is_object() && j.size() == 1, ErrorKind::invalid_argument,
          "state must be an object with exactly one variant key");
  const auto& [tag, body] = *j.items().begin();
  auto num = [&](const char* key, double fallback) { return body.contains(key) ? body.at(key).get<double>() : fallback; };
  StateSpec spec;
  if (tag == "Gaussian") {
    spec.value = Gaussian{num("center", 0.0), num("width", 1.0), num("momentum", 0.0), num("chirp", 0.0)};
  } else if (tag == "HarmonicOscillator") {
    spec.value = HarmonicOscillator{body.value("n", 0u), num("width", 1.0)};
  } else if (tag == "BoxMode") {
    spec.value = BoxMode{body.value("n", 1u), num("b", 1.0)};
  } else if (tag == "Superposition") {
    Superposition s;
    for (const auto& t : body.at("terms"))
      s.terms.push_back({t.contains("coefficient") ? coefficient_from_json(t.at("coefficient")) : complex{1.0, 0.0},
                         state_from_json(t.at("state"))});
    spec.value = std::move(s);
  } else if (tag == "Tabulated") {
    Tabulated t;
    t.grid = Grid1D{body.at("start").get<double>(), body.at("step").get<double>(), body.at("count").get<std::size_t>()};
    const auto re = body.at("re").get<std::vector<double>>();
    const auto im = body.contains("im") ? body.at("im").get<std::vector<double>>() : std::vector<double>(re.size());
    require(re.size() == im.size(), ErrorKind::invalid_argument, "tabulated re/im lengths differ");
    for (std::size_t k = 0; k < re.size(); ++k) t.values.emplace_back(re[k], im[k]);
    spec.value = std::move(t);
  } else {
    fail(ErrorKind::invalid_argument, "unknown state variant '" + tag + "'");
  }
  validate(spec);
  return spec;
}

inline StateSpec parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("state is not valid JSON: ") + e.what());
  }
  try {
    return state_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("malformed state: ") + e.what());
  }
}

inline json state_json(const StateSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return {{"Gaussian", {{"center", s.center}, {"width", s.width}, {"momentum", s.momentum}, {"chirp", s.chirp}}}};
        } else if constexpr (std::is_same_v<T, HarmonicOscillator>) {
          return {{"HarmonicOscillator", {{"n", s.n}, {"width", s.width}}}};
        } else if constexpr (std::is_same_v<T, BoxMode>) {
          return {{"BoxMode", {{"n", s.n}, {"b", s.halfwidth}}}};
        } else if constexpr (std::is_same_v<T, Superposition>) {
          json terms = json::array();
          for (const auto& t : s.terms)
            terms.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}}, {"state", state_json(t.state)}});
          return {{"Superposition", {{"terms", terms}}}};
        } else {
          std::vector<double> re, im;
          for (const auto& v : s.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
          }
          return {{"Tabulated",
                   {{"start", s.grid.start}, {"step", s.grid.step}, {"count", s.grid.count}, {"re", re}, {"im", im}}}};
        }
      },
      spec.value);
}

}  // namespace wigner_lab::io
