#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "oracles.hpp"
#include "wigner_lab/io.hpp"
#include "wigner_lab/wigner.hpp"

using namespace wigner_lab;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::bracketing;
}

RealField2D sample_field() {
  return wigner_transform(StateSpec{HarmonicOscillator{3, 1.0}}, PhaseSpaceGrid{32, 6.0, 0.7}).base;
}

ComplexField1D sample_state() {
  return sample_position(StateSpec{Gaussian{0.3, 0.9, 1.1, 0.4}}, Grid1D::centered(64, 0.2));
}

void expect_same_axes(const io::FieldData& a, const io::FieldData& b) {
  ASSERT_EQ(a.axes.size(), b.axes.size());
  for (std::size_t k = 0; k < a.axes.size(); ++k) {
    EXPECT_EQ(a.axes[k].count, b.axes[k].count);
    EXPECT_NEAR(a.axes[k].start, b.axes[k].start, 1e-15);
    EXPECT_NEAR(a.axes[k].step, b.axes[k].step, 1e-15);
  }
}

}  // namespace

TEST(Formats, TextRoundTrips) {
  const auto w = sample_field();
  for (auto f : {io::Format::csv, io::Format::json}) {
    const auto back = io::to_real_2d(io::decode(io::encode(io::to_data(w), f), f));
    EXPECT_TRUE(back.grid_x.same_as(w.grid_x, 1e-15));
    EXPECT_TRUE(back.grid_y.same_as(w.grid_y, 1e-15));
    EXPECT_LT(oracle::sup_diff(back.values, w.values), 1e-15) << io::extension(f);
  }
}

TEST(Formats, BinaryIsBitExact) {
  const auto w = sample_field();
  const auto bytes = io::encode(io::to_data(w), io::Format::bin);
  EXPECT_EQ(bytes.substr(0, 4), "WGF1");
  EXPECT_EQ(bytes.size(), 8 + 2 * 20 + 8 * w.values.size());
  const auto back = io::to_real_2d(io::decode(bytes, io::Format::bin));
  ASSERT_EQ(back.values.size(), w.values.size());
  EXPECT_EQ(std::memcmp(back.values.data(), w.values.data(), w.values.size() * sizeof(double)), 0);
  EXPECT_EQ(back.grid_x.start, w.grid_x.start);
  EXPECT_EQ(back.grid_y.step, w.grid_y.step);
  EXPECT_EQ(io::encode(io::to_data(back), io::Format::bin), bytes);
}

TEST(Formats, ComplexFields) {
  const auto psi = sample_state();
  for (auto f : {io::Format::csv, io::Format::json, io::Format::bin}) {
    const auto d = io::decode(io::encode(io::to_data(psi), f), f);
    EXPECT_TRUE(d.is_complex);
    const auto back = io::to_complex_1d(d);
    ASSERT_EQ(back.size(), psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) EXPECT_EQ(back[k], psi[k]) << io::extension(f);
  }
  ComplexField2D z(Grid1D::centered(8, 0.5), Grid1D::centered(10, 0.3));
  for (std::size_t k = 0; k < z.values.size(); ++k) z.values[k] = {std::sin(0.1 * k), std::cos(0.7 * k) * 1e-300};
  const auto back = io::to_complex_2d(io::decode(io::encode(io::to_data(z), io::Format::bin), io::Format::bin));
  for (std::size_t k = 0; k < z.values.size(); ++k) EXPECT_EQ(back.values[k], z.values[k]);
  const auto csv = io::to_complex_2d(io::decode(io::encode(io::to_data(z), io::Format::csv), io::Format::csv));
  for (std::size_t k = 0; k < z.values.size(); ++k) EXPECT_EQ(csv.values[k], z.values[k]);
}

TEST(Formats, CsvLayout) {
  RealField1D f(Grid1D{-1.0, 0.5, 3});
  f.values = {1.0, 2.5, -3.0};
  const auto text = io::encode(io::to_data(f), io::Format::csv);
  EXPECT_EQ(text, "# axis1 -1 0.5 3\n-1,1\n-0.5,2.5\n0,-3\n");
  const auto j = io::json::parse(io::encode(io::to_data(f), io::Format::json));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("kind"), "real_field");
  EXPECT_EQ(j.at("values").size(), 3u);
}

TEST(Formats, MalformedInputIsRejected) {
  const auto bytes = io::encode(io::to_data(sample_field()), io::Format::bin);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(kind_of([&] { io::read_bin(bad); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { io::read_bin(bytes.substr(0, bytes.size() - 3)); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { io::read_bin(bytes + "x"); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([&] { io::read_bin("WGF"); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { io::read_csv("# axis1 0 1 3\n0,1\n1,2\n"); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { io::read_csv("# axis1 0 1 2\n0,1\n1,2,3\n"); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { io::read_csv("# nonsense\n0,1\n"); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { io::field_from_json(io::json::parse(R"({"kind":"real_field","axes":[{"start":0,"step":1,"count":3}],"values":[1,2]})")); }),
            ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { io::parse_format("xml"); }), ErrorKind::invalid_argument);
}

TEST(Formats, PathInference) {
  EXPECT_EQ(io::format_from_path("w.csv"), io::Format::csv);
  EXPECT_EQ(io::format_from_path("dir.v2/out.json"), io::Format::json);
  EXPECT_EQ(io::format_from_path("a.b.bin"), io::Format::bin);
  EXPECT_FALSE(io::format_from_path("noext").has_value());
  EXPECT_FALSE(io::format_from_path("x.txt").has_value());
  EXPECT_EQ(io::extension(io::Format::json), "json");
}

TEST(Files, SaveAndLoadWithSniffing) {
  const auto dir = std::filesystem::temp_directory_path() / "wigner_lab_io_test";
  std::filesystem::create_directories(dir);
  const auto w = sample_field();
  for (auto f : {io::Format::csv, io::Format::json, io::Format::bin}) {
    const auto named = (dir / ("w." + io::extension(f))).string();
    const auto bare = (dir / ("w_" + io::extension(f))).string();
    io::save(named, io::to_data(w), f);
    io::save(bare, io::to_data(w), f);
    for (const auto& p : {named, bare}) {
      const auto back = io::to_real_2d(io::load(p));
      EXPECT_LT(oracle::sup_diff(back.values, w.values), 1e-15) << p;
    }
  }
  EXPECT_EQ(kind_of([&] { io::load((dir / "missing.csv").string()); }), ErrorKind::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(States, JsonRoundTripAndDefaults) {
  const auto g = io::parse_state(R"({"Gaussian":{"center":0.5}})");
  const auto& gg = std::get<Gaussian>(g.value);
  EXPECT_EQ(gg.center, 0.5);
  EXPECT_EQ(gg.width, 1.0);
  EXPECT_EQ(gg.momentum, 0.0);
  EXPECT_EQ(gg.chirp, 0.0);
  EXPECT_EQ(std::get<HarmonicOscillator>(io::parse_state(R"({"HarmonicOscillator":{}})").value).n, 0u);
  EXPECT_EQ(std::get<BoxMode>(io::parse_state(R"({"BoxMode":{"n":3,"b":2}})").value).halfwidth, 2.0);

  Superposition s;
  s.terms.push_back({{0.6, -0.2}, StateSpec{Gaussian{1.0, 0.8, 0.3, 0.1}}});
  s.terms.push_back({{0.0, 1.0}, StateSpec{HarmonicOscillator{2, 1.3}}});
  Tabulated t{Grid1D::centered(8, 0.5), {}};
  for (std::size_t k = 0; k < 8; ++k) t.values.emplace_back(std::exp(-0.1 * k * k), 0.01 * k);
  s.terms.push_back({1.0, StateSpec{t}});
  const StateSpec spec{s};
  const auto text = io::state_json(spec).dump();
  const auto back = io::parse_state(text);
  EXPECT_EQ(io::state_json(back).dump(), text);
  EXPECT_EQ(describe(back), describe(spec));

  const auto pair = io::parse_state(R"({"Superposition":{"terms":[{"coefficient":[0,1],"state":{"Gaussian":{}}},{"state":{"Gaussian":{"center":1}}}]}})");
  const auto& terms = std::get<Superposition>(pair.value).terms;
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].coefficient, complex(0.0, 1.0));
  EXPECT_EQ(terms[1].coefficient, complex(1.0, 0.0));
}

TEST(States, BadJsonIsInvalidArgument) {
  for (const char* text : {"{", "[]", R"({"Gaussian":{},"BoxMode":{}})", R"({"Spline":{}})",
                           R"({"Gaussian":{"width":-1}})", R"({"BoxMode":{"n":2}})",
                           R"({"Gaussian":{"width":"wide"}})", R"({"Superposition":{"terms":[]}})",
                           R"({"Superposition":{"terms":[{"coefficient":[1],"state":{"Gaussian":{}}}]}})"})
    EXPECT_EQ(kind_of([&] { io::parse_state(text); }), ErrorKind::invalid_argument) << text;
}
