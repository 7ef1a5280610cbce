#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "wigner_lab/cli.hpp"

using namespace wigner_lab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::vector<const char*> argv{"wigner-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  set_thread_count(-1);
  return {code, out.str(), err.str()};
}

io::json report(const Run& r) { return io::json::parse(r.out); }

const std::string kGauss = R"({"Gaussian":{"center":0,"width":1}})";
const std::string kBox = R"({"BoxMode":{"n":1,"b":1}})";
const std::string kHo1 = R"({"HarmonicOscillator":{"n":1,"width":1}})";

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("wigner_lab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(CliFiles, WignerCsvPeakValue) {
  const auto out = path("w.csv");
  const auto r = run({"wigner", "--state", kGauss, "--n", "256", "--extent", "8", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto w = io::to_real_2d(io::load(out));
  EXPECT_EQ(w.nx(), 256u);
  const std::size_t i = w.grid_x.nearest(0.0), j = w.grid_y.nearest(0.0);
  EXPECT_NEAR(w(i, j), 0.31831, 1e-5);
  // the same point as it appears on disk
  EXPECT_NE(io::read_file(out).find("\n0,0,0.3183098861837"), std::string::npos);
}

TEST(Cli, FisherCheckOnBoxMode) {
  const auto r = run({"fisher-check", "--state", kBox});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = report(r);
  EXPECT_NEAR(j.at("i_closed_form").get<double>(), 0.0, 1e-10);
  EXPECT_TRUE(j.at("verdict").get<bool>());
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_DOUBLE_EQ(j.at("b").get<double>(), 1.0);

  const auto s = report(run({"fisher-check", "--state", R"({"Gaussian":{"center":0.5}})"}));
  EXPECT_FALSE(s.at("verdict").get<bool>());
  EXPECT_NEAR(s.at("i_closed_form").get<double>(), 4.0, 1e-9);
}

TEST(Cli, SigmaMinAcrossResolutions) {
  const auto a = run({"sigma-min", "--state", kHo1, "--axis", "momentum", "--epsilon", "1e-3", "--n", "128"});
  const auto b = run({"sigma-min", "--state", kHo1, "--axis", "momentum", "--epsilon", "1e-3", "--n", "256"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const double sa = report(a).at("sigma_min").get<double>(), sb = report(b).at("sigma_min").get<double>();
  EXPECT_TRUE(std::isfinite(sa));
  EXPECT_NEAR(sb / sa, 1.0, 0.02);
  EXPECT_TRUE(report(a).at("report").at("positive").get<bool>());
}

TEST(Cli, SigmaMinBracketingFailureIsReported) {
  const auto r = run({"sigma-min", "--state", kHo1, "--epsilon", "0", "--n", "64"});
  EXPECT_EQ(r.code, 1);
  const auto j = report(r);
  EXPECT_EQ(j.at("error"), "bracketing");
  EXPECT_FALSE(j.at("hi_report").at("positive").get<bool>());
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"wigner", "--state", kGauss, "--bogus"}).code, 2);
  EXPECT_EQ(run({"wigner", "--state", "{not json"}).code, 2);
  EXPECT_EQ(run({"wigner", "--state", R"({"Spline":{}})"}).code, 2);
  EXPECT_EQ(run({"wigner", "--state", kGauss, "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"wigner"}).code, 2);  // no state
  // a grid too small for the state is a domain error
  const auto small = run({"wigner", "--state", kGauss, "--n", "64", "--extent", "2"});
  EXPECT_EQ(small.code, 1);
  EXPECT_NE(small.err.find("domain-coverage"), std::string::npos) << small.err;
  EXPECT_EQ(run({"state-info", "--state", kGauss}).code, 0);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* sub : {"state-info", "wigner", "cross-wigner", "wigner-momentum", "marginals", "hologram", "phase",
                          "intensity", "sample", "reconstruct", "coarse", "limit-check", "positivity", "sigma-min",
                          "fisher", "fisher-check", "roundtrip"})
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
  EXPECT_EQ(run({"coarse", "--help"}).code, 0);
}

TEST_F(CliFiles, MarginalsAndPhaseWriteSiblings) {
  ASSERT_EQ(run({"marginals", "--state", kHo1, "--n", "64", "--out", path("m.json")}).code, 0);
  EXPECT_TRUE(fs::exists(path("m.x.json")));
  EXPECT_TRUE(fs::exists(path("m.mu.json")));
  const auto mx = io::to_real_1d(io::load(path("m.x.json")));
  EXPECT_NEAR(mx[mx.grid.nearest(0.0)], 0.0, 1e-10);

  ASSERT_EQ(run({"phase", "--state", kBox, "--n", "32", "--out", path("p.bin")}).code, 0);
  EXPECT_TRUE(fs::exists(path("p.bin")));
  EXPECT_TRUE(fs::exists(path("p.mask.bin")));
  EXPECT_TRUE(io::load(path("p.bin")).is_complex);
  // several outputs need a file name to hang off
  EXPECT_NE(run({"marginals", "--state", kHo1, "--n", "64"}).code, 0);
}

TEST_F(CliFiles, HologramReconstructRoundTrip) {
  const auto z = path("z.bin");
  ASSERT_EQ(run({"hologram", "--state", kHo1, "--n", "64", "--out", z}).code, 0);
  const auto a = run({"reconstruct", "--in", z, "--format", "bin"});
  const auto b = run({"wigner", "--state", kHo1, "--n", "64", "--format", "bin"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto pa = io::to_real_2d(io::read_bin(a.out)), pb = io::to_real_2d(io::read_bin(b.out));
  double d = 0.0;
  for (std::size_t k = 0; k < pa.values.size(); ++k) d = std::max(d, std::abs(pa.values[k] - pb.values[k]));
  EXPECT_LT(d, 1e-7);
  const auto rt = report(run({"roundtrip", "--state", kHo1, "--n", "64"}));
  EXPECT_TRUE(rt.at("pass").get<bool>());
}

TEST(Cli, OutputsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sample", "--state", kGauss, "--n", "32", "--count", "2000", "--seed", "5"},
           {"intensity", "--state", kGauss, "--n", "32"},
           {"coarse", "--axis", "mu", "--sigma", "2", "--state", kHo1, "--n", "64"},
           {"fisher", "--method", "monte-carlo", "--state", kGauss, "--count", "5000", "--n", "32"},
           {"limit-check", "--state", kHo1, "--axis", "x", "--n", "64"},
           {"positivity", "--state", kHo1, "--n", "64"}}) {
    auto with_threads = [&](const char* t) {
      auto a = args;
      a.insert(a.end(), {"--threads", t});
      return run(a);
    };
    const auto a = with_threads("1"), b = with_threads("3"), c = with_threads("3");
    ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_EQ(b.out, c.out) << args[0];
  }
  const auto s1 = run({"sample", "--state", kGauss, "--n", "32", "--count", "100", "--seed", "5"});
  const auto s2 = run({"sample", "--state", kGauss, "--n", "32", "--count", "100", "--seed", "6"});
  EXPECT_NE(s1.out, s2.out);
}

TEST(Cli, FisherMethods) {
  const std::string shifted = R"({"Gaussian":{"center":0.5}})";
  const auto q = report(run({"fisher", "--state", shifted, "--x0", "1", "--n", "128"}));
  EXPECT_NEAR(q.at("i_quadrature").get<double>(), 64.0, 1e-6);
  const auto c = report(run({"fisher", "--method", "closed-form", "--state", shifted, "--b", "2"}));
  EXPECT_NEAR(c.at("i_closed_form").get<double>(), 4.0, 1e-9);
  const auto x = report(run({"fisher", "--method", "cross-term", "--state", shifted, "--b", "2"}));
  EXPECT_NEAR(x.at("i_cross_term").get<double>(), 4.0, 1e-6);
  EXPECT_EQ(run({"fisher", "--method", "cross-term", "--state", kHo1, "--b", "1"}).code, 1);
}

TEST(Cli, PositivityVerdicts) {
  EXPECT_TRUE(report(run({"positivity", "--state", kGauss, "--n", "64", "--epsilon", "0"})).at("positive").get<bool>());
  const auto ho = report(run({"positivity", "--state", kHo1, "--n", "128"}));
  EXPECT_FALSE(ho.at("positive").get<bool>());
  EXPECT_NEAR(ho.at("min_value").get<double>(), -1.0 / std::numbers::pi, 1e-9);
  const auto smooth = report(run({"positivity", "--state", kHo1, "--n", "128", "--axis", "mu", "--sigma", "60"}));
  EXPECT_TRUE(smooth.at("positive").get<bool>());
}
