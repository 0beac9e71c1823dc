// test_cli.cpp — sweeps, CSV/SVG output, verification reports and the command line
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfgs/cli.hpp"
#include "mfgs/errors.hpp"

using namespace mfgs;
using namespace mfgs::cli;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<std::string> lines(const std::string& s) { return split(s, '\n'); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "mfgs");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mfgs_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

SweepSpec small_spec() {
  SweepSpec s;
  s.from = 1.0;
  s.to = 4.0;
  s.points = 4;
  s.methods = {Method::HighT, Method::Series, Method::Exact};
  return s;
}

}  // namespace

TEST(Names, RoundTrip) {
  for (Method m : {Method::Exact, Method::HighT, Method::Series, Method::ME, Method::Zeroth, Method::Oracle})
    EXPECT_EQ(parse_method(to_string(m)), m);
  for (SweepVariable v : {SweepVariable::Lambda2Q, SweepVariable::Beta, SweepVariable::OmegaC})
    EXPECT_EQ(parse_sweep_variable(to_string(v)), v);
  EXPECT_EQ(parse_methods("high-t,me"), (std::vector<Method>{Method::HighT, Method::ME}));
  EXPECT_THROW(parse_method("fast"), ValidationError);
  EXPECT_THROW(parse_sweep_variable("delta"), ValidationError);
}

TEST(SweepSpec, Grid) {
  SweepSpec s;
  s.from = 1.0;
  s.to = 3.0;
  s.points = 5;
  EXPECT_EQ(s.grid(), (std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0}));
  s.log_grid = true;
  s.from = 0.01;
  s.to = 100.0;
  const auto g = s.grid();
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 100.0);
  EXPECT_NEAR(g[2], 1.0, 1e-14);
  s.points = 2;
  EXPECT_EQ(s.grid(), (std::vector<double>{0.01, 100.0}));
}

TEST(SweepSpec, Validation) {
  SweepSpec s;
  s.points = 1;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.from = 5.0;
  s.to = 1.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.log_grid = true;
  s.from = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.swept = SweepVariable::OmegaC;
  s.spectral = "tabulated:/nonexistent";
  EXPECT_THROW(s.validate(), ValidationError);
  s = {};
  s.spectral = "gaussian";
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Presets, Definitions) {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  EXPECT_EQ(names, (std::vector<std::string>{"fig1a", "fig1b", "fig2", "fig2-text", "fig3"}));
  const auto& f1 = find_preset("fig1a");
  EXPECT_EQ(f1.spec.swept, SweepVariable::Lambda2Q);
  EXPECT_TRUE(f1.valid_above);
  EXPECT_TRUE(f1.in_validity_region(2.0));
  EXPECT_FALSE(f1.in_validity_region(0.5));
  EXPECT_EQ(find_preset("fig1b").plotted, "c_eg");
  const auto& f2 = find_preset("fig2");
  EXPECT_EQ(f2.spec.swept, SweepVariable::Beta);
  EXPECT_DOUBLE_EQ(f2.spec.omega_c, 0.5);
  EXPECT_DOUBLE_EQ(find_preset("fig2-text").spec.omega_c, 0.1);
  EXPECT_FALSE(f2.valid_above);
  EXPECT_DOUBLE_EQ(f2.validity_line, 1.0);
  EXPECT_EQ(find_preset("fig3").spec.swept, SweepVariable::OmegaC);
  EXPECT_THROW(find_preset("fig4"), ValidationError);
}

TEST(Sweep, CsvLayout) {
  const auto r = run_sweep(small_spec());
  const auto rows = lines(to_csv(r));
  ASSERT_EQ(rows.size(), 5u);
  const auto header = split(rows[0], ',');
  EXPECT_EQ(header.front(), "lambda2Q");
  EXPECT_EQ(header[1], "high-t_c_ss_real");
  EXPECT_EQ(header.back(), "notes");
  EXPECT_EQ(header.size(), 1u + 3 * 8 + 1);
  const auto first = split(rows[1], ',');
  EXPECT_EQ(first[0], "1");
  EXPECT_LT(std::stod(first[1]), 0.0);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_EQ(split(rows[i], ',').size(), header.size() - 1) << rows[i];
}

TEST(Sweep, TwoPointsAreEndpoints) {
  auto s = small_spec();
  s.points = 2;
  const auto r = run_sweep(s);
  EXPECT_EQ(r.x, (std::vector<double>{1.0, 4.0}));
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  auto s = small_spec();
  s.points = 8;
  const std::string one = to_csv(run_sweep(s));
  s.jobs = 4;
  EXPECT_EQ(to_csv(run_sweep(s)), one);
  EXPECT_EQ(to_csv(run_sweep(s)), one);
}

TEST(Sweep, OracleOverCapIsNA) {
  auto s = small_spec();
  s.points = 2;
  s.methods = {Method::HighT, Method::Oracle};
  s.oracle_modes = 3;
  s.fock_cutoff = 30;
  const auto r = run_sweep(s);
  EXPECT_TRUE(r.values[0][0].ok);
  EXPECT_FALSE(r.values[0][1].ok);
  EXPECT_NE(r.values[0][1].note.find("exceeds cap"), std::string::npos);
  const auto row = lines(to_csv(r))[1];
  EXPECT_NE(row.find(",NA,NA,"), std::string::npos);
  EXPECT_NE(row.find("oracle: "), std::string::npos);
}

TEST(Sweep, UnsupportedMethodIsNA) {
  auto s = small_spec();
  s.points = 2;
  s.methods = {Method::Series};
  s.convention = Convention::Natural;
  s.from = 0.0;
  s.to = 1.0;
  const auto r = run_sweep(s);
  EXPECT_FALSE(r.values[0][0].ok);  // λ = 0
  EXPECT_TRUE(r.values[1][0].ok);
}

TEST(Sweep, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "NA");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(Svg, Structure) {
  auto s = small_spec();
  const auto r = run_sweep(s);
  SvgOptions o;
  o.validity_line = 2.0;
  o.series_line = 3.0;
  o.title = "test";
  const std::string svg = to_svg(r, o);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("high-t"), std::string::npos);
  EXPECT_NE(svg.find("test"), std::string::npos);
  o.observable = "p_plus";
  EXPECT_THROW(to_svg(r, o), ValidationError);
}

TEST(Verify, DefaultChecksPass) {
  VerifyConfig cfg;
  cfg.random_systems = 5;
  const auto rep = run_verify(cfg);
  EXPECT_TRUE(rep.passed);
  const auto j = nlohmann::json::parse(rep.json);
  EXPECT_TRUE(j["passed"].get<bool>());
  for (const char* name : {"trace_identity", "hermiticity", "kernel_symmetry", "dawson"})
    EXPECT_TRUE(j["checks"][name]["passed"].get<bool>()) << name;
}

TEST(Verify, MutatedKernelIsCaught) {
  VerifyConfig cfg;
  cfg.checks = {"trace_identity"};
  cfg.kernel = [](const SpectralDensity& sd, double beta, double u) {
    return -spectral::overlap_kernel(sd, beta, u);
  };
  const auto rep = run_verify(cfg);
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(nlohmann::json::parse(rep.json)["checks"]["trace_identity"]["passed"].get<bool>());
}

TEST(Verify, EmptyAndUnknownChecks) {
  VerifyConfig cfg;
  cfg.checks = {};
  const auto rep = run_verify(cfg);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(nlohmann::json::parse(rep.json)["checks"].empty());
  cfg.checks = {"everything"};
  EXPECT_THROW(run_verify(cfg), ValidationError);
}

TEST_F(TempDir, CommandLineSweepWritesFiles) {
  const auto csv = dir_ / "a.csv", svg = dir_ / "a.svg";
  EXPECT_EQ(run_args({"sweep", "--from", "1", "--to", "3", "--points", "3", "--methods", "high-t,me", "--out",
                      csv.string(), "--svg", svg.string()}),
            0);
  EXPECT_EQ(lines(slurp(csv)).size(), 4u);
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
}

TEST_F(TempDir, ConfigFileAndOverride) {
  const auto cfg = dir_ / "run.toml", a = dir_ / "a.csv", b = dir_ / "b.csv";
  std::ofstream(cfg) << "[sweep]\nsweep = \"beta\"\nfrom = 0.2\nto = 1.0\npoints = 3\nmethods = \"high-t\"\n";
  EXPECT_EQ(run_args({"--config", cfg.string(), "sweep", "--out", a.string()}), 0);
  const auto rows = lines(slurp(a));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(split(rows[0], ',')[0], "beta");
  EXPECT_EQ(split(rows[1], ',')[0], "0.20000000000000001");
  EXPECT_EQ(run_args({"--config", cfg.string(), "sweep", "--points", "5", "--out", b.string()}), 0);
  EXPECT_EQ(lines(slurp(b)).size(), 6u);
}

TEST_F(TempDir, PresetOverride) {
  const auto out = dir_ / "p.csv";
  EXPECT_EQ(run_args({"sweep", "--preset", "fig1a", "--points", "3", "--methods", "high-t", "--out", out.string()}), 0);
  const auto rows = lines(slurp(out));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(split(rows[1], ',')[0], "0.20000000000000001");
  EXPECT_EQ(split(rows[3], ',')[0], "10");
}

TEST_F(TempDir, VerifyExitCodes) {
  const auto out = dir_ / "v.json";
  EXPECT_EQ(run_args({"verify", "--checks", "dawson,kernel_symmetry", "--out", out.string()}), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(out))["passed"].get<bool>());
  EXPECT_EQ(run_args({"verify", "--checks", "trace_identity", "--fock-cutoff", "4", "--out", out.string()}), 2);
}

TEST(CommandLine, ErrorExitCodes) {
  EXPECT_EQ(run_args({"sweep", "--help"}), 0);
  EXPECT_EQ(run_args({}), 1);
  EXPECT_EQ(run_args({"sweep", "--points", "1"}), 1);
  EXPECT_EQ(run_args({"sweep", "--methods", "fast"}), 1);
  EXPECT_EQ(run_args({"state", "--beta", "-1"}), 1);
  EXPECT_EQ(run_args({"sweep", "--preset", "fig9"}), 1);
}
