#include "rodwheel/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rodwheel/io.hpp"

namespace rodwheel::cli {
namespace {

std::filesystem::path ScenarioPath(const std::string& name) {
  return std::filesystem::path(RODWHEEL_SCENARIO_DIR) / (name + ".json");
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rodwheel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
  std::ostringstream out_, err_;
};

std::vector<Sample> ReadCsvFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  return read_csv(in);
}

TEST_F(CliTest, SimulateFreeRun) {
  SimulateOptions opts;
  opts.scenario = ScenarioPath("paper_free");
  opts.out = (dir_ / "free.csv").string();
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitOk) << err_.str();
  const std::vector<Sample> rows = ReadCsvFile(dir_ / "free.csv");
  EXPECT_EQ(rows.size(), 801u);
  EXPECT_NE(out_.str().find("samples: 801"), std::string::npos);
}

TEST_F(CliTest, SimulateCase1TracksSpeed) {
  SimulateOptions opts;
  opts.scenario = ScenarioPath("case1");
  opts.out = (dir_ / "case1.csv").string();
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitOk) << err_.str();
  const std::vector<Sample> rows = ReadCsvFile(dir_ / "case1.csv");
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().t, 30.0);
  EXPECT_LT(std::abs(rows.back().x.dphi() - 2.0), 0.05);
}

TEST_F(CliTest, SimulatePerturbedCase1Falls) {
  SimulateOptions opts;
  opts.scenario = ScenarioPath("case1_perturbed");
  opts.out = (dir_ / "perturbed.csv").string();
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitFall);
  EXPECT_NE(out_.str().find("fall at t="), std::string::npos);
}

TEST_F(CliTest, SimulateOverridesAndStdout) {
  SimulateOptions opts;
  opts.scenario = ScenarioPath("paper_free");
  opts.out = "-";
  opts.duration = 1.0;
  opts.dt = 0.02;
  opts.stride = 5;
  opts.controller = "case2";
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitOk) << err_.str();
  std::istringstream csv(out_.str());
  const std::vector<Sample> rows = read_csv(csv);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.back().t, 1.0);
  EXPECT_NE(rows.front().u, 0.0);
  EXPECT_NE(err_.str().find("samples: 51"), std::string::npos);
}

TEST_F(CliTest, SimulateConfigurationErrors) {
  SimulateOptions opts;
  opts.scenario = dir_ / "missing.json";
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitError);
  EXPECT_NE(err_.str().find("cannot open"), std::string::npos);

  opts.scenario = ScenarioPath("paper_free");
  opts.dt = -1.0;
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitError);

  opts.dt.reset();
  opts.controller = "custom";
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitError);

  opts.controller.reset();
  opts.out = (dir_ / "no_such_dir" / "x.csv").string();
  EXPECT_EQ(cmd_simulate(opts, out_, err_), kExitError);
}

TEST_F(CliTest, CsvIsReproducible) {
  for (const char* name : {"paper_free", "case2"}) {
    SimulateOptions opts;
    opts.scenario = ScenarioPath(name);
    opts.out = "-";
    std::ostringstream a, b, e;
    cmd_simulate(opts, a, e);
    cmd_simulate(opts, b, e);
    EXPECT_EQ(a.str(), b.str()) << name;
  }
}

TEST(Audit, BundledScenarioPasses) {
  for (const char* name : {"paper_free", "paper_free_gravity"}) {
    const AuditReport report = run_audit(load_scenario(ScenarioPath(name)));
    for (const AuditCheck& c : report.checks) EXPECT_TRUE(c.pass) << name << ": " << c.name << " = " << c.value;
    EXPECT_EQ(report.checks.size(), 6u);
    EXPECT_FALSE(report.fall.has_value());
  }

  std::ostringstream out, err;
  EXPECT_EQ(cmd_audit(ScenarioPath("case2"), out, err), kExitOk) << out.str() << err.str();
  EXPECT_NE(out.str().find("PASS oracle.mass_and_rhs"), std::string::npos);
}

TEST(Audit, FlippedGravityIsCaughtByEquilibriumCheckOnly) {
  // Engine and oracle share the corrupted constant, so they agree, and energy
  // is still conserved. Only the physical sanity check notices. Uses the
  // g-scaled potential: in legacy mode the rod weight does not involve g.
  Scenario sc = load_scenario(ScenarioPath("paper_free_gravity"));
  ASSERT_FALSE(sc.params.legacy_potential);
  sc.params.g = -9.81;
  sc.duration = 2.0;
  const AuditReport report = run_audit(sc, 20);
  EXPECT_FALSE(report.all_pass());
  for (const AuditCheck& c : report.checks) {
    if (c.name == "equilibrium.hanging_rod_restoring")
      EXPECT_FALSE(c.pass);
    else
      EXPECT_TRUE(c.pass) << c.name << " = " << c.value;
  }
}

TEST(Audit, MissingFileIsError) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_audit("/nonexistent.json", out, err), kExitError);
}

TEST(Audit, DriftRatioAcrossStep) {
  Scenario sc = load_scenario(ScenarioPath("case1"));
  sc.duration = 10.0;
  sc.dt = 0.02;
  const double r1 = audit_energy(simulate(sc)).balance_residual;
  sc.dt = 0.01;
  const double r2 = audit_energy(simulate(sc)).balance_residual;
  EXPECT_GT(r1 / r2, 3.0);
  EXPECT_LT(r1 / r2, 5.0);
}

TEST(Sweep, Theta0InstabilityBoundary) {
  const Scenario base = load_scenario(ScenarioPath("case1"));
  const std::vector<SweepRow> rows = run_sweep(base, "theta0", {0.0, 1e-12, 1e-6, 0.01});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].value, 0.0);
  EXPECT_FALSE(rows[0].fell);
  EXPECT_TRUE(rows[1].fell);
  EXPECT_TRUE(rows[2].fell);
  EXPECT_TRUE(rows[3].fell);
  EXPECT_LT(rows[3].t_fall, rows[2].t_fall);
  EXPECT_LT(rows[2].t_fall, rows[1].t_fall);
}

TEST(Sweep, DtShrinksDrift) {
  Scenario base = load_scenario(ScenarioPath("paper_free"));
  base.duration = 2.0;
  const std::vector<SweepRow> rows = run_sweep(base, "dt", {0.02, 0.01, 0.005});
  ASSERT_EQ(rows.size(), 3u);
  for (const SweepRow& r : rows) EXPECT_FALSE(r.fell);
  EXPECT_GT(rows[0].energy_drift / rows[1].energy_drift, 3.0);
  EXPECT_GT(rows[1].energy_drift / rows[2].energy_drift, 3.0);
}

TEST(Sweep, Errors) {
  const Scenario base = load_scenario(ScenarioPath("paper_free"));
  EXPECT_THROW(run_sweep(base, "theta0", {}), std::invalid_argument);
  EXPECT_THROW(run_sweep(base, "gravity", {1.0}), std::invalid_argument);
  EXPECT_THROW(run_sweep(base, "k_p", {1.0}), std::invalid_argument);  // no controller to tune

  std::ostringstream out, err;
  EXPECT_EQ(cmd_sweep(ScenarioPath("paper_free"), "theta0", {}, out, err), kExitError);
  EXPECT_NE(err.str().find("at least one value"), std::string::npos);
}

TEST(Sweep, ValueList) {
  EXPECT_EQ(parse_value_list("0,1e-12,0.5"), (std::vector<double>{0.0, 1e-12, 0.5}));
  EXPECT_EQ(parse_value_list("-3"), std::vector<double>{-3.0});
  EXPECT_TRUE(parse_value_list("").empty());
  EXPECT_THROW(parse_value_list("1,,2"), ConfigError);
  EXPECT_THROW(parse_value_list("1,"), ConfigError);
  EXPECT_THROW(parse_value_list("1,x"), ConfigError);
}

TEST(Sweep, GainParametersBecomeCustom) {
  const Scenario base = load_scenario(ScenarioPath("case2"));
  const Scenario sc = apply_sweep_value(base, "k_theta", 0.0);
  EXPECT_EQ(sc.controller.kind, ControllerKind::kCustom);
  EXPECT_EQ(sc.controller.k_theta, 0.0);
  EXPECT_EQ(sc.controller.k_p, 5.0);
  EXPECT_EQ(apply_sweep_value(base, "v_ref", 3.0).controller.v_ref, 3.0);
}

TEST(Sweep, OutputRowsInInputOrder) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_sweep(ScenarioPath("case2"), "v_ref", {10.0, 4.0}, out, err), kExitOk) << err.str();
  std::istringstream lines(out.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "param,value,fell,t_fall,final_dphi,max_abs_theta,energy_drift");
  EXPECT_EQ(first.rfind("v_ref,10,", 0), 0u);
  EXPECT_EQ(second.rfind("v_ref,4,", 0), 0u);
}

}  // namespace
}  // namespace rodwheel::cli
