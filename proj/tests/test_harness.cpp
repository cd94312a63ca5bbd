#include <gtest/gtest.h>

#include <filesystem>

#include "fa2f/harness.hpp"

using namespace fa2f;
using namespace fa2f::harness;

namespace {
std::string data(const std::string& name) { return std::string(FA2F_TEST_DATA) + "/" + name; }
}  // namespace

TEST(Config, KeyValueWithCommentsAndDashes) {
  auto m = parse_config_text("# sweep\n--q = 0.25\nreplicas=12   # trailing\n\ndims=8x8\n");
  EXPECT_EQ(m.at("q"), "0.25");
  EXPECT_EQ(m.at("replicas"), "12");
  EXPECT_EQ(m.at("dims"), "8x8");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_THROW(parse_config_text("q 0.3\n"), ConfigError);
  EXPECT_THROW(parse_config_text("=3\n"), ConfigError);
}

TEST(Config, ListsAndDims) {
  EXPECT_EQ(parse_list("0.3, 0.25,0.2"), (std::vector<double>{0.3, 0.25, 0.2}));
  EXPECT_THROW(parse_list("0.3,abc"), ConfigError);
  Box b = parse_dims("6x4", Boundary::periodic);
  EXPECT_EQ(b.d, 2);
  EXPECT_EQ(b.dims[0], 6);
  EXPECT_EQ(b.dims[1], 4);
  EXPECT_EQ(parse_dims("3x4x5", Boundary::healthy_frozen).d, 3);
  EXPECT_THROW(parse_dims("0x4", Boundary::periodic), ConfigError);
  EXPECT_THROW(parse_dims("4", Boundary::periodic), ConfigError);
  EXPECT_THROW(parse_dims("4xq", Boundary::periodic), ConfigError);
}

TEST(Config, BadLatticeValues) {
  LatticeOptions o;
  o.q = 1.5;
  EXPECT_THROW(o.environment(1), ConfigError);
  o.q = 0.3;
  o.boundary = "sticky";
  EXPECT_THROW(o.environment(1), ConfigError);
  o.boundary = "periodic";
  o.origin = std::vector<int>{1};
  EXPECT_THROW(o.origin_in(o.environment(1)), ConfigError);
}

TEST(Harness, SimulateIsDeterministicInTheSeed) {
  SimulateOptions o;
  o.lattice.dims = "8x8";
  o.replicas = 6;
  o.seed = 17;
  o.threads = 2;
  auto a = run_simulate(o), b = run_simulate(o);
  o.threads = 1;
  auto c = run_simulate(o);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.report["replicas"], c.report["replicas"]);
  EXPECT_EQ(a.exit_code, exit_code::ok);
  o.seed = 18;
  EXPECT_NE(run_simulate(o).report["replicas"], a.report["replicas"]);
}

TEST(Harness, BpOnFullyInfectedBox) {
  BpOptions o;
  o.cfg_file = data("full_cfg.txt");
  auto r = run_bp(o);
  EXPECT_EQ(r.report["infected_initial"], 16);
  EXPECT_EQ(r.report["closure_size"], 16);
  EXPECT_EQ(r.report["tau0"], 0);
}

TEST(Harness, BpWithoutSeedsNeverReachesOrigin) {
  BpOptions o;
  o.cfg_file = data("tiny_env.txt");
  auto r = run_bp(o);
  EXPECT_EQ(r.report["closure_size"], 0);
  EXPECT_TRUE(r.report["tau0"].is_null());
}

TEST(Harness, ExactIdentityHolds) {
  ExactOptions o;
  o.lattice.dims = "3x3";
  o.lattice.boundary = "infected_frozen";
  auto r = run_exact(o);
  EXPECT_EQ(r.report["states"], 512);
  EXPECT_LT(r.report["gap"].get<double>(), 1e-9 * std::max(1.0, r.report["lhs"].get<double>()));
}

TEST(Harness, ExactUnreachableOriginIsAConfigError) {
  ExactOptions o;
  o.lattice.dims = "3x3";
  o.lattice.boundary = "healthy_frozen";
  EXPECT_THROW(run_exact(o), ConfigError);
}

TEST(Harness, SweepRowsAndCsv) {
  SweepOptions o;
  o.lattice.dims = "12x12";
  o.lattice.boundary = "periodic";
  o.qs = {0.4, 0.3};
  o.pis = {0.0, 0.05};
  o.replicas = 8;
  o.seed = 3;
  auto rows = sweep_scaling(o);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].pi, 0.0);
  EXPECT_EQ(rows[1].q, 0.3);
  EXPECT_EQ(rows[3].pi, 0.05);
  for (const auto& r : rows) {
    EXPECT_GT(r.asymptotic_L, 1.0);
    EXPECT_GE(r.bound.prob_bound, 0.0);
    EXPECT_LE(r.bound.prob_bound, 1.0);
  }
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  auto out = run_sweep(o);
  EXPECT_TRUE(out.report["median_increases_as_q_falls"].contains("pi=0.05"));
  o.replicas = 0;
  EXPECT_THROW(sweep_scaling(o), ConfigError);
}

TEST(Harness, PlanarPathReportIsLegal) {
  Z2Options o;
  o.L = 3;
  o.l = 3;
  o.seed = 4;
  auto r = run_z2_path(o);
  EXPECT_EQ(r.exit_code, exit_code::ok);
  EXPECT_TRUE(r.report["legal"].get<bool>());
  EXPECT_TRUE(r.report["origin_infected"].get<bool>());
}

TEST(Harness, SpatialDemoRejectsSmallScales) {
  Z3Options o;
  o.L = 2;
  EXPECT_THROW(run_z3_demo(o), ConfigError);
}

TEST(Harness, VerifyPathRoundTrip) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fa2f_harness_test";
  fs::create_directories(dir);
  Z2Options o;
  o.L = 3;
  o.l = 2;
  o.seed = 9;
  o.emit_moves = (dir / "m.csv").string();
  o.emit_env = (dir / "e.txt").string();
  o.emit_cfg = (dir / "c.txt").string();
  ASSERT_EQ(run_z2_path(o).exit_code, exit_code::ok);
  VerifyPathOptions v{o.emit_env, o.emit_cfg, o.emit_moves};
  auto ok = run_verify_path(v);
  EXPECT_EQ(ok.exit_code, exit_code::ok);
  EXPECT_TRUE(ok.report["legal"].get<bool>());
  v = {data("tiny_env.txt"), data("tiny_cfg.txt"), data("illegal_moves.csv")};
  auto bad = run_verify_path(v);
  EXPECT_EQ(bad.exit_code, exit_code::verification);
  EXPECT_FALSE(bad.report["legal"].get<bool>());
  EXPECT_EQ(bad.report["first_violation"], 1);
  v.moves_file = data("legal_moves.csv");
  EXPECT_EQ(run_verify_path(v).exit_code, exit_code::ok);
  v.moves_file = (dir / "missing.csv").string();
  EXPECT_THROW(run_verify_path(v), ConfigError);
  fs::remove_all(dir);
}
