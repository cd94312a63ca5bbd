#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "fa2f/harness.hpp"

using namespace fa2f;
using namespace fa2f::harness;

namespace {

// Values from --config are appended as "--key=value" unless the key was
// given on the command line, so flags always win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  auto given = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& [k, v] : parse_config_text(read_file(path)))
    if (k != "config" && !given(k)) args.push_back("--" + k + "=" + v);
  return args;
}

void add_lattice(CLI::App* c, LatticeOptions& o) {
  c->add_option("--env", o.env_file, "environment grid file (overrides --dims/--pi/--boundary)");
  c->add_option("--dims", o.dims, "box dimensions AxB or AxBxC")->capture_default_str();
  c->add_option("--boundary", o.boundary, "healthy_frozen | infected_frozen | immune_frozen | periodic")
      ->capture_default_str();
  c->add_option("--q", o.q, "infection density")->capture_default_str();
  c->add_option("--pi", o.pi, "pollution density")->capture_default_str();
  c->add_option("--origin", o.origin, "origin site (default: box centre)")->expected(2, 3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FA2f kinetically constrained model: simulation, exact solves and certified move paths"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("fa2f ") + kVersion);

  std::uint64_t seed = 0;
  std::string out_file, config_file;
  unsigned threads = default_threads();
  auto common = [&](CLI::App* c, bool need_seed = true) {
    auto* s = c->add_option("--seed", seed, "random seed");
    if (need_seed) s->required();
    c->add_option("--out", out_file, "JSON result file (default: stdout)");
    c->add_option("--config", config_file, "key=value file mirroring the flags");
  };

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "KCM hitting times of the origin over replicas");
  add_lattice(c_sim, sim.lattice);
  common(c_sim);
  c_sim->add_option("--replicas", sim.replicas)->capture_default_str();
  c_sim->add_option("--horizon", sim.horizon)->capture_default_str();
  c_sim->add_option("--stop", sim.stop, "origin-infected | none")->capture_default_str();
  c_sim->add_option("--events", sim.events_file, "CSV event log of replica 0 (time,site,state)");
  c_sim->add_option("--threads", threads);

  BpOptions bp;
  auto* c_bp = app.add_subcommand("bp", "bootstrap percolation closure and origin infection time");
  add_lattice(c_bp, bp.lattice);
  common(c_bp);
  c_bp->add_option("--cfg", bp.cfg_file, "configuration grid file (default: sampled)");

  ExactOptions ex;
  auto* c_ex = app.add_subcommand("exact", "exact Poisson solve and Dirichlet identity on a small box");
  add_lattice(c_ex, ex.lattice);
  common(c_ex);

  Z2Options z2o;
  auto* c_z2 = app.add_subcommand("z2-path", "certified path infecting the origin along a super-good box path");
  common(c_z2);
  c_z2->add_option("--L", z2o.L)->capture_default_str();
  c_z2->add_option("--l", z2o.l)->capture_default_str();
  c_z2->add_option("--q", z2o.q)->capture_default_str();
  c_z2->add_option("--pi", z2o.pi)->capture_default_str();
  c_z2->add_option("--emit-moves", z2o.emit_moves, "CSV move file");
  c_z2->add_option("--emit-env", z2o.emit_env, "environment grid file");
  c_z2->add_option("--emit-cfg", z2o.emit_cfg, "initial configuration grid file");

  Z3Options z3o;
  auto* c_z3 = app.add_subcommand("z3-demo", "certified path infecting the origin along a good brick path");
  common(c_z3);
  c_z3->add_option("--L", z3o.L)->capture_default_str();
  c_z3->add_option("--l", z3o.l)->capture_default_str();
  c_z3->add_option("--q", z3o.q)->capture_default_str();
  c_z3->add_option("--pi", z3o.pi)->capture_default_str();
  c_z3->add_option("--route", z3o.route, "B | A | auto")->capture_default_str();
  c_z3->add_option("--attempts", z3o.attempts, "environments sampled before giving up")->capture_default_str();
  c_z3->add_option("--emit-moves", z3o.emit_moves, "CSV move file");

  SweepOptions sw;
  std::string qs = "0.3,0.25,0.2", pis = "0";
  auto* c_sw = app.add_subcommand("sweep", "median origin infection time over a (q, pi) grid");
  add_lattice(c_sw, sw.lattice);
  common(c_sw);
  c_sw->add_option("--qs", qs, "comma separated q values")->capture_default_str();
  c_sw->add_option("--pis", pis, "comma separated pi values")->capture_default_str();
  c_sw->add_option("--replicas", sw.replicas)->capture_default_str();
  c_sw->add_option("--horizon", sw.horizon)->capture_default_str();
  c_sw->add_option("--delta", sw.delta, "delta entering the probability bound column")->capture_default_str();
  c_sw->add_option("--csv", sw.csv_file, "CSV table");
  c_sw->add_option("--threads", threads);

  VerifyPathOptions vp;
  auto* c_vp = app.add_subcommand("verify-path", "replay a move file and check every move");
  common(c_vp, false);
  c_vp->add_option("--env", vp.env_file, "environment grid file")->required();
  c_vp->add_option("--cfg", vp.cfg_file, "initial configuration grid file")->required();
  c_vp->add_option("--moves", vp.moves_file, "CSV move file")->required();

  std::vector<std::string> args;
  for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
  try {
    std::vector<std::string> fwd(args.rbegin(), args.rend());
    fwd = merge_config(std::move(fwd));
    args.assign(fwd.rbegin(), fwd.rend());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome res;
  try {
    if (*c_sim) {
      sim.seed = seed;
      sim.threads = threads;
      res = run_simulate(sim);
    } else if (*c_bp) {
      bp.seed = seed;
      res = run_bp(bp);
    } else if (*c_ex) {
      ex.seed = seed;
      res = run_exact(ex);
    } else if (*c_z2) {
      z2o.seed = seed;
      res = run_z2_path(z2o);
    } else if (*c_z3) {
      z3o.seed = seed;
      res = run_z3_demo(z3o);
    } else if (*c_sw) {
      sw.seed = seed;
      sw.threads = threads;
      sw.qs = parse_list(qs);
      sw.pis = parse_list(pis);
      res = run_sweep(sw);
    } else if (*c_vp) {
      res = run_verify_path(vp);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::config;
  }
  res.report["version"] = std::string("fa2f ") + kVersion;
  res.report["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = res.report.dump(2) + "\n";
  if (out_file.empty()) {
    std::cout << text;
  } else {
    try {
      write_file(out_file, text);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return exit_code::config;
    }
  }
  if (!res.message.empty()) std::cerr << res.message << "\n";
  return res.exit_code;
}
