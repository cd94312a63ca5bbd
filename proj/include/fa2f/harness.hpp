#pragma once
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fa2f/bounds.hpp"
#include "fa2f/bp.hpp"
#include "fa2f/exact.hpp"
#include "fa2f/grid_io.hpp"
#include "fa2f/kcm.hpp"
#include "fa2f/moves.hpp"
#include "fa2f/z2.hpp"
#include "fa2f/z2_instances.hpp"
#include "fa2f/z3.hpp"
#include "fa2f/z3_instances.hpp"

namespace fa2f::harness {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int verification = 2;
}  // namespace exit_code

// Bad flags, bad files, impossible parameter combinations.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json report;
  int exit_code = exit_code::ok;
  std::string message;  // printed to stderr when nonempty
};

// Flat key=value file; '#' starts a comment, blank lines are skipped.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(is, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + " is not key=value");
    std::string k = trim(line.substr(0, eq));
    while (!k.empty() && k.front() == '-') k.erase(0, 1);
    if (k.empty()) throw ConfigError("config line " + std::to_string(n) + " has an empty key");
    out[k] = trim(line.substr(eq + 1));
  }
  return out;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad number in list: '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

inline Box parse_dims(const std::string& s, Boundary b) {
  std::vector<int> d;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    try {
      d.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad dims '" + s + "', expected AxB or AxBxC");
    }
  }
  try {
    if (d.size() == 2) return Box::square(d[0], d[1], b);
    if (d.size() == 3) return Box::cube(d[0], d[1], d[2], b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("bad dims '" + s + "', expected AxB or AxBxC");
}

inline Site box_center(const Box& b) { return b.lower + Site{b.dims[0] / 2, b.dims[1] / 2, b.dims[2] / 2}; }

inline Json site_json(const Site& s, int d) {
  Json j = Json::array({s.x, s.y});
  if (d == 3) j.push_back(s.z);
  return j;
}

inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline std::string read_file(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

inline Configuration read_grid_file(const std::string& path) {
  try {
    return parse_grid(read_file(path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& text) {
  try {
    write_text_file(path, text);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

// Lattice options shared by simulate, bp, exact and sweep.
struct LatticeOptions {
  std::string env_file;  // grid text; overrides dims/pi/boundary
  std::string dims = "32x32";
  std::string boundary = "healthy_frozen";
  double q = 0.3;
  double pi = 0.0;
  std::optional<std::vector<int>> origin;  // default: box centre

  ModelParams params(int d) const {
    ModelParams p;
    p.q = q;
    p.pi = pi;
    p.dimension = d;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return p;
  }
  Boundary boundary_mode() const {
    try {
      return parse_boundary(boundary);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  Environment environment(std::uint64_t seed) const {
    if (!env_file.empty()) return read_grid_file(env_file).env();
    Box b = parse_dims(dims, boundary_mode());
    return sample_environment(params(b.d), b, seed);
  }
  Site origin_in(const Environment& env) const {
    Site o = box_center(env.box());
    if (origin) {
      if (origin->size() != static_cast<std::size_t>(env.box().d)) throw ConfigError("origin needs one coordinate per axis");
      o = Site{(*origin)[0], (*origin)[1], env.box().d == 3 ? (*origin)[2] : 0};
    }
    if (!env.susceptible(o)) throw ConfigError("origin " + to_string(o, env.box().d) + " is immune or outside the box");
    return o;
  }
  Json echo() const {
    Json j;
    if (!env_file.empty()) j["env"] = env_file;
    else {
      j["dims"] = dims;
      j["pi"] = pi;
      j["boundary"] = boundary;
    }
    j["q"] = q;
    return j;
  }
};

struct SimulateOptions {
  LatticeOptions lattice;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  double horizon = 1e4;
  std::string stop = "origin-infected";  // or "none"
  std::string events_file;               // CSV log of replica 0
  unsigned threads = default_threads();
};

inline std::string events_csv(const Trajectory& t, int d) {
  std::ostringstream os;
  os.precision(17);
  os << (d == 3 ? "time,x,y,z,state\n" : "time,x,y,state\n");
  for (const Event& e : t.events) {
    os << e.time << "," << e.site.x << "," << e.site.y;
    if (d == 3) os << "," << e.site.z;
    os << "," << state_char(e.state) << "\n";
  }
  return os.str();
}

inline Outcome run_simulate(const SimulateOptions& o) {
  if (o.replicas < 1) throw ConfigError("replicas must be at least 1");
  if (!(o.horizon > 0)) throw ConfigError("horizon must be positive");
  if (o.stop != "origin-infected" && o.stop != "none") throw ConfigError("stop must be origin-infected or none");
  const Environment env = o.lattice.environment(o.seed);
  const ModelParams p = o.lattice.params(env.box().d);
  const Site origin = o.lattice.origin_in(env);
  ConfigPredicate stop = o.stop == "none" ? ConfigPredicate{} : site_infected(origin);

  struct Record {
    HittingResult h;
    double final_fraction = 0;
  };
  std::vector<Record> rec(o.replicas);
  Trajectory log0;
  parallel_for(o.replicas, o.threads, [&](std::size_t r) {
    const std::uint64_t rs = replica_seed(o.seed, r);
    Configuration c = sample_configuration(p, env, rs);
    Configuration fin;
    SimulationOptions so;
    so.final_state = &fin;
    if (r == 0 && !o.events_file.empty()) so.log = &log0;
    rec[r].h = simulate(c, p, stop, o.horizon, rs, so);
    const double n = static_cast<double>(env.susceptible_count());
    rec[r].final_fraction = n > 0 ? static_cast<double>(fin.infected_count()) / n : 0.0;
  });
  if (!o.events_file.empty()) write_file(o.events_file, events_csv(log0, env.box().d));

  Json reps = Json::array();
  std::vector<double> times;
  for (std::size_t r = 0; r < rec.size(); ++r) {
    const auto& h = rec[r].h;
    reps.push_back({{"replica", r},
                    {"hit_time", h.hit_time ? Json(*h.hit_time) : Json(nullptr)},
                    {"events", h.events_processed},
                    {"state_changes", h.state_changes},
                    {"final_infected_fraction", rec[r].final_fraction}});
    times.push_back(h.hit_time ? *h.hit_time : std::numeric_limits<double>::infinity());
  }
  const SampleStats st = summarize(times);
  Outcome out;
  out.report["mode"] = "simulate";
  out.report["config"] = o.lattice.echo();
  out.report["config"]["seed"] = o.seed;
  out.report["config"]["replicas"] = o.replicas;
  out.report["config"]["horizon"] = o.horizon;
  out.report["config"]["stop"] = o.stop;
  out.report["origin"] = site_json(origin, env.box().d);
  out.report["susceptible"] = env.susceptible_count();
  out.report["aggregate"] = {{"mean", number_or_null(st.mean)},
                             {"std_error", number_or_null(st.std_error)},
                             {"median", number_or_null(st.median)},
                             {"timeout_fraction", st.timeout_fraction}};
  out.report["replicas"] = std::move(reps);
  return out;
}

struct BpOptions {
  LatticeOptions lattice;
  std::uint64_t seed = 0;
  std::string cfg_file;  // grid text with states; otherwise sampled at density q
};

inline Outcome run_bp(const BpOptions& o) {
  Configuration cfg;
  if (!o.cfg_file.empty()) {
    cfg = read_grid_file(o.cfg_file);
  } else {
    const Environment env = o.lattice.environment(o.seed);
    cfg = sample_configuration(o.lattice.params(env.box().d), env, o.seed);
  }
  const Site origin = o.lattice.origin_in(cfg.env());
  const BpResult r = bp_closure(cfg);
  const int t = r.step(origin);
  Outcome out;
  out.report["mode"] = "bp";
  out.report["config"] = o.cfg_file.empty() ? o.lattice.echo() : Json{{"cfg", o.cfg_file}};
  out.report["config"]["seed"] = o.seed;
  out.report["origin"] = site_json(origin, cfg.box().d);
  out.report["infected_initial"] = cfg.infected_count();
  out.report["closure_size"] = r.closure_size();
  out.report["tau0"] = t == kNever ? Json(nullptr) : Json(t);
  out.report["rounds"] = r.rounds;
  return out;
}

struct ExactOptions {
  LatticeOptions lattice;
  std::uint64_t seed = 0;
};

// E = everything, A = {origin infected}: the identity mu(T 1_E) = D(T) and
// the expected hitting time averaged over mu.
inline Outcome run_exact(const ExactOptions& o) {
  const Environment env = o.lattice.environment(o.seed);
  const double q = o.lattice.params(env.box().d).q;
  const Site origin = o.lattice.origin_in(env);
  std::optional<StateSpace> sp;
  try {
    sp.emplace(env);
  } catch (const std::length_error& e) {
    throw ConfigError(e.what());
  }
  const int bit = sp->bit_of(origin);
  const StatePredicate A = [bit](std::uint32_t s) { return ((s >> bit) & 1U) != 0; };
  const StatePredicate E = [](std::uint32_t) { return true; };
  Outcome out;
  out.report["mode"] = "exact";
  out.report["config"] = o.lattice.echo();
  out.report["config"]["seed"] = o.seed;
  out.report["origin"] = site_json(origin, env.box().d);
  out.report["states"] = sp->num_states();
  try {
    const DirichletCheck c = verify_dirichlet_identity(*sp, q, E, A);
    const auto T = exact_expected_hitting(*sp, q, A);
    double avg = 0;
    for (std::uint32_t s = 0; s < sp->num_states(); ++s) avg += sp->mu(s, q) * T[s];
    out.report["lhs"] = c.lhs;
    out.report["rhs"] = c.rhs;
    out.report["gap"] = c.gap;
    out.report["expected_hitting_from_mu"] = avg;
  } catch (const SingularSystemError& e) {
    throw ConfigError(std::string(e.what()) + " (the origin cannot be infected from some states)");
  }
  return out;
}

struct Z2Options {
  int L = 3;
  int l = 4;
  double q = 0.4;
  double pi = 0.2;
  std::uint64_t seed = 0;
  std::string emit_moves, emit_env, emit_cfg;
};

inline Outcome run_z2_path(const Z2Options& o) {
  if (o.L < 2 || o.l < 1) throw ConfigError("need L >= 2 and l >= 1");
  if (!(o.q > 0 && o.q < 1) || !(o.pi >= 0 && o.pi < 1)) throw ConfigError("need q in (0,1) and pi in [0,1)");
  const auto inst = z2::random_supergood_instance(o.L, o.l, o.seed, o.q, o.pi);
  const MoveSequence g = build_infection_path(inst.cfg, inst.path, inst.origin);
  const LegalityReport rep = verify_legal(inst.cfg, g);
  const bool hit = rep.endpoint.infected(inst.origin);
  if (!o.emit_moves.empty()) write_file(o.emit_moves, write_moves_csv(g, 2));
  if (!o.emit_env.empty()) write_file(o.emit_env, write_grid(inst.cfg.env()));
  if (!o.emit_cfg.empty()) write_file(o.emit_cfg, write_grid(inst.cfg));
  Outcome out;
  Json& r = out.report;
  r["mode"] = "z2-path";
  r["config"] = {{"L", o.L}, {"l", o.l}, {"q", o.q}, {"pi", o.pi}, {"seed", o.seed}};
  r["path_boxes"] = inst.path.boxes.size();
  r["origin"] = site_json(inst.origin, 2);
  r["legal"] = rep.legal;
  if (!rep.legal) {
    r["first_violation"] = *rep.first_violation;
    r["reason"] = rep.reason;
  }
  r["origin_infected"] = hit;
  r["N"] = rep.witness.N;
  r["D"] = rep.witness.hamming_budget;
  r["V"] = rep.witness.locality_volume;
  r["limits"] = {{"N", 4 * o.L * o.L * o.l}, {"D", 3 * o.L}, {"V", 3 * o.L * o.L}};
  if (!rep.legal || !hit) {
    out.exit_code = exit_code::verification;
    out.message = rep.legal ? "origin not infected" : "illegal move at index " + std::to_string(*rep.first_violation);
  }
  return out;
}

struct Z3Options {
  int L = 3;
  int l = 1;
  double q = 0.3;
  double pi = 0.0;
  std::uint64_t seed = 0;
  std::string route = "auto";  // B, A or auto
  int attempts = 16;
  std::string emit_moves;
};

inline Json frozen_constants_json() {
  const auto& c = z3::kFrozen;
  return {{"layer_moves_per_L", c.layer_moves},         {"layer_hamming_per_L", c.layer_hamming},
          {"layer_residual", c.layer_residual},         {"separator_moves_per_L2", c.separator_moves},
          {"separator_extra_per_L", c.separator_extra}, {"pass_moves_per_L2", c.pass_moves},
          {"pass_extra_per_L", c.pass_extra},           {"translate_moves_per_L2", c.translate_moves},
          {"translate_hamming_per_L", c.translate_hamming}, {"origin_moves_per_L2l", c.origin_moves},
          {"origin_hamming_per_L", c.origin_hamming},   {"origin_window_per_L3", c.origin_window}};
}

inline Outcome run_z3_demo(const Z3Options& o) {
  if (o.L < 3) throw ConfigError("no good brick exists for L <= 2 (the sail slab is too thin); use L >= 3");
  if (o.l < 1) throw ConfigError("need l >= 1");
  if (o.route != "B" && o.route != "A" && o.route != "auto") throw ConfigError("route must be B, A or auto");
  if (!(o.q > 0 && o.q < 1) || !(o.pi >= 0 && o.pi < 1)) throw ConfigError("need q in (0,1) and pi in [0,1)");
  Rng rng(o.seed, streams::replica_base);
  std::optional<z3::Z3Instance> inst;
  int attempt = 0;
  for (; attempt < o.attempts && !inst; ++attempt) {
    std::vector<z3::Route> routes(static_cast<std::size_t>(o.l));
    for (auto& r : routes) {
      if (o.route == "B") r = z3::Route::B;
      else if (o.route == "A") r = z3::Route::A;
      else r = rng.bernoulli(0.5) ? z3::Route::B : z3::Route::A;
    }
    inst = z3::planted_instance(o.L, routes, o.q, o.pi, splitmix64(o.seed + static_cast<std::uint64_t>(attempt)));
  }
  Outcome out;
  Json& r = out.report;
  r["mode"] = "z3-demo";
  r["config"] = {{"L", o.L}, {"l", o.l}, {"q", o.q}, {"pi", o.pi}, {"seed", o.seed}, {"route", o.route}};
  r["attempts"] = attempt;
  if (!inst) {
    r["path_found"] = false;
    out.message = "no good brick path in " + std::to_string(attempt) + " sampled environments";
    return out;
  }
  z3::SailBook book(inst->cfg);
  z3::BrickPath path = inst->path;
  if (o.route == "auto") {
    auto found = z3::find_supergood_brickpath(book, o.L, o.l);
    if (found) path = *found;
  }
  const MoveSequence g = z3::infect_origin_z3(inst->cfg, path, book);
  const LegalityReport rep = verify_legal(inst->cfg, g);
  const bool hit = rep.endpoint.infected({0, 0, 0});
  if (!o.emit_moves.empty()) write_file(o.emit_moves, write_moves_csv(g, 3));
  std::string routes;
  for (auto x : path.route) routes += z3::route_char(x);
  const double L = o.L, l = o.l;
  r["path_found"] = true;
  r["routes"] = routes;
  r["supergood_index"] = path.supergood;
  r["legal"] = rep.legal;
  if (!rep.legal) {
    r["first_violation"] = *rep.first_violation;
    r["reason"] = rep.reason;
  }
  r["origin_infected"] = hit;
  r["N"] = rep.witness.N;
  r["hamming_max"] = rep.witness.hamming_budget;
  r["window_volume"] = rep.witness.locality_volume;
  r["ratios"] = {{"N_per_L2l", static_cast<double>(rep.witness.N) / (L * L * l)},
                 {"hamming_per_L", static_cast<double>(rep.witness.hamming_budget) / L},
                 {"window_per_L3", static_cast<double>(rep.witness.locality_volume) / (L * L * L)}};
  r["constants"] = frozen_constants_json();
  const bool within = static_cast<double>(rep.witness.N) <= z3::kFrozen.origin_moves * L * L * l &&
                      static_cast<double>(rep.witness.hamming_budget) <= z3::kFrozen.origin_hamming * L &&
                      static_cast<double>(rep.witness.locality_volume) <= z3::kFrozen.origin_window * L * L * L;
  r["within_constants"] = within;
  if (!rep.legal || !hit) {
    out.exit_code = exit_code::verification;
    out.message = rep.legal ? "origin not infected" : "illegal move at index " + std::to_string(*rep.first_violation);
  }
  return out;
}

struct SweepOptions {
  LatticeOptions lattice;
  std::vector<double> qs{0.3, 0.25, 0.2};
  std::vector<double> pis{0.0};
  std::uint64_t seed = 0;
  std::size_t replicas = 32;
  double horizon = 1e6;
  double delta = 0.0;
  std::string csv_file;
  unsigned threads = default_threads();
};

struct SweepRow {
  double q = 0, pi = 0;
  SampleStats stats;
  double asymptotic_L = 0, asymptotic_log10_l = 0;
  HittingBound bound;
};

// One row per (q, pi) cell; median tau0 plus the bound columns evaluated at
// the asymptotic two-dimensional scales (N = 4L^2 l, D = 3L, V = 3L^2).
inline std::vector<SweepRow> sweep_scaling(const SweepOptions& o) {
  if (o.replicas < 1) throw ConfigError("replicas must be at least 1");
  std::vector<SweepRow> rows;
  for (double pi : o.pis)
    for (double q : o.qs) {
      LatticeOptions lat = o.lattice;
      lat.q = q;
      lat.pi = pi;
      const Environment env = lat.environment(o.seed);
      const ModelParams p = lat.params(env.box().d);
      SweepRow row;
      row.q = q;
      row.pi = pi;
      row.stats = estimate_tau0(env, p, o.replicas, o.horizon, o.seed, lat.origin_in(env), o.threads);
      Z2Scales sc;
      sc.q = q;
      row.asymptotic_L = sc.asymptotic_L();
      row.asymptotic_log10_l = sc.asymptotic_log10_l();
      const auto L = static_cast<std::int64_t>(std::ceil(row.asymptotic_L));
      const double N = 4.0 * static_cast<double>(L * L) * std::pow(10.0, row.asymptotic_log10_l);
      row.bound = eval_hitting_bound(N, 3 * L, 3 * L * L, q, o.delta);
      rows.push_back(row);
    }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "q,pi,median_tau0,mean_tau0,timeout_frac,asymptotic_L,asymptotic_log10_l,log10_time_threshold,prob_bound\n";
  for (const auto& r : rows) {
    auto num = [&](double v) { return std::isfinite(v) ? std::to_string(v) : std::string("inf"); };
    os << r.q << "," << r.pi << "," << num(r.stats.median) << "," << num(r.stats.mean) << ","
       << r.stats.timeout_fraction << "," << r.asymptotic_L << "," << r.asymptotic_log10_l << ","
       << r.bound.time_threshold_log10 << "," << r.bound.prob_bound << "\n";
  }
  return os.str();
}

inline Outcome run_sweep(const SweepOptions& o) {
  const auto rows = sweep_scaling(o);
  if (!o.csv_file.empty()) write_file(o.csv_file, sweep_csv(rows));
  Outcome out;
  Json& r = out.report;
  r["mode"] = "sweep";
  r["config"] = o.lattice.echo();
  r["config"].erase("q");
  r["config"].erase("pi");
  r["config"]["qs"] = o.qs;
  r["config"]["pis"] = o.pis;
  r["config"]["seed"] = o.seed;
  r["config"]["replicas"] = o.replicas;
  r["config"]["horizon"] = o.horizon;
  Json arr = Json::array();
  for (const auto& x : rows)
    arr.push_back({{"q", x.q},
                   {"pi", x.pi},
                   {"median_tau0", number_or_null(x.stats.median)},
                   {"mean_tau0", number_or_null(x.stats.mean)},
                   {"timeout_frac", x.stats.timeout_fraction},
                   {"asymptotic_L", x.asymptotic_L},
                   {"asymptotic_log10_l", x.asymptotic_log10_l},
                   {"log10_time_threshold", x.bound.time_threshold_log10},
                   {"prob_bound", x.bound.prob_bound}});
  r["rows"] = std::move(arr);
  // per pollution level: does the median grow as q falls, in the order given?
  Json mono = Json::object();
  for (double pi : o.pis) {
    std::vector<std::pair<double, double>> qm;
    for (const auto& x : rows)
      if (x.pi == pi) qm.emplace_back(x.q, x.stats.median);
    std::sort(qm.begin(), qm.end(), [](auto& a, auto& b) { return a.first > b.first; });
    bool inc = true;
    for (std::size_t k = 1; k < qm.size(); ++k) inc = inc && qm[k].second > qm[k - 1].second;
    std::ostringstream key;
    key << "pi=" << pi;
    mono[key.str()] = inc;
  }
  r["median_increases_as_q_falls"] = std::move(mono);
  return out;
}

struct VerifyPathOptions {
  std::string env_file, cfg_file, moves_file;
};

inline Outcome run_verify_path(const VerifyPathOptions& o) {
  if (o.env_file.empty() || o.cfg_file.empty() || o.moves_file.empty())
    throw ConfigError("verify-path needs --env, --cfg and --moves");
  const Environment env = read_grid_file(o.env_file).env();
  const Configuration states = read_grid_file(o.cfg_file);
  if (!(states.box() == env.box())) throw ConfigError("environment and configuration boxes differ");
  Configuration cfg(env);
  for (const Site& s : states.infected_sites()) {
    if (!env.susceptible(s)) throw ConfigError("configuration infects immune site " + to_string(s, env.box().d));
    cfg.set(s, State::i);
  }
  MoveSequence g;
  try {
    g = parse_moves_csv(read_file(o.moves_file));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(o.moves_file + ": " + e.what());
  }
  const LegalityReport rep = verify_legal(cfg, g, {true, false});
  Outcome out;
  Json& r = out.report;
  r["mode"] = "verify-path";
  r["config"] = {{"env", o.env_file}, {"cfg", o.cfg_file}, {"moves", o.moves_file}};
  r["legal"] = rep.legal;
  r["N"] = rep.witness.N;
  r["hamming_budget"] = rep.witness.hamming_budget;
  if (!rep.legal) {
    r["first_violation"] = *rep.first_violation;
    r["reason"] = rep.reason;
    out.exit_code = exit_code::verification;
    out.message = "violation at index " + std::to_string(*rep.first_violation) + ": " + rep.reason;
  }
  return out;
}

}  // namespace fa2f::harness
