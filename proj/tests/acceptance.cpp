// Acceptance checks, one PASS/FAIL line per criterion.
// Usage: fa2f_acceptance [k ...]   (no arguments runs all ten)

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fa2f/bounds.hpp"
#include "fa2f/bp.hpp"
#include "fa2f/exact.hpp"
#include "fa2f/harness.hpp"
#include "fa2f/kcm.hpp"
#include "fa2f/moves.hpp"
#include "fa2f/z2.hpp"
#include "fa2f/z2_instances.hpp"
#include "fa2f/z3.hpp"
#include "fa2f/z3_instances.hpp"

using namespace fa2f;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

// 1. mu(T 1_E) = D(T) on small random environments.
Verdict dirichlet_identity() {
  ModelParams p;
  p.q = 0.3;
  p.pi = 0.15;
  int done = 0, singular = 0;
  double worst = 0;
  for (std::uint64_t s = 0; done < 40 && s < 400; ++s) {
    const Boundary bd = s % 3 == 0 ? Boundary::healthy_frozen : Boundary::infected_frozen;
    Box box = s % 2 ? Box::square(3, 4, bd) : Box::square(4, 3, bd);
    auto env = sample_environment(p, box, s);
    if (env.susceptible_count() < 2 || env.susceptible_count() > 12) continue;
    StateSpace sp(env);
    Rng rng(s, 7);
    const int bit = static_cast<int>(rng.below(sp.num_sites()));
    std::vector<char> inE(sp.num_states());
    for (auto& e : inE) e = rng.bernoulli(0.6);
    const double q = 0.1 + 0.8 * rng.uniform01();
    StatePredicate A = [bit](std::uint32_t st) { return ((st >> bit) & 1U) != 0; };
    StatePredicate E = [&](std::uint32_t st) { return inE[st] != 0; };
    try {
      auto c = verify_dirichlet_identity(sp, q, E, A);
      const double rel = c.gap / std::max({std::abs(c.lhs), std::abs(c.rhs), 1e-300});
      worst = std::max(worst, c.lhs == 0 && c.rhs == 0 ? 0.0 : rel);
      ++done;
    } catch (const SingularSystemError&) {
      ++singular;  // E meets states that never reach A; redrawn
    }
  }
  return {done >= 20 && worst <= 1e-9,
          fmt("%d environments (<=12 susceptible sites, %d redrawn as singular), worst relative gap %.3g", done,
              singular, worst)};
}

// 2. Monte Carlo hitting time against the exact solve.
Verdict hitting_oracle() {
  const double q = 0.35;
  auto env = Environment::all_susceptible(Box::square(2, 2, Boundary::infected_frozen));
  StateSpace sp(env);
  const int bit = sp.bit_of({0, 0, 0});
  auto T = exact_expected_hitting(sp, q, [bit](std::uint32_t s) { return ((s >> bit) & 1U) != 0; });
  double exact = 0;
  for (std::uint32_t s = 0; s < sp.num_states(); ++s) exact += sp.mu(s, q) * T[s];
  ModelParams p;
  p.q = q;
  auto st = estimate_tau0(env, p, 100000, 1e6, 2024, {0, 0, 0});
  const double z = std::abs(st.mean - exact) / st.std_error;

  auto one = Environment::all_susceptible(Box::square(1, 1, Boundary::infected_frozen));
  StateSpace sp1(one);
  auto T1 = exact_expected_hitting(sp1, q, [](std::uint32_t s) { return s != 0; });
  const double single_exact = T1[0];
  // from the healthy state only: condition the stationary start on it
  std::vector<double> samples;
  for (std::uint64_t r = 0; r < 100000; ++r) {
    auto h = simulate(Configuration(one), p, site_infected({0, 0, 0}), 1e6, replica_seed(99, r));
    samples.push_back(*h.hit_time);
  }
  auto s1 = summarize(samples);
  const double z1 = std::abs(s1.mean - 1 / q) / s1.std_error;
  const bool ok = z <= 3 && z1 <= 3 && std::abs(single_exact - 1 / q) <= 1e-12 * (1 / q);
  return {ok, fmt("2x2 patch: MC %.5f +- %.5f vs exact %.5f (%.2f SE); single site: exact %.6f, MC %.5f (%.2f SE), 1/q %.6f",
                  st.mean, st.std_error, exact, z, single_exact, s1.mean, z1, 1 / q)};
}

// 3. Z^2 construction witness on random super-good paths.
Verdict z2_witness() {
  int fails = 0;
  std::size_t worstN = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const int L = 3 + static_cast<int>(s % 4), l = 2 + static_cast<int>(s % 9);
    auto inst = z2::random_supergood_instance(L, l, 50000 + s);
    auto g = build_infection_path(inst.cfg, inst.path, inst.origin);
    auto rep = verify_legal(inst.cfg, g);
    const bool ok = rep.legal && rep.endpoint.infected(inst.origin) && rep.witness.N <= std::size_t(4 * L * L * l) &&
                    rep.witness.hamming_budget <= std::size_t(3 * L) && rep.witness.locality_volume <= 3 * L * L;
    fails += !ok;
    worstN = std::max(worstN, rep.witness.N * 1000 / std::size_t(4 * L * L * l));
  }
  return {fails == 0, fmt("100 paths, L 3..6, l 2..10: %d failures; largest N is %.1f%% of 4L^2 l", fails,
                          static_cast<double>(worstN) / 10)};
}

// 4. Worked examples reach their expected final configurations.
Verdict worked_examples() {
  std::string bad;
  {
    auto f = z2::column_example();
    auto rep = verify_legal(f.start, propagate_column(f.start, f.start.box().extent(), 0, 2, f.reference));
    if (!rep.legal || z2::sorted(rep.endpoint.infected_sites()) != f.expected_final) bad += " column";
  }
  {
    auto f = z2::rotation_example();
    auto rep = verify_legal(f.start, rotate_column(f.start, f.start.box().extent(), f.reference));
    if (!rep.legal || z2::sorted(rep.endpoint.infected_sites()) != f.expected_final) bad += " rotation";
  }
  {
    auto f = z2::path_example();
    auto g = build_infection_path(f.start, z2::path_example_boxes(), {9, 9, 0}, f.reference);
    g.locality = nullptr;
    auto rep = verify_legal(f.start, g);
    if (!rep.legal || z2::sorted(rep.endpoint.infected_sites()) != f.expected_final) bad += " path";
  }
  return {bad.empty(), bad.empty() ? "column propagation, rotation and three-box path match exactly"
                                   : "mismatch in:" + bad};
}

// 5. Z^3 construction battery.
struct BatteryCounts {
  int runs = 0, fails = 0;
  std::string first;
};

void battery_seed(int L, std::uint64_t seed, std::array<BatteryCounts, 6>& c) {
  using namespace z3;
  const auto& K = kFrozen;
  const double dL = L;
  auto note = [&](int k, bool ok, const std::string& why) {
    ++c[k].runs;
    if (!ok) {
      ++c[k].fails;
      if (c[k].first.empty()) c[k].first = why + " (seed " + std::to_string(seed) + ")";
    }
  };
  const Route r0 = seed % 2 ? Route::A : Route::B;
  auto inst = planted_instance(L, {r0}, 0.3, 0.0, 700 + seed);
  if (!inst) {
    for (int k = 0; k < 6; ++k) note(k, false, "no good brick path");
    return;
  }
  const Configuration& eta = inst->cfg;
  SailBook book(eta);
  const Family f = make_family(L).translated(inst->path.z[0]);
  const Sail& s0 = book.get(f.b[0]);
  const Sail& s1 = book.get(f.b[1]);
  const Sail& s2 = book.get(f.b[2]);
  try {
    bool ok = true;
    for (int i = 0; i + 1 < s0.layers() && ok; ++i) {
      auto st = line_by_line(eta, s0, i);
      auto rep = verify_legal(st.start, st.moves);
      for (const Site& x : s0.layer(i + 1)) ok = ok && rep.endpoint.infected(x);
      ok = ok && rep.legal && st.residual.size() <= K.layer_residual && st.moves.size() <= K.layer_moves * dL &&
           rep.witness.hamming_budget <= K.layer_hamming * dL;
    }
    note(0, ok, "line_by_line");
  } catch (const std::exception& e) {
    note(0, false, e.what());
  }
  std::vector<Site> V0;
  f.b[0].layer(12 * L).for_each([&](const Site& s) { V0.push_back(s); });
  std::vector<Site> X1;
  for (const Site& x : V0)
    if (s0.thick_contains(x)) X1.push_back(x);
  const Configuration start = with_infected(eta, X1);
  const auto X2 = handover_set(s0, s1);
  try {
    auto sep = infect_beyond_separator(eta, s0, V0, X2);
    auto rep = verify_legal(start, sep.moves);
    note(1,
         rep.legal && rep.endpoint == with_infected(start, X2) && sep.moves.size() <= K.separator_moves * dL * dL &&
             rep.witness.hamming_budget <= X1.size() + X2.size() + K.separator_extra * dL,
         "infect_beyond_separator");
    auto back = clean_above(eta, s0, V0, X2);
    auto rb = verify_legal(rep.endpoint, back);
    note(2,
         rb.legal && rb.endpoint == start &&
             rb.witness.hamming_budget <= X1.size() + X2.size() + K.separator_extra * dL,
         "clean_above");
  } catch (const std::exception& e) {
    note(1, false, e.what());
    note(2, false, e.what());
  }
  try {
    auto Xp = handover_set(s1, s2);
    auto g = pass_to_next_brick(eta, s0, s1, V0, Xp);
    auto rep = verify_legal(start, g);
    note(3,
         rep.legal && rep.endpoint == with_infected(start, Xp) && g.size() <= K.pass_moves * dL * dL &&
             rep.witness.hamming_budget <= X1.size() + X2.size() + Xp.size() + K.pass_extra * dL,
         "pass_to_next_brick");
  } catch (const std::exception& e) {
    note(3, false, e.what());
  }
  try {
    auto t = translate_infection(eta, f, r0, V0, book);
    auto rep = verify_legal(with_infected(eta, t.seed), t.moves);
    note(4,
         rep.legal && rep.endpoint == with_infected(eta, t.next_seed) && t.moves.size() <= K.translate_moves * dL * dL &&
             rep.witness.hamming_budget <= K.translate_hamming * dL,
         "translate_infection");
  } catch (const std::exception& e) {
    note(4, false, e.what());
  }
  try {
    auto g = infect_origin_z3(eta, inst->path, book);
    auto rep = verify_legal(eta, g);
    note(5,
         rep.legal && rep.endpoint.infected({0, 0, 0}) && g.size() <= K.origin_moves * dL * dL &&
             rep.witness.hamming_budget <= K.origin_hamming * dL &&
             rep.witness.locality_volume <= K.origin_window * dL * dL * dL,
         "infect_origin_z3");
  } catch (const std::exception& e) {
    note(5, false, e.what());
  }
}

Verdict z3_battery() {
  // the battery is asked for at L in {1,2}; check whether a good brick can exist there at all
  std::string small;
  bool small_ok = true;
  for (int L = 1; L <= 2; ++L) {
    const z3::Brick b = z3::Brick::standard(L);
    Configuration full(Environment::all_susceptible(Box::covering(b.bounds(), 3)));
    for (auto k : full.env().susceptible_indices()) full.put(k, true);
    const bool found = z3::find_sail(full, b).has_value();
    small_ok = small_ok && found;
    small += fmt("L=%d %s; ", L, found ? "has good bricks" : "admits no good brick even fully infected");
  }
  const int L = 3, seeds = 50;
  std::vector<std::array<BatteryCounts, 6>> per(seeds);
  parallel_for(seeds, default_threads(), [&](std::size_t s) { battery_seed(L, s, per[s]); });
  std::array<BatteryCounts, 6> tot{};
  for (auto& a : per)
    for (int k = 0; k < 6; ++k) {
      tot[k].runs += a[k].runs;
      tot[k].fails += a[k].fails;
      if (tot[k].first.empty()) tot[k].first = a[k].first;
    }
  const char* names[6] = {"line_by_line", "separator", "clean_above", "pass_on", "translate", "origin"};
  std::string l3 = "L=3 battery:";
  int fails = 0;
  for (int k = 0; k < 6; ++k) {
    l3 += fmt(" %s %d/%d", names[k], tot[k].runs - tot[k].fails, tot[k].runs);
    fails += tot[k].fails;
    if (tot[k].fails) l3 += " [" + tot[k].first + "]";
  }
  return {small_ok && fails == 0, small + l3};
}

// 6. Geometry audits, with site sets built from the coordinate map alone.
Verdict geometry() {
  int bad = 0, checked = 0;
  std::string why;
  auto global_sites = [](const z3::Brick& b, const Cuboid& standard) {
    std::set<Site> out;
    standard.for_each([&](const Site& s) { out.insert(b.to_global(s)); });
    return out;
  };
  for (int L = 1; L <= 3; ++L) {
    const z3::Family f = z3::make_family(L);
    std::vector<z3::Brick> all(f.b.begin(), f.b.end());
    all.insert(all.end(), f.a.begin() + 2, f.a.end());
    all.insert(all.end(), f.clean.begin(), f.clean.end());
    for (const auto& b : all) {
      // cells tile the brick exactly once
      std::set<Site> seen;
      std::size_t total = 0;
      z3::coarse_box(L).for_each([&](const Site& v) {
        z3::cell(v).for_each([&](const Site& s) {
          seen.insert(b.to_global(s));
          ++total;
        });
      });
      std::set<Site> box;
      b.bounds().for_each([&](const Site& s) { box.insert(s); });
      ++checked;
      auto dims = [](const Cuboid& c) { return std::multiset<int>{c.hi.x - c.lo.x, c.hi.y - c.lo.y, c.hi.z - c.lo.z}; };
      if (total != seen.size() || seen != box || dims(b.tip()) != dims(b.section(0))) {
        ++bad;
        why += " tiling " + z3::to_string(b);
      }
    }
    const Cuboid tip{{0, 0, 16 * L}, {4 * L, 4 * L, 32 * L}};
    auto section = [L](int k) { return Cuboid{{0, 0, 4 * k * L}, {4 * L, 16 * L, 4 * (k + 1) * L}}; };
    auto points = [&](const z3::Brick& x, const z3::Brick& y, int k, const std::string& name) {
      ++checked;
      if (global_sites(x, tip) != global_sites(y, section(k)) || !z3::sail_crosses(x, y)) {
        ++bad;
        why += " " + name;
      }
    };
    for (int j = 0; j < 3; ++j) {
      points(f.b[j], f.b[j + 1], 3, fmt("B%d>B%d", j, j + 1));
      points(f.a[j], f.a[j + 1], 3, fmt("A%d>A%d", j, j + 1));
    }
    points(f.b[3], f.clean[0], 0, "B3>C0");
    points(f.a[3], f.clean[0], 3, "A3>C0");
    for (int j = 0; j < 7; ++j) points(f.clean[j], f.clean[j + 1], f.clean_sections[j], fmt("C%d>C%d", j, j + 1));
    points(f.clean[7], f.b[0], 0, "C7>B0");
    for (const auto* r : {&f.b, &f.a}) {
      ++checked;
      const Site v = (*r)[3].anchor() - f.b[0].anchor();
      if (!((*r)[3] == f.b[0].translated(v)) || (*r)[3].flag() - f.b[0].flag() != v) {
        ++bad;
        why += " translation";
      }
    }
  }
  return {bad == 0, fmt("%d checks at L=1,2,3 (tiling and tip shape, 17 pointing relations per scale, route translations)", checked) +
                        (bad ? ", failed:" + why : std::string(", all exact"))};
}

// 7. KCM inside the BP closure; closure monotone in infection, antitone in pollution.
Verdict monotonicity() {
  int viol = 0;
  ModelParams p;
  p.q = 0.25;
  p.pi = 0.1;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Boundary bd = s % 2 ? Boundary::healthy_frozen : Boundary::periodic;
    auto env = sample_environment(p, Box::square(10, 10, bd), s);
    auto c = sample_configuration(p, env, s);
    auto cl = bp_closure(c);
    Trajectory tr;
    SimulationOptions o;
    o.log = &tr;
    simulate(c, p, nullptr, 5.0, s, o);
    for (const auto& e : tr.events) viol += e.state == State::i && !cl.in_closure(e.site);
    Rng rng(s, 11);
    Configuration more = c;
    for (auto k : env.susceptible_indices())
      if (rng.bernoulli(0.05)) more.put(k, true);
    auto cm = bp_closure(more);
    for (auto k : env.susceptible_indices()) viol += cl.infection_step[k] != kNever && cm.infection_step[k] == kNever;
    std::vector<Site> extra;
    for (auto k : env.susceptible_indices())
      if (rng.bernoulli(0.05)) extra.push_back(env.box().site(k));
    Configuration poll(env.with_immune(extra));
    for (const Site& x : c.infected_sites())
      if (poll.env().susceptible(x)) poll.set(x, State::i);
    auto cp = bp_closure(poll);
    for (auto k : env.susceptible_indices()) viol += cp.infection_step[k] != kNever && cl.infection_step[k] == kNever;
  }
  return {viol == 0, fmt("1000 instances: %d violations", viol)};
}

// 8. Path bound against exact rational arithmetic.
Verdict bound_evaluator() {
  using namespace boost::multiprecision;
  const double Ns[10] = {1, 2, 3, 10, 57, 200, 1e3, 4e4, 1e6, 3e8};
  const std::pair<int, int> DV[10] = {{0, 0}, {0, 7}, {1, 2}, {2, 5}, {3, 3}, {5, 17}, {10, 20}, {15, 40}, {25, 50}, {50, 50}};
  const int qs[10] = {1, 2, 5, 10, 13, 25, 37, 50, 71, 99};  // q = k/100
  double worst = 0;
  int points = 0;
  for (double N : Ns)
    for (auto [D, V] : DV)
      for (int qk : qs) {
        ++points;
        cpp_int n = static_cast<long long>(N);
        cpp_int binom = 1;
        for (int k = 1; k <= D; ++k) binom = binom * (V - D + k) / k;
        cpp_rational exact(n * n * binom * (cpp_int(1) << D));
        exact *= cpp_rational(pow(cpp_int(100), static_cast<unsigned>(D + 1)), pow(cpp_int(qk), static_cast<unsigned>(D + 1)));
        const cpp_bin_float_50 ex(exact);
        const auto b = eval_path_bound(N, D, V, qk / 100.0);
        cpp_bin_float_50 rel;
        if (std::isfinite(b.value)) rel = abs(cpp_bin_float_50(b.value) / ex - 1);
        else rel = abs(pow(cpp_bin_float_50(10), cpp_bin_float_50(b.log10_value) - log10(ex)) - 1);
        worst = std::max(worst, rel.convert_to<double>());
      }
  const double hand = eval_path_bound(2, 1, 2, 0.5).value;
  return {worst <= 1e-9 && hand == 64.0,
          fmt("%d grid points, worst relative error %.3g; (2,1,2,1/2) gives %.17g", points, worst, hand)};
}

// 9. Good-square probability and stationary density.
Verdict probabilities() {
  int good = 0;
  for (int m = 0; m < 16; ++m) {
    Configuration c(Environment::all_susceptible(Box::square(2, 2)));
    for (int b = 0; b < 4; ++b)
      if ((m >> b) & 1) c.set({b % 2, b / 2, 0}, State::i);
    good += is_good_square(c, {0, 0, 2});
  }
  ModelParams p;
  p.q = 0.5;
  auto env = Environment::all_susceptible(Box::square(2, 2));
  const int n = 100000;
  int hits = 0;
  for (int r = 0; r < n; ++r) hits += is_good_square(sample_configuration(p, env, replica_seed(5, r)), {0, 0, 2});
  const double ph = static_cast<double>(hits) / n, p0 = 7.0 / 16.0;
  const double zg = std::abs(ph - p0) / std::sqrt(p0 * (1 - p0) / n);

  // time-averaged infected fraction from stationary starts on a torus
  ModelParams pt;
  pt.q = 0.3;
  auto torus = Environment::all_susceptible(Box::square(32, 32, Boundary::periodic));
  const int reps = 64;
  const double T = 20.0;
  std::vector<double> avg(reps);
  parallel_for(reps, default_threads(), [&](std::size_t r) {
    const auto rs = replica_seed(77, r);
    Configuration c = sample_configuration(pt, torus, rs);
    Trajectory tr;
    SimulationOptions o;
    o.log = &tr;
    simulate(c, pt, nullptr, T, rs, o);
    double count = static_cast<double>(c.infected_count()), last = 0, integral = 0;
    for (const auto& e : tr.events) {
      integral += count * (e.time - last);
      last = e.time;
      count += e.state == State::i ? 1 : -1;
    }
    integral += count * (T - last);
    avg[r] = integral / T / static_cast<double>(torus.susceptible_count());
  });
  auto st = summarize(avg);
  const double zt = std::abs(st.mean - pt.q) / st.std_error;
  const bool ok = good == 7 && zg <= 3 && zt <= 3;
  return {ok, fmt("exhaustive %d/16; Monte Carlo %.5f (%.2f sigma from 7/16); torus density %.5f +- %.5f vs q=0.3 (%.2f SE)",
                  good, ph, zg, st.mean, st.std_error, zt)};
}

// 10. Median tau0 grows as q falls.
Verdict scaling() {
  harness::SweepOptions o;
  o.lattice.dims = "64x64";
  o.lattice.boundary = "periodic";
  o.qs = {0.30, 0.25, 0.20};
  o.pis = {0.0};
  o.replicas = 401;
  o.horizon = 1e8;
  o.seed = 10;
  auto rows = harness::sweep_scaling(o);
  std::string d = "median log tau0:";
  bool inc = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    d += fmt(" q=%.2f %.4f", rows[k].q, std::log(rows[k].stats.median));
    if (k > 0) inc = inc && std::log(rows[k].stats.median) > std::log(rows[k - 1].stats.median);
  }
  return {inc, d + fmt(" (%zu replicas each)", o.replicas)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> crit = {
      {"dirichlet identity", dirichlet_identity},
      {"hitting-time oracle", hitting_oracle},
      {"Z2 construction witness", z2_witness},
      {"worked examples", worked_examples},
      {"Z3 construction battery at L in {1,2}", z3_battery},
      {"geometry audits", geometry},
      {"monotonicity and dominance", monotonicity},
      {"bound evaluator", bound_evaluator},
      {"probability estimates", probabilities},
      {"qualitative scaling", scaling},
  };
  std::vector<int> which;
  for (int k = 1; k < argc; ++k) {
    const int c = std::atoi(argv[k]);
    if (c < 1 || c > static_cast<int>(crit.size())) {
      std::cerr << "criterion numbers run from 1 to " << crit.size() << "\n";
      return 1;
    }
    which.push_back(c);
  }
  if (which.empty())
    for (int k = 1; k <= static_cast<int>(crit.size()); ++k) which.push_back(k);
  int failed = 0;
  for (int c : which) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = crit[c - 1].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << crit[c - 1].first << "): " << v.detail
              << fmt(" [%.1fs]", secs) << std::endl;
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
