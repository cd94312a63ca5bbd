#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "fa2f/lattice.hpp"
#include "fa2f/rng.hpp"

namespace fa2f {

using ConfigPredicate = std::function<bool(const Configuration&)>;

struct Event {
  double time;
  Site site;
  State state;
};

struct Trajectory {
  Configuration initial;
  std::vector<Event> events;
  double final_time = 0.0;
};

struct HittingResult {
  std::optional<double> hit_time;  // nullopt is TIMEOUT
  double occupation_time_E = 0.0;
  std::uint64_t events_processed = 0;  // rings, including no-op rings
  std::uint64_t state_changes = 0;
  bool timed_out() const { return !hit_time.has_value(); }
};

inline ConfigPredicate site_infected(Site x) {
  return [x](const Configuration& c) { return c.infected(x); };
}

struct SimulationOptions {
  ConfigPredicate observer;            // the event E, optional
  Trajectory* log = nullptr;           // optional event log
  Configuration* final_state = nullptr;  // optional final configuration
};

// Uniformized FA2f dynamics: rings arrive at total rate |S| and hit a uniform
// susceptible site; a ring at a constrained site resamples it from Bernoulli(q).
inline HittingResult simulate(const Configuration& cfg0, const ModelParams& p, const ConfigPredicate& stop,
                              double horizon, std::uint64_t seed, const SimulationOptions& opt = {}) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  HittingResult res;
  Configuration cfg = cfg0;
  const auto& sus = cfg.env().susceptible_indices();
  const Box& box = cfg.box();
  if (opt.log) {
    opt.log->initial = cfg0;
    opt.log->events.clear();
  }
  auto finish = [&](double t) {
    if (opt.log) opt.log->final_time = t;
    if (opt.final_state) *opt.final_state = cfg;
  };
  if (stop && stop(cfg)) {
    res.hit_time = 0.0;
    finish(0.0);
    return res;
  }
  bool inE = opt.observer ? opt.observer(cfg) : false;

  bool frozen = true;
  for (auto k : sus)
    if (infected_neighbors(cfg, box.site(k)) >= 2) {
      frozen = false;
      break;
    }
  if (sus.empty() || frozen) {
    if (inE) res.occupation_time_E = horizon;
    finish(horizon);
    return res;
  }

  Rng rng(seed, streams::dynamics);
  const double rate = static_cast<double>(sus.size());
  double t = 0.0, last = 0.0;
  for (;;) {
    double nt = t + rng.exponential(rate);
    if (nt >= horizon) {
      if (inE) res.occupation_time_E += horizon - last;
      finish(horizon);
      return res;
    }
    t = nt;
    ++res.events_processed;
    std::size_t k = sus[rng.below(sus.size())];
    Site x = box.site(k);
    if (infected_neighbors(cfg, x) < 2) continue;
    bool ns = rng.bernoulli(p.q);
    if (ns == cfg.infected_at(k)) continue;
    if (inE) res.occupation_time_E += t - last;
    last = t;
    cfg.put(k, ns);
    ++res.state_changes;
    if (opt.log) opt.log->events.push_back({t, x, ns ? State::i : State::h});
    if (stop && stop(cfg)) {
      res.hit_time = t;
      finish(t);
      return res;
    }
    if (opt.observer) inE = opt.observer(cfg);
  }
}

struct SampleStats {
  std::vector<double> samples;  // +inf marks a timeout
  double mean = 0.0;            // over finite samples
  double std_error = 0.0;       // over finite samples
  double median = 0.0;
  double q10 = 0.0, q25 = 0.0, q75 = 0.0, q90 = 0.0;
  double timeout_fraction = 0.0;
};

inline double quantile_sorted(const std::vector<double>& v, double p) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double pos = p * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = static_cast<std::size_t>(std::ceil(pos));
  if (lo == hi || v[lo] == v[hi]) return v[lo];
  if (std::isinf(v[hi])) return v[hi];
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline SampleStats summarize(std::vector<double> samples) {
  SampleStats s;
  s.samples = samples;
  std::sort(samples.begin(), samples.end());
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0, to = 0;
  for (double x : samples) {
    if (std::isinf(x)) {
      ++to;
      continue;
    }
    sum += x;
    sum2 += x * x;
    ++n;
  }
  if (n > 0) {
    s.mean = sum / static_cast<double>(n);
    double var = n > 1 ? (sum2 - sum * s.mean) / static_cast<double>(n - 1) : 0.0;
    s.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  s.timeout_fraction = samples.empty() ? 0.0 : static_cast<double>(to) / static_cast<double>(samples.size());
  s.median = quantile_sorted(samples, 0.5);
  s.q10 = quantile_sorted(samples, 0.10);
  s.q25 = quantile_sorted(samples, 0.25);
  s.q75 = quantile_sorted(samples, 0.75);
  s.q90 = quantile_sorted(samples, 0.90);
  return s;
}

inline unsigned default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

// Runs body(r) for r in [0, n) on a few threads; body must only write slot r.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t r = 0; r < n; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < n; r += threads) body(r);
    });
  for (auto& th : pool) th.join();
}

inline std::uint64_t replica_seed(std::uint64_t seed, std::size_t r) {
  return splitmix64(seed ^ (streams::replica_base + r));
}

// Stationary start: each replica draws its own configuration from mu.
inline SampleStats estimate_tau0(const Environment& env, const ModelParams& p, std::size_t replicas, double horizon,
                                 std::uint64_t seed, const Site& origin, unsigned threads = default_threads()) {
  if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
  std::vector<double> out(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    std::uint64_t rs = replica_seed(seed, r);
    Configuration c = sample_configuration(p, env, rs);
    auto h = simulate(c, p, site_infected(origin), horizon, rs);
    out[r] = h.hit_time ? *h.hit_time : std::numeric_limits<double>::infinity();
  });
  return summarize(std::move(out));
}

}  // namespace fa2f
