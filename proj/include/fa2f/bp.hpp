#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "fa2f/lattice.hpp"

namespace fa2f {

inline constexpr int kNever = -1;

struct BpResult {
  Configuration final_state;
  std::vector<int> infection_step;  // per box index, kNever outside the closure
  int rounds = 0;

  bool in_closure(const Site& s) const {
    return final_state.box().contains(s) && infection_step[final_state.box().index(s)] != kNever;
  }
  int step(const Site& s) const { return infection_step[final_state.box().index(s)]; }
  std::size_t closure_size() const { return final_state.infected_count(); }
  std::vector<Site> closure() const { return final_state.infected_sites(); }
};

inline BpResult bp_closure(const Configuration& cfg) {
  const Box& b = cfg.box();
  const Environment& env = cfg.env();
  BpResult r{cfg, std::vector<int>(b.size(), kNever), 0};
  Configuration& cur = r.final_state;

  std::vector<std::uint32_t> cand;
  for (auto k : env.susceptible_indices()) {
    if (cur.infected_at(k))
      r.infection_step[k] = 0;
    else
      cand.push_back(k);
  }
  std::vector<std::uint8_t> queued(b.size(), 0);
  std::vector<std::uint32_t> fresh;
  for (int round = 1;; ++round) {
    fresh.clear();
    for (auto k : cand) {
      queued[k] = 0;
      if (!cur.infected_at(k) && infected_neighbors(cur, b.site(k)) >= 2) fresh.push_back(k);
    }
    if (fresh.empty()) break;
    for (auto k : fresh) {
      cur.put(k, true);
      r.infection_step[k] = round;
    }
    r.rounds = round;
    cand.clear();
    for (auto k : fresh) {
      b.neighbors(
          b.site(k),
          [&](std::size_t j) {
            if (!env.immune_at(j) && !cur.infected_at(j) && !queued[j]) {
              queued[j] = 1;
              cand.push_back(static_cast<std::uint32_t>(j));
            }
          },
          [] {});
    }
  }
  return r;
}

// Round at which the origin becomes infected, nullopt when never.
inline std::optional<int> bp_tau0(const Configuration& cfg, const Site& origin) {
  if (!cfg.env().susceptible(origin)) throw std::domain_error("origin is immune or outside the box");
  auto r = bp_closure(cfg);
  int s = r.step(origin);
  if (s == kNever) return std::nullopt;
  return s;
}

}  // namespace fa2f
