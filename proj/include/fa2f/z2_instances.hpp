#pragma once
#include <algorithm>
#include <set>
#include <vector>

#include "fa2f/z2.hpp"

namespace fa2f::z2 {

// Three small worked examples of the planar constructions. In each, the
// carrier line is infected on top of a reference configuration in which it
// is healthy; the other marked sites form the reference.
struct WorkedExample {
  Configuration start;
  Configuration reference;
  std::vector<Site> expected_final;  // infected sites of the last panel
};

inline Configuration with_infected(const Environment& env, const std::vector<Site>& s) {
  Configuration c(env);
  for (auto& x : s) c.set(x, State::i);
  return c;
}

inline std::vector<Site> sorted(std::vector<Site> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline WorkedExample column_example() {
  auto env = Environment::all_susceptible(Box::square(3, 5));
  std::vector<Site> ref{{1, 1, 0}, {2, 2, 0}};
  std::vector<Site> start = ref;
  for (int y = 0; y < 5; ++y) start.push_back({0, y, 0});
  std::vector<Site> fin{{0, 4, 0}, {1, 1, 0}};
  for (int y = 0; y < 5; ++y) fin.push_back({2, y, 0});
  return {with_infected(env, start), with_infected(env, ref), sorted(fin)};
}

inline WorkedExample rotation_example() {
  auto env = Environment::all_susceptible(Box::square(5, 5));
  std::vector<Site> ref{{1, 1, 0}, {2, 2, 0}, {3, 4, 0}, {3, 0, 0}, {4, 3, 0}};
  std::vector<Site> start = ref;
  for (int y = 0; y < 5; ++y) start.push_back({0, y, 0});
  std::vector<Site> fin{{1, 1, 0}, {2, 2, 0}, {3, 0, 0}, {4, 3, 0}};
  for (int x = 0; x < 5; ++x) fin.push_back({x, 4, 0});
  return {with_infected(env, start), with_infected(env, ref), sorted(fin)};
}

// Boxes A = [0,5)^2, B above A, C right of B; the bottom row of A carries the line.
inline WorkedExample path_example() {
  auto env = Environment::all_susceptible(Box::square(10, 10));
  std::vector<Site> ref{{2, 1, 0}, {4, 2, 0}, {3, 3, 0}, {1, 4, 0}, {2, 5, 0}, {0, 6, 0}, {1, 7, 0},
                        {4, 8, 0}, {3, 9, 0}, {5, 8, 0}, {6, 6, 0}, {7, 7, 0}, {8, 5, 0}, {9, 9, 0}};
  std::vector<Site> start = ref;
  for (int x = 0; x < 5; ++x) start.push_back({x, 0, 0});
  std::vector<Site> fin{{0, 0, 0}, {2, 1, 0}, {4, 2, 0}, {3, 3, 0}, {1, 4, 0}, {2, 5, 0}, {0, 6, 0},
                        {1, 7, 0}, {3, 9, 0}, {4, 8, 0}, {5, 8, 0}, {6, 6, 0}, {7, 7, 0}, {8, 5, 0}};
  for (int y = 5; y < 10; ++y) fin.push_back({9, y, 0});
  return {with_infected(env, start), with_infected(env, ref), sorted(fin)};
}

inline BoxPath path_example_boxes() { return BoxPath{{{0, 0, 5}, {0, 1, 5}, {1, 1, 5}}}; }

}  // namespace fa2f::z2

namespace fa2f::z2 {

struct RandomPathInstance {
  Configuration cfg;
  BoxPath path;
  Site origin;
};

// Random self-avoiding walk of l boxes ending at the box holding the origin,
// path boxes unpolluted and good (rejection sampled), one infected line in a
// random path box, pollution elsewhere.
inline RandomPathInstance random_supergood_instance(int L, int l, std::uint64_t seed, double q = 0.4,
                                                    double pi_outside = 0.2) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> walk;
  const std::pair<int, int> dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (static_cast<int>(walk.size()) < l) {
    walk.assign(1, {0, 0});
    std::set<std::pair<int, int>> used{{0, 0}};
    while (static_cast<int>(walk.size()) < l) {
      std::vector<std::pair<int, int>> opts;
      for (auto [dx, dy] : dirs) {
        std::pair<int, int> n{walk.back().first + dx, walk.back().second + dy};
        if (!used.count(n)) opts.push_back(n);
      }
      if (opts.empty()) break;
      auto n = opts[rng.below(opts.size())];
      used.insert(n);
      walk.push_back(n);
    }
  }
  std::reverse(walk.begin(), walk.end());
  int gx0 = 0, gy0 = 0, gx1 = 0, gy1 = 0;
  for (auto [x, y] : walk) {
    gx0 = std::min(gx0, x), gy0 = std::min(gy0, y);
    gx1 = std::max(gx1, x), gy1 = std::max(gy1, y);
  }
  Box box = Box::square((gx1 - gx0 + 3) * L, (gy1 - gy0 + 3) * L, Boundary::healthy_frozen,
                        {(gx0 - 1) * L, (gy0 - 1) * L, 0});
  BoxPath path;
  for (auto [x, y] : walk) path.boxes.push_back({x, y, L});
  std::vector<std::uint8_t> lab(box.size(), 0);
  for (std::size_t k = 0; k < box.size(); ++k) {
    Site s = box.site(k);
    auto b = box_of(s, L);
    bool on = std::any_of(path.boxes.begin(), path.boxes.end(), [&](const CoarseBox& c) { return c == b; });
    lab[k] = (!on && rng.bernoulli(pi_outside)) ? 1 : 0;
  }
  Configuration cfg(Environment(box, std::move(lab), pi_outside));
  for (auto k : cfg.env().susceptible_indices()) cfg.put(k, rng.bernoulli(q));
  for (auto& b : path.boxes) {
    Cuboid r = b.cells();
    while (!is_good_region(cfg, r)) r.for_each([&](const Site& s) { cfg.set(s, rng.bernoulli(q) ? State::i : State::h); });
  }
  const auto& lb = path.boxes[rng.below(path.boxes.size())];
  Cuboid r = lb.cells();
  int axis = static_cast<int>(rng.below(2));
  int c = r.lo[axis] + static_cast<int>(rng.below(L));
  for (auto& s : line_sites(r, axis, c)) cfg.set(s, State::i);
  Cuboid t = path.boxes.back().cells();
  Site origin{t.lo.x + static_cast<int>(rng.below(L)), t.lo.y + static_cast<int>(rng.below(L)), 0};
  return {std::move(cfg), std::move(path), origin};
}

}  // namespace fa2f::z2
