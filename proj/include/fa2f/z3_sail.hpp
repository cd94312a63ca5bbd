#pragma once
#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "fa2f/lattice.hpp"
#include "fa2f/z3_brick.hpp"

namespace fa2f::z3 {

// Coarse vertex v of the brick stands for the cell
// {v.x} x [4v.y, 4v.y+4) x [16v.z, 16v.z+16) in standard coordinates.
inline Cuboid cell(const Site& v) { return {{v.x, 4 * v.y, 16 * v.z}, {v.x + 1, 4 * v.y + 4, 16 * v.z + 16}}; }
inline Site vertex_of(const Site& s) { return {s.x, s.y / 4, s.z / 16}; }
inline Cuboid coarse_box(int L) { return {{0, 0, 0}, {4 * L, 4 * L, 2 * L}}; }

// One oriented path of coarse vertices per coarse layer.
struct Sail {
  Brick brick;
  std::vector<std::vector<Site>> paths;  // paths[k][n] = (x, y, k)

  int L() const { return brick.L(); }
  int layers() const { return 32 * L(); }
  static bool transition(int i) { return i % 16 == 15; }

  bool has_vertex(const Site& v) const {
    if (v.z < 0 || v.z >= static_cast<int>(paths.size())) return false;
    const auto& p = paths[v.z];
    return std::any_of(p.begin(), p.end(), [&](const Site& w) { return w.x == v.x && w.y == v.y; });
  }
  bool contains_standard(const Site& s) const {
    if (!brick.standard_box().contains(s)) return false;
    return has_vertex(vertex_of(s));
  }
  bool contains(const Site& g) const { return contains_standard(brick.to_standard(g)); }
  // thick sail: the sail plus whatever lies one step above it inside the brick
  bool thick_contains(const Site& g) const {
    Site s = brick.to_standard(g);
    if (!brick.standard_box().contains(s)) return false;
    return contains_standard(s) || (s.z > 0 && contains_standard(s - Site{0, 0, 1}));
  }

  // Layer i of the sail in path order, each unit walked towards the path's end.
  std::vector<Site> layer(int i) const {
    std::vector<Site> out;
    const int j = i % 16;
    for (const Site& v : paths[i / 16])
      for (int t = 3; t >= 0; --t) out.push_back(brick.to_global({v.x, 4 * v.y + t, 16 * v.z + j}));
    return out;
  }
  // Layer i shifted one step up.
  std::vector<Site> lifted(int i) const {
    std::vector<Site> out = layer(i);
    const Site up = brick.direction(2);
    for (auto& s : out) s = s + up;
    return out;
  }
  std::vector<Site> sites() const {
    std::vector<Site> out;
    for (int i = 0; i < layers(); ++i) {
      auto l = layer(i);
      out.insert(out.end(), l.begin(), l.end());
    }
    return out;
  }
  std::vector<Site> thick_sites() const {
    std::vector<Site> out = sites();
    for (int i = 15; i + 1 < layers(); i += 16)
      for (const Site& s : lifted(i))
        if (!contains(s)) out.push_back(s);
    return out;
  }
  // Thick-sail sites inside a cuboid.
  std::vector<Site> thick_in(const Cuboid& c) const {
    std::vector<Site> out;
    for (const Site& s : thick_sites())
      if (c.contains(s)) out.push_back(s);
    return out;
  }
  std::set<Site> vertex_set() const {
    std::set<Site> out;
    for (auto& p : paths) out.insert(p.begin(), p.end());
    return out;
  }
};

namespace detail {

struct CoarseEnv {
  int L;
  std::vector<std::uint8_t> susceptible;  // per coarse vertex
  bool sus(const Site& v) const {
    return coarse_box(L).contains(v) && susceptible[(v.z * 4 * L + v.y) * 4 * L + v.x];
  }
  // the vertex, the one above, and the one diagonally above-inside
  bool sigma_ok(const Site& v) const {
    const Cuboid cb = coarse_box(L);
    for (Site w : {v, v + Site{0, 0, 1}, v + Site{-1, -1, 1}})
      if (cb.contains(w) && !sus(w)) return false;
    return true;
  }
};

inline CoarseEnv coarse_env(const Environment& env, const Brick& b) {
  const int L = b.L();
  if (env.box().extent().intersect(b.bounds()) != b.bounds())
    throw std::invalid_argument("brick " + to_string(b) + " is not inside the environment");
  CoarseEnv ce{L, std::vector<std::uint8_t>(std::size_t(32) * L * L * L, 1)};
  coarse_box(L).for_each([&](const Site& v) {
    bool ok = true;
    cell(v).for_each([&](const Site& s) { ok = ok && env.susceptible(b.to_global(s)); });
    ce.susceptible[(v.z * 4 * L + v.y) * 4 * L + v.x] = ok;
  });
  return ce;
}

// Per-layer paths from the plane x=0 to the plane y=0 with unit steps +x or
// -y, at most two equal steps in a row, inside the diagonal slab.
inline void enumerate_paths(const CoarseEnv& ce, int k, std::size_t cap, std::vector<std::vector<Site>>& out) {
  const int L = ce.L, n = 4 * L;
  auto in_slab = [&](int x, int y) { return 3 * L < x + y + k && x + y + k < 4 * L; };
  std::vector<Site> cur;
  std::function<void(int, int)> dfs = [&](int last, int run) {
    const Site& v = cur.back();
    if (v.y == 0) {
      out.push_back(cur);
      if (out.size() > cap) throw std::length_error("too many candidate sail paths; scale too large");
    }
    for (int st = 0; st < 2; ++st) {
      Site w = st == 0 ? v + Site{1, 0, 0} : v + Site{0, -1, 0};
      if (w.x >= n || w.y < 0 || !in_slab(w.x, w.y) || !ce.sigma_ok(w)) continue;
      int r = st == last ? run + 1 : 1;
      if (r > 2) continue;
      cur.push_back(w);
      dfs(st, r);
      cur.pop_back();
    }
  };
  for (int y = n - 1; y >= 0; --y) {
    if (!in_slab(0, y) || !ce.sigma_ok({0, y, k})) continue;
    cur.assign(1, Site{0, y, k});
    dfs(-1, 0);
  }
  std::sort(out.begin(), out.end());
}

// Every site of the units of `path` at standard height h, mapped to global.
template <class F>
void for_units(const Brick& b, const std::vector<Site>& path, int h, F&& f) {
  for (const Site& v : path)
    for (int t = 0; t < 4; ++t) f(b.to_global({v.x, 4 * v.y + t, h}));
}

inline bool seeds_ok(const Configuration& cfg, const Brick& b, const std::vector<Site>& path) {
  const int L = b.L(), k = path.front().z;
  for (int j = 0; j < 16; ++j) {
    const int i = 16 * k + j;
    if (i >= 32 * L - 1) break;
    bool found = false;
    for_units(b, path, i + 1, [&](const Site& g) { found = found || cfg.infected(g); });
    if (!found) return false;
  }
  return true;
}

// Each vertex of `upper` sits above, or diagonally above-outside, a vertex of `lower`.
inline bool stitched(const std::vector<Site>& lower, const std::vector<Site>& upper) {
  auto has = [&](int x, int y) {
    return std::any_of(lower.begin(), lower.end(), [&](const Site& w) { return w.x == x && w.y == y; });
  };
  return std::all_of(upper.begin(), upper.end(), [&](const Site& v) { return has(v.x, v.y) || has(v.x + 1, v.y + 1); });
}

}  // namespace detail

struct SailSearchOptions {
  std::size_t max_paths_per_layer = 200000;
};

// Lexicographically least sail meeting all six good-brick conditions, or none.
inline std::optional<Sail> find_sail(const Configuration& cfg, const Brick& b, const SailSearchOptions& opt = {}) {
  const int L = b.L(), K = 2 * L;
  auto ce = detail::coarse_env(cfg.env(), b);
  const Site mark = vertex_of(designated_site(L));
  std::vector<std::vector<std::vector<Site>>> cand(K);
  for (int k = 0; k < K; ++k) {
    std::vector<std::vector<Site>> all;
    detail::enumerate_paths(ce, k, opt.max_paths_per_layer, all);
    for (auto& p : all) {
      if (k == mark.z && std::none_of(p.begin(), p.end(), [&](const Site& v) { return v == mark; })) continue;
      if (!detail::seeds_ok(cfg, b, p)) continue;
      cand[k].push_back(std::move(p));
    }
    if (cand[k].empty()) return std::nullopt;
  }
  // alive[k][n]: candidate n of layer k extends to a full sail above it
  std::vector<std::vector<char>> alive(K);
  alive[K - 1].assign(cand[K - 1].size(), 1);
  for (int k = K - 2; k >= 0; --k) {
    alive[k].assign(cand[k].size(), 0);
    for (std::size_t n = 0; n < cand[k].size(); ++n)
      for (std::size_t m = 0; m < cand[k + 1].size() && !alive[k][n]; ++m)
        if (alive[k + 1][m] && detail::stitched(cand[k][n], cand[k + 1][m])) alive[k][n] = 1;
  }
  Sail s{b, {}};
  for (int k = 0; k < K; ++k) {
    const std::vector<Site>* pick = nullptr;
    for (std::size_t n = 0; n < cand[k].size() && !pick; ++n)
      if (alive[k][n] && (k == 0 || detail::stitched(s.paths.back(), cand[k][n]))) pick = &cand[k][n];
    if (!pick) return std::nullopt;
    s.paths.push_back(*pick);
  }
  return s;
}

// The six good-brick conditions evaluated directly on a vertex set,
// independently of the search above.
inline std::array<bool, 6> check_good_brick(const Configuration& cfg, const Brick& b, const std::set<Site>& V) {
  const int L = b.L();
  const Cuboid cb = coarse_box(L);
  std::array<bool, 6> ok{true, true, true, true, true, true};
  auto cell_sus = [&](const Site& v) {
    bool r = true;
    cell(v).for_each([&](const Site& s) { r = r && cfg.env().susceptible(b.to_global(s)); });
    return r;
  };
  for (const Site& v : V) {
    if (!cb.contains(v)) return {false, false, false, false, false, false};
    for (Site w : {v, v + Site{0, 0, 1}, v + Site{-1, -1, 1}})
      if (cb.contains(w) && !cell_sus(w)) ok[0] = false;
    if (v.z > 0 && !V.count(v - Site{0, 0, 1}) && !V.count(v + Site{1, 1, -1})) ok[1] = false;
    const int sum = v.x + v.y + v.z;
    if (!(3 * L < sum && sum < 4 * L)) ok[2] = false;
  }
  for (int k = 0; k < 2 * L; ++k) {
    std::vector<Site> lay;
    for (const Site& v : V)
      if (v.z == k) lay.push_back(v);
    std::sort(lay.begin(), lay.end(), [](const Site& p, const Site& q) { return p.x - p.y < q.x - q.y; });
    if (lay.empty() || lay.front().x != 0 || lay.back().y != 0) {
      ok[3] = false;
      continue;
    }
    int last = -1, run = 0;
    for (std::size_t n = 1; n < lay.size(); ++n) {
      Site d = lay[n] - lay[n - 1];
      int st = d == Site{1, 0, 0} ? 0 : (d == Site{0, -1, 0} ? 1 : -1);
      if (st < 0) {
        ok[3] = false;
        break;
      }
      run = st == last ? run + 1 : 1;
      last = st;
      if (run >= 3) ok[3] = false;
    }
  }
  const Site d = designated_site(L);
  ok[4] = std::any_of(V.begin(), V.end(), [&](const Site& v) { return cell(v).contains(d); });
  for (int i = 0; i + 1 < 32 * L; ++i) {
    bool found = false;
    for (const Site& v : V) {
      Cuboid c = cell(v);
      if (i < c.lo.z || i >= c.hi.z) continue;
      for (int y = c.lo.y; y < c.hi.y; ++y) found = found || cfg.infected(b.to_global({c.lo.x, y, i + 1}));
    }
    if (!found) ok[5] = false;
  }
  return ok;
}

}  // namespace fa2f::z3
