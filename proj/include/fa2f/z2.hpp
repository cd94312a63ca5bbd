#pragma once
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fa2f/lattice.hpp"
#include "fa2f/moves.hpp"

namespace fa2f {

struct CoarseBox {
  int gx = 0, gy = 0;
  int L = 2;

  Cuboid cells() const { return {{gx * L, gy * L, 0}, {gx * L + L, gy * L + L, 1}}; }
  bool operator==(const CoarseBox&) const = default;
  auto operator<=>(const CoarseBox&) const = default;
};

inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

inline CoarseBox box_of(const Site& s, int L) { return {floor_div(s.x, L), floor_div(s.y, L), L}; }

// Ordered box path; the last box is the terminal one (holding the origin).
struct BoxPath {
  std::vector<CoarseBox> boxes;

  std::size_t length() const { return boxes.size(); }
  bool adjacent_steps() const {
    for (std::size_t k = 1; k < boxes.size(); ++k)
      if (std::abs(boxes[k].gx - boxes[k - 1].gx) + std::abs(boxes[k].gy - boxes[k - 1].gy) != 1) return false;
    return true;
  }
  bool self_avoiding() const {
    auto b = boxes;
    std::sort(b.begin(), b.end());
    return std::adjacent_find(b.begin(), b.end()) == b.end();
  }
};

struct Z2Scales {
  int L = 3;
  int l = 2;
  double q = 0.3;
  double epsilon = 1.0;

  void validate() const {
    if (L < 2 || l < 1) throw std::invalid_argument("need L >= 2 and l >= 1");
  }
  // The asymptotic choices L = q^(-1-eps/3), l = q^(-L-1); reported, never instantiated.
  double asymptotic_L() const { return std::pow(q, -1.0 - epsilon / 3.0); }
  double asymptotic_log10_l() const { return (asymptotic_L() + 1.0) * -std::log10(q); }
};

// Fully susceptible rectangle whose every row and column has an infected site.
inline bool is_good_region(const Configuration& cfg, const Cuboid& r) {
  const int w = r.hi.x - r.lo.x, h = r.hi.y - r.lo.y;
  std::vector<char> row(h, 0), col(w, 0);
  for (int y = r.lo.y; y < r.hi.y; ++y)
    for (int x = r.lo.x; x < r.hi.x; ++x) {
      Site s{x, y, r.lo.z};
      if (!cfg.env().susceptible(s)) return false;
      if (cfg.infected(s)) row[y - r.lo.y] = col[x - r.lo.x] = 1;
    }
  return std::all_of(row.begin(), row.end(), [](char c) { return c; }) &&
         std::all_of(col.begin(), col.end(), [](char c) { return c; });
}

inline bool is_good_square(const Configuration& cfg, const CoarseBox& b) { return is_good_region(cfg, b.cells()); }

inline bool has_infected_line(const Configuration& cfg, const Cuboid& r) {
  for (int y = r.lo.y; y < r.hi.y; ++y) {
    bool full = true;
    for (int x = r.lo.x; x < r.hi.x && full; ++x) full = cfg.infected({x, y, r.lo.z});
    if (full) return true;
  }
  for (int x = r.lo.x; x < r.hi.x; ++x) {
    bool full = true;
    for (int y = r.lo.y; y < r.hi.y && full; ++y) full = cfg.infected({x, y, r.lo.z});
    if (full) return true;
  }
  return false;
}

inline bool is_supergood(const Configuration& cfg, const BoxPath& p) {
  return std::any_of(p.boxes.begin(), p.boxes.end(),
                     [&](const CoarseBox& b) { return has_infected_line(cfg, b.cells()); });
}

// Grid range of boxes lying entirely inside the environment box.
struct BoxGrid {
  int gx0, gy0, gx1, gy1;  // half-open
  static BoxGrid of(const Box& b, int L) {
    return {floor_div(b.lower.x + L - 1, L), floor_div(b.lower.y + L - 1, L), floor_div(b.lower.x + b.dims[0], L),
            floor_div(b.lower.y + b.dims[1], L)};
  }
  bool contains(int gx, int gy) const { return gx >= gx0 && gx < gx1 && gy >= gy0 && gy < gy1; }
};

struct GoodClusters {
  std::map<std::pair<int, int>, int> label;  // good boxes only
  std::vector<std::size_t> sizes;
  std::size_t largest = 0;
  std::size_t origin_cluster = 0;
};

inline GoodClusters good_cluster(const Configuration& cfg, int L, const Site& origin = {}) {
  GoodClusters gc;
  auto g = BoxGrid::of(cfg.box(), L);
  std::map<std::pair<int, int>, bool> good;
  for (int gy = g.gy0; gy < g.gy1; ++gy)
    for (int gx = g.gx0; gx < g.gx1; ++gx) good[{gx, gy}] = is_good_square(cfg, {gx, gy, L});
  for (auto& [key, ok] : good) {
    if (!ok || gc.label.count(key)) continue;
    int id = static_cast<int>(gc.sizes.size());
    std::size_t sz = 0;
    std::deque<std::pair<int, int>> q{key};
    gc.label[key] = id;
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop_front();
      ++sz;
      for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        std::pair<int, int> n{x + dx, y + dy};
        auto it = good.find(n);
        if (it == good.end() || !it->second || gc.label.count(n)) continue;
        gc.label[n] = id;
        q.push_back(n);
      }
    }
    gc.sizes.push_back(sz);
  }
  for (auto s : gc.sizes) gc.largest = std::max(gc.largest, s);
  auto ob = box_of(origin, L);
  if (auto it = gc.label.find({ob.gx, ob.gy}); it != gc.label.end()) gc.origin_cluster = gc.sizes[it->second];
  return gc;
}

// BFS from the origin box through good boxes to the nearest box holding an
// infected line, neighbours in lexicographic order. If that path is shorter
// than l it is extended past the line box by a depth-first search.
inline std::optional<BoxPath> find_supergood_path(const Configuration& cfg, const Z2Scales& sc, const CoarseBox& origin_box) {
  const int L = sc.L;
  auto grid = BoxGrid::of(cfg.box(), L);
  auto good = [&](int gx, int gy) { return grid.contains(gx, gy) && is_good_square(cfg, {gx, gy, L}); };
  if (!good(origin_box.gx, origin_box.gy)) return std::nullopt;
  const std::pair<int, int> dirs[4] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  std::map<std::pair<int, int>, std::pair<int, int>> parent;
  std::deque<std::pair<int, int>> q{{origin_box.gx, origin_box.gy}};
  parent[q.front()] = q.front();
  std::optional<std::pair<int, int>> hit;
  while (!q.empty()) {
    auto c = q.front();
    q.pop_front();
    if (has_infected_line(cfg, CoarseBox{c.first, c.second, L}.cells())) {
      hit = c;
      break;
    }
    for (auto [dx, dy] : dirs) {
      std::pair<int, int> n{c.first + dx, c.second + dy};
      if (parent.count(n) || !good(n.first, n.second)) continue;
      parent[n] = c;
      q.push_back(n);
    }
  }
  if (!hit) return std::nullopt;
  std::vector<std::pair<int, int>> chain;  // line box first, origin box last
  for (auto c = *hit;; c = parent[c]) {
    chain.push_back(c);
    if (c == parent[c]) break;
  }
  if (static_cast<int>(chain.size()) < sc.l) {
    std::vector<std::pair<int, int>> ext;
    std::map<std::pair<int, int>, bool> used;
    for (auto& c : chain) used[c] = true;
    long budget = 200000;
    std::function<bool(std::pair<int, int>)> dfs = [&](std::pair<int, int> c) {
      if (static_cast<int>(chain.size() + ext.size()) >= sc.l) return true;
      if (--budget < 0) return false;
      for (auto [dx, dy] : dirs) {
        std::pair<int, int> n{c.first + dx, c.second + dy};
        if (used[n] || !good(n.first, n.second)) continue;
        used[n] = true;
        ext.push_back(n);
        if (dfs(n)) return true;
        ext.pop_back();
        used[n] = false;
      }
      return false;
    };
    if (!dfs(chain.front())) return std::nullopt;
    std::reverse(ext.begin(), ext.end());
    chain.insert(chain.begin(), ext.begin(), ext.end());
  }
  BoxPath p;
  for (auto& c : chain) p.boxes.push_back({c.first, c.second, L});
  return p;
}

namespace z2 {

// Unit step in the plane.
struct Dir {
  int dx = 0, dy = 0;
  int axis() const { return dx != 0 ? 0 : 1; }
  int sign() const { return dx + dy; }
  Dir left() const { return {-dy, dx}; }  // rotated a quarter turn counterclockwise
  Dir operator-() const { return {-dx, -dy}; }
  bool operator==(const Dir&) const = default;
};

// All sites of region r whose coordinate on `axis` equals c.
inline std::vector<Site> line_sites(const Cuboid& r, int axis, int c) {
  std::vector<Site> out;
  if (axis == 0)
    for (int y = r.lo.y; y < r.hi.y; ++y) out.push_back({c, y, r.lo.z});
  else
    for (int x = r.lo.x; x < r.hi.x; ++x) out.push_back({x, c, r.lo.z});
  return out;
}

// Applies moves to a working configuration, checking each as it goes.
class Builder {
 public:
  Builder(const Configuration& start, const Configuration& reference) : cur_(start), ref_(reference) {}

  const Configuration& current() const { return cur_; }
  MoveSequence& moves() { return seq_; }

  bool try_move(const Site& s, State a) {
    if (cur_.state(s) == a) return true;
    if (infected_neighbors(cur_, s) < 2) return false;
    cur_.set(s, a);
    seq_.push(s, a);
    return true;
  }
  void move(const Site& s, State a) {
    if (!try_move(s, a)) throw std::logic_error("construction produced an illegal move at " + to_string(s, 2));
  }

  // Moves a fully infected line one step in direction t. The new line is
  // filled outwards from one of its infected sites, then the old line is
  // returned to the reference. With `keep` set, that site of the old line is
  // left infected and cures run towards it. Without any reference-infected
  // site to curl around, the last site in order may be left behind.
  void advance(const std::vector<Site>& old_line, const std::vector<Site>& new_line, Dir t,
               std::optional<Site> keep = std::nullopt) {
    Dir v = t.left();
    auto key = [&](const Site& s) { return s.x * v.dx + s.y * v.dy; };
    auto nl = new_line;
    std::sort(nl.begin(), nl.end(), [&](const Site& a, const Site& b) { return key(a) < key(b); });
    auto seed = std::find_if(nl.begin(), nl.end(), [&](const Site& s) { return cur_.infected(s); });
    if (seed == nl.end()) throw std::logic_error("next line has no infected site; box is not good");
    for (auto it = seed; it != nl.begin();) move(*--it, State::i);
    for (auto it = seed + 1; it != nl.end(); ++it) move(*it, State::i);

    auto ol = old_line;
    std::sort(ol.begin(), ol.end(), [&](const Site& a, const Site& b) { return key(a) < key(b); });
    auto needs_cure = [&](const Site& s) { return cur_.infected(s) && !ref_.infected(s) && (!keep || s != *keep); };
    if (keep) {
      auto k = std::find(ol.begin(), ol.end(), *keep);
      for (auto it = ol.begin(); it != k; ++it)
        if (needs_cure(*it)) move(*it, State::h);
      for (auto it = ol.end(); it != k + 1;)
        if (--it, needs_cure(*it)) move(*it, State::h);
      return;
    }
    auto anchor = std::find_if(ol.begin(), ol.end(), [&](const Site& s) { return ref_.infected(s); });
    if (anchor == ol.end()) {
      for (auto& s : ol)
        if (needs_cure(s)) try_move(s, State::h);
      return;
    }
    for (auto it = ol.begin(); it != anchor; ++it)
      if (needs_cure(*it)) move(*it, State::h);
    for (auto it = ol.end(); it != anchor + 1;)
      if (--it, needs_cure(*it)) move(*it, State::h);
  }

  // Moves the line of `r` with coordinate `from` on `axis` to coordinate `to`.
  void slide(const Cuboid& r, int axis, int from, int to) {
    if (from == to) return;
    Dir t = axis == 0 ? Dir{from < to ? 1 : -1, 0} : Dir{0, from < to ? 1 : -1};
    for (int c = from; c != to; c += t.sign()) advance(line_sites(r, axis, c), line_sites(r, axis, c + t.sign()), t);
  }

  // The carrier line sits on the edge of r facing -t_in. Sweep it across r
  // leaving a trail on the side facing -t_out, then slide the trail to the
  // edge facing t_out.
  void rotate(const Cuboid& r, Dir t_in, Dir t_out) {
    const int a = t_in.axis(), b = t_out.axis();
    const int start = t_in.sign() > 0 ? r.lo[a] : r.hi[a] - 1;
    const int stop = t_in.sign() > 0 ? r.hi[a] - 1 : r.lo[a];
    const int trail = t_out.sign() > 0 ? r.lo[b] : r.hi[b] - 1;
    const int exit = t_out.sign() > 0 ? r.hi[b] - 1 : r.lo[b];
    for (int c = start; c != stop; c += t_in.sign()) {
      Site k = line_sites(r, a, c).front();
      k[b] = trail;
      advance(line_sites(r, a, c), line_sites(r, a, c + t_in.sign()), t_in, k);
    }
    slide(r, b, trail, exit);
  }

 private:
  Configuration cur_;
  Configuration ref_;
  MoveSequence seq_;
};

inline Dir step_between(const CoarseBox& a, const CoarseBox& b) { return {b.gx - a.gx, b.gy - a.gy}; }

// Y(x): the box of x plus the adjoining boundary line of each of its four neighbours.
inline Locality box_locality(int L) {
  return [L](const Site& s) {
    auto b = box_of(s, L);
    Cuboid c = b.cells();
    Window w;
    w.parts.push_back(c);
    w.parts.push_back({{c.hi.x, c.lo.y, 0}, {c.hi.x + 1, c.hi.y, 1}});
    w.parts.push_back({{c.lo.x - 1, c.lo.y, 0}, {c.lo.x, c.hi.y, 1}});
    w.parts.push_back({{c.lo.x, c.hi.y, 0}, {c.hi.x, c.hi.y + 1, 1}});
    w.parts.push_back({{c.lo.x, c.lo.y - 1, 0}, {c.hi.x, c.lo.y, 1}});
    return w;
  };
}

}  // namespace z2

// carrier column from_col of rectangle r moved to to_col.
inline MoveSequence propagate_column(const Configuration& cfg, const Cuboid& r, int from_col, int to_col,
                                     const std::optional<Configuration>& reference = std::nullopt) {
  z2::Builder b(cfg, reference ? *reference : cfg);
  b.slide(r, 0, from_col, to_col);
  return std::move(b.moves());
}

// infected left column of r turned into an infected top row.
inline MoveSequence rotate_column(const Configuration& cfg, const Cuboid& r,
                                  const std::optional<Configuration>& reference = std::nullopt) {
  auto top = z2::line_sites(r, 1, r.hi.y - 1);
  if (std::all_of(top.begin(), top.end(), [&](const Site& s) { return cfg.infected(s); })) return {};
  z2::Builder b(cfg, reference ? *reference : cfg);
  b.rotate(r, {1, 0}, {0, 1});
  return std::move(b.moves());
}

// Carries the infected line of the last line-holding box of the path along
// the path until it covers the origin, which lies in the terminal box.
inline MoveSequence build_infection_path(const Configuration& cfg, const BoxPath& path, const Site& origin,
                                         const std::optional<Configuration>& reference = std::nullopt) {
  using z2::Dir;
  if (path.boxes.empty()) throw std::invalid_argument("empty box path");
  if (!path.adjacent_steps() || !path.self_avoiding()) throw std::invalid_argument("box path is not a self-avoiding walk");
  const int L = path.boxes.front().L;
  if (!path.boxes.back().cells().contains(origin)) throw std::invalid_argument("origin not in terminal box");
  int k0 = -1;
  for (int k = static_cast<int>(path.boxes.size()) - 1; k >= 0; --k)
    if (has_infected_line(cfg, path.boxes[k].cells())) {
      k0 = k;
      break;
    }
  if (k0 < 0) throw std::invalid_argument("box path is not super-good");

  z2::Builder b(cfg, reference ? *reference : cfg);
  const int last = static_cast<int>(path.boxes.size()) - 1;

  // locate the line in the first box
  Cuboid r0 = path.boxes[k0].cells();
  int axis = -1, coord = 0;
  for (int y = r0.lo.y; y < r0.hi.y && axis < 0; ++y) {
    auto ln = z2::line_sites(r0, 1, y);
    if (std::all_of(ln.begin(), ln.end(), [&](const Site& s) { return cfg.infected(s); })) axis = 1, coord = y;
  }
  for (int x = r0.lo.x; x < r0.hi.x && axis < 0; ++x) {
    auto ln = z2::line_sites(r0, 0, x);
    if (std::all_of(ln.begin(), ln.end(), [&](const Site& s) { return cfg.infected(s); })) axis = 0, coord = x;
  }

  Dir t_in{};
  for (int k = k0; k <= last; ++k) {
    Cuboid r = path.boxes[k].cells();
    if (k == last) {
      if (k == k0) {
        b.slide(r, axis, coord, origin[axis]);
      } else {
        int a = t_in.axis();
        b.slide(r, a, t_in.sign() > 0 ? r.lo[a] : r.hi[a] - 1, origin[a]);
      }
      break;
    }
    Dir t_out = z2::step_between(path.boxes[k], path.boxes[k + 1]);
    const int ao = t_out.axis();
    const int exit = t_out.sign() > 0 ? r.hi[ao] - 1 : r.lo[ao];
    if (k == k0) {
      if (axis == ao) {
        b.slide(r, ao, coord, exit);
      } else {
        // line parallel to the exit direction: park it on the nearer edge, then turn it
        int lo = r.lo[axis], hi = r.hi[axis] - 1;
        int edge = (coord - lo <= hi - coord) ? lo : hi;
        b.slide(r, axis, coord, edge);
        Dir tin = axis == 0 ? Dir{edge == lo ? 1 : -1, 0} : Dir{0, edge == lo ? 1 : -1};
        b.rotate(r, tin, t_out);
      }
    } else if (t_in == t_out) {
      b.slide(r, ao, t_in.sign() > 0 ? r.lo[ao] : r.hi[ao] - 1, exit);
    } else {
      b.rotate(r, t_in, t_out);
    }
    Cuboid rn = path.boxes[k + 1].cells();
    b.advance(z2::line_sites(r, ao, exit), z2::line_sites(rn, ao, exit + t_out.sign()), t_out);
    t_in = t_out;
  }
  MoveSequence out = std::move(b.moves());
  out.locality = z2::box_locality(L);
  return out;
}

}  // namespace fa2f
