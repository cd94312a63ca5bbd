#pragma once
#include <array>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa2f/lattice.hpp"

namespace fa2f::z3 {

// Side lengths of a brick along its standard axes, in units of L.
inline constexpr std::array<int, 3> kExtent{4, 16, 32};

// A brick is fixed by two opposite corners, neither of which it contains.
// Standard coordinates s run over [0,4L)x[0,16L)x[0,32L); the anchor sits at
// s = (4L,16L,0) and the flag at s = (0,0,32L).
class Brick {
 public:
  Brick() = default;
  Brick(Site anchor, Site flag, int L) : anchor_(anchor), flag_(flag), L_(L) {
    if (L < 1) throw std::invalid_argument("brick scale must be positive");
    Site d = flag - anchor;
    std::array<bool, 3> used{};
    for (int k = 0; k < 3; ++k) {
      axis_[k] = -1;
      for (int a = 0; a < 3; ++a)
        if (!used[a] && std::abs(d[a]) == kExtent[k] * L) {
          axis_[k] = a;
          used[a] = true;
          break;
        }
      if (axis_[k] < 0)
        throw std::invalid_argument("flag - anchor " + to_string(d) + " is not a signed rearrangement of (4L,16L,32L)");
    }
  }

  // Corners given in units of L.
  static Brick scaled(Site anchor, Site flag, int L) { return Brick(anchor * L, flag * L, L); }
  static Brick standard(int L) { return scaled({4, 16, 0}, {0, 0, 32}, L); }

  const Site& anchor() const { return anchor_; }
  const Site& flag() const { return flag_; }
  int L() const { return L_; }
  int axis(int k) const { return axis_[k]; }
  bool increasing(int k) const { return anchor_[axis_[k]] < flag_[axis_[k]]; }

  Site to_global(const Site& s) const {
    const int p[3] = {4 * L_ - 1 - s.x, 16 * L_ - 1 - s.y, s.z};
    Site g;
    for (int k = 0; k < 3; ++k) {
      const int a = axis_[k];
      g[a] = increasing(k) ? anchor_[a] + p[k] : anchor_[a] - 1 - p[k];
    }
    return g;
  }
  Site to_standard(const Site& g) const {
    int p[3];
    for (int k = 0; k < 3; ++k) {
      const int a = axis_[k];
      p[k] = increasing(k) ? g[a] - anchor_[a] : anchor_[a] - 1 - g[a];
    }
    return {4 * L_ - 1 - p[0], 16 * L_ - 1 - p[1], p[2]};
  }
  // Global unit vector of the standard direction k.
  Site direction(int k) const {
    Site e{0, 0, 0};
    e[k] = 1;
    return to_global(e) - to_global({0, 0, 0});
  }

  // Global cuboid occupied by a standard-coordinate cuboid.
  Cuboid region(const Cuboid& s) const {
    Site a = to_global(s.lo), b = to_global(s.hi - Site{1, 1, 1});
    Cuboid c;
    for (int k = 0; k < 3; ++k) {
      c.lo[k] = std::min(a[k], b[k]);
      c.hi[k] = std::max(a[k], b[k]) + 1;
    }
    return c;
  }
  Cuboid standard_box() const { return {{0, 0, 0}, {4 * L_, 16 * L_, 32 * L_}}; }
  Cuboid bounds() const { return region(standard_box()); }
  Cuboid base() const { return region({{0, 0, 0}, {4 * L_, 16 * L_, 16 * L_}}); }
  Cuboid top() const { return region({{0, 0, 16 * L_}, {4 * L_, 16 * L_, 32 * L_}}); }
  Cuboid section(int j) const {
    if (j < 0 || j > 7) throw std::out_of_range("section index");
    return region({{0, 0, 4 * j * L_}, {4 * L_, 16 * L_, 4 * (j + 1) * L_}});
  }
  Cuboid tip() const { return region({{0, 0, 16 * L_}, {4 * L_, 4 * L_, 32 * L_}}); }
  Cuboid layer(int i) const { return region({{0, 0, i}, {4 * L_, 16 * L_, i + 1}}); }
  bool contains(const Site& g) const { return bounds().contains(g); }

  Brick translated(const Site& v) const { return Brick(anchor_ + v, flag_ + v, L_); }
  bool operator==(const Brick& o) const { return anchor_ == o.anchor_ && flag_ == o.flag_ && L_ == o.L_; }

 private:
  Site anchor_{}, flag_{};
  int L_ = 1;
  std::array<int, 3> axis_{0, 1, 2};
};

inline std::string to_string(const Brick& b) {
  return "(" + fa2f::to_string(b.anchor()) + ";" + fa2f::to_string(b.flag()) + ")";
}

// Base section of `to` that coincides with the tip of `from`, if any.
inline std::optional<int> pointed_section(const Brick& from, const Brick& to) {
  const Cuboid t = from.tip();
  for (int k = 0; k < 4; ++k)
    if (to.section(k) == t) return k;
  return std::nullopt;
}

// The sail of `from` crosses its tip perpendicular to its first standard
// axis; it cuts the next brick in two only when that axis is the next
// brick's long axis.
inline bool sail_crosses(const Brick& from, const Brick& to) { return from.axis(0) == to.axis(2); }

struct PointingCertificate {
  std::string from, to;
  int expected_section;
  std::optional<int> found_section;
  bool oriented;
  bool ok() const { return found_section && *found_section == expected_section && oriented; }
};

enum class Route { B, A };
inline char route_char(Route r) { return r == Route::B ? 'B' : 'A'; }

// Bricks moved through when carrying infection one step along a brick path.
struct Family {
  int L = 1;
  std::array<Brick, 4> b;      // B-route, b[0] is the reference brick
  std::array<Brick, 4> a;      // A-route, a[0] == b[0], a[1] == b[1]
  std::array<Brick, 8> clean;  // cleaning chain from b[3] / a[3] back to b[0]
  std::array<int, 7> clean_sections{0, 0, 3, 3, 2, 3, 0};

  const std::array<Brick, 4>& route(Route r) const { return r == Route::B ? b : a; }
  Site step(Route r) const { return route(r)[3].anchor() - b[0].anchor(); }
  Family translated(const Site& v) const {
    Family f = *this;
    for (auto& x : f.b) x = x.translated(v);
    for (auto& x : f.a) x = x.translated(v);
    for (auto& x : f.clean) x = x.translated(v);
    return f;
  }
  // Section of clean[0] pointed to by the last route brick.
  int entry_section(Route r) const { return r == Route::B ? 0 : 3; }

  Cuboid bounds() const {
    Cuboid c = b[0].bounds();
    auto grow = [&](const Brick& x) {
      Cuboid y = x.bounds();
      for (int k = 0; k < 3; ++k) {
        c.lo[k] = std::min(c.lo[k], y.lo[k]);
        c.hi[k] = std::max(c.hi[k], y.hi[k]);
      }
    };
    for (auto& x : b) grow(x);
    for (auto& x : a) grow(x);
    for (auto& x : clean) grow(x);
    return c;
  }

  std::vector<PointingCertificate> certificates() const {
    std::vector<PointingCertificate> out;
    auto add = [&](std::string n1, const Brick& x, std::string n2, const Brick& y, int k) {
      out.push_back({std::move(n1), std::move(n2), k, pointed_section(x, y), sail_crosses(x, y)});
    };
    for (int j = 0; j < 3; ++j) add("B" + std::to_string(j), b[j], "B" + std::to_string(j + 1), b[j + 1], 3);
    for (int j = 0; j < 3; ++j) add("A" + std::to_string(j), a[j], "A" + std::to_string(j + 1), a[j + 1], 3);
    add("B3", b[3], "C0", clean[0], entry_section(Route::B));
    add("A3", a[3], "C0", clean[0], entry_section(Route::A));
    for (int j = 0; j < 7; ++j)
      add("C" + std::to_string(j), clean[j], "C" + std::to_string(j + 1), clean[j + 1], clean_sections[j]);
    add("C7", clean[7], "B0", b[0], 0);
    return out;
  }
};

// Translation sequences with the reference brick at the origin, and one
// fixed cleaning chain (found by search; any chain with the same pointing
// pattern would do).
inline Family make_family(int L) {
  Family f;
  f.L = L;
  auto B = [L](Site a, Site fl) { return Brick::scaled(a, fl, L); };
  f.b = {B({0, 0, 0}, {4, 16, 32}), B({-12, 16, 32}, {20, 12, 16}), B({20, 0, 16}, {4, 32, 20}),
         B({4, 16, 4}, {8, 32, 36})};
  f.a = {f.b[0], f.b[1], B({4, 0, 16}, {20, 32, 20}), B({16, 16, 4}, {20, 32, 36})};
  f.clean = {B({4, 28, 36}, {36, 32, 20}),  B({36, 32, 20}, {20, 0, 24}), B({24, 0, 24}, {20, 16, -8}),
             B({36, 16, 8}, {4, 12, -8}),   B({4, 0, -4}, {20, 32, -8}),  B({16, 16, -16}, {20, 32, 16}),
             B({32, 28, 16}, {0, 32, 0}),   B({16, 32, 0}, {0, 0, 4})};
  return f;
}

// Offset placing the designated sail site of the reference brick at the origin.
inline Site origin_offset(int L) { return -Site{3 * L - 2, 12 * L - 5, 16 * L}; }

// Standard coordinates of the designated sail site.
inline Site designated_site(int L) { return {L + 1, 4 * L + 4, 16 * L}; }

}  // namespace fa2f::z3
