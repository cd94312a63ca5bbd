#pragma once
#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "fa2f/lattice.hpp"
#include "fa2f/moves.hpp"
#include "fa2f/z3_brick.hpp"
#include "fa2f/z3_sail.hpp"

namespace fa2f::z3 {

using SiteSet = std::unordered_set<Site, SiteHash>;

inline SiteSet to_set(const std::vector<Site>& v) { return SiteSet(v.begin(), v.end()); }

inline Configuration with_infected(Configuration c, const std::vector<Site>& X) {
  for (const Site& s : X) c.set(s, State::i);
  return c;
}

// Applies moves to a working copy, checking the constraint as it goes and
// recording prior states so that the result can be reversed.
class Runner {
 public:
  explicit Runner(Configuration start) : cur_(std::move(start)) {}

  const Configuration& current() const { return cur_; }
  MoveSequence& moves() { return seq_; }
  const MoveSequence& moves() const { return seq_; }
  bool infected(const Site& s) const { return cur_.infected(s); }

  void move(const Site& s, State a) {
    if (!cur_.env().susceptible(s)) throw std::logic_error("move at immune or outside site " + to_string(s));
    if (infected_neighbors(cur_, s) < 2) throw std::logic_error("construction produced an illegal move at " + to_string(s));
    const std::size_t idx = cur_.box().index(s);
    const bool before = cur_.infected_at(idx);
    cur_.put(idx, a == State::i);
    seq_.moves.push_back({s, a, before ? State::i : State::h, false});
  }

  void replay(const MoveSequence& g) {
    for (const Move& m : g.moves) move(m.site, m.target);
  }
  // Undo g (which carries prior states), leaving infected any site of `keep`.
  void replay_reverse(const MoveSequence& g, const SiteSet& keep = {}) {
    for (auto it = g.moves.rbegin(); it != g.moves.rend(); ++it) {
      if (!it->prior) throw std::logic_error("reversal needs recorded prior states");
      if (*it->prior == State::h && keep.count(it->site)) continue;
      move(it->site, *it->prior);
    }
  }

  // Infects every site of `targets` reachable through legal infections that
  // stay inside `targets`. Returns the sites left healthy.
  std::vector<Site> fill(const std::vector<Site>& targets) {
    SiteSet want;
    std::deque<Site> q;
    for (const Site& s : targets)
      if (!cur_.infected(s) && want.insert(s).second) q.push_back(s);
    while (!q.empty()) {
      Site s = q.front();
      q.pop_front();
      if (cur_.infected(s) || infected_neighbors(cur_, s) < 2) continue;
      move(s, State::i);
      for_neighbors(s, [&](const Site& n) {
        if (want.count(n) && !cur_.infected(n)) q.push_back(n);
      });
    }
    std::vector<Site> miss;
    for (const Site& s : targets)
      if (!cur_.infected(s)) miss.push_back(s);
    return miss;
  }

  // Cures the given infected sites. The order is the reverse of a bootstrap
  // run that re-infects them from everything else; when that run stalls, the
  // first stalled site in the given order is left infected and the run goes
  // on from it. Returns the sites left infected.
  std::vector<Site> cure(const std::vector<Site>& sites) {
    std::vector<Site> E;
    SiteSet inE;
    for (const Site& s : sites)
      if (cur_.infected(s) && inE.insert(s).second) E.push_back(s);
    SiteSet reached;
    std::vector<Site> order, kept;
    auto support = [&](const Site& s) {
      int n = 0;
      cur_.box().neighbors(
          s,
          [&](std::size_t j) {
            if (!cur_.infected_at(j)) return;
            Site t = cur_.box().site(j);
            if (!inE.count(t) || reached.count(t)) ++n;
          },
          [&] { ++n; });
      return n;
    };
    std::deque<Site> q(E.begin(), E.end());
    std::size_t next_seed = 0;
    while (reached.size() < E.size()) {
      while (!q.empty()) {
        Site s = q.front();
        q.pop_front();
        if (reached.count(s) || support(s) < 2) continue;
        reached.insert(s);
        order.push_back(s);
        for_neighbors(s, [&](const Site& n) {
          if (inE.count(n) && !reached.count(n)) q.push_back(n);
        });
      }
      if (reached.size() == E.size()) break;
      while (reached.count(E[next_seed])) ++next_seed;
      const Site seed = E[next_seed];
      reached.insert(seed);
      kept.push_back(seed);
      for_neighbors(seed, [&](const Site& n) {
        if (inE.count(n) && !reached.count(n)) q.push_back(n);
      });
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) move(*it, State::h);
    return kept;
  }

 private:
  template <class F>
  void for_neighbors(const Site& s, F&& f) const {
    cur_.box().neighbors(s, [&](std::size_t j) { f(cur_.box().site(j)); }, [] {});
  }

  Configuration cur_;
  MoveSequence seq_;
};

// Site mask over one brick, indexed by standard coordinates.
class BrickMask {
 public:
  explicit BrickMask(const Brick& b) : b_(b), m_(std::size_t(b.bounds().volume()), 0) {}
  bool at(const Site& g) const {
    Site s = b_.to_standard(g);
    return b_.standard_box().contains(s) && m_[idx(s)];
  }
  void set(const Site& g, bool v = true) { m_[idx(b_.to_standard(g))] = v; }
  std::size_t count() const { return static_cast<std::size_t>(std::count(m_.begin(), m_.end(), 1)); }

 private:
  std::size_t idx(const Site& s) const {
    const int L = b_.L();
    return (std::size_t(s.z) * 16 * L + s.y) * 4 * L + s.x;
  }
  Brick b_;
  std::vector<std::uint8_t> m_;
};

// The part of the brick connected to its top once `cut` is removed. Throws
// unless the cut keeps the bottom layer away from the top.
inline BrickMask upper_part(const Brick& b, const SiteSet& cut) {
  BrickMask up(b);
  const int L = b.L();
  std::deque<Site> q;
  Site start = b.to_global({0, 0, 32 * L - 1});
  if (cut.count(start)) throw std::invalid_argument("separating set touches the top of the brick");
  up.set(start);
  q.push_back(start);
  const Cuboid box = b.bounds();
  while (!q.empty()) {
    Site s = q.front();
    q.pop_front();
    for (int a = 0; a < 3; ++a)
      for (int d = -1; d <= 1; d += 2) {
        Site n = s;
        n[a] += d;
        if (!box.contains(n) || cut.count(n) || up.at(n)) continue;
        up.set(n);
        q.push_back(n);
      }
  }
  for (int x = 0; x < 4 * L; ++x)
    for (int y = 0; y < 16 * L; ++y)
      if (up.at(b.to_global({x, y, 0}))) throw std::invalid_argument("set does not separate brick " + to_string(b));
  return up;
}

struct LayerStep {
  MoveSequence moves;
  Configuration start;         // base with layer i infected
  std::vector<Site> residual;  // sites off the next layer where the endpoint still differs from base
};

namespace detail {

// One layer of the upward sweep inside `r`. Sites in `keep` are never cured.
inline std::vector<Site> advance_layer(Runner& r, const Sail& sail, int i, const SiteSet& keep) {
  auto up = sail.lifted(i);
  if (!r.fill(up).empty()) throw std::runtime_error("no infected seed above sail layer " + std::to_string(i));
  const auto next = sail.layer(i + 1);
  if (Sail::transition(i) && !r.fill(next).empty())
    throw std::runtime_error("transition above sail layer " + std::to_string(i) + " cannot be completed");
  SiteSet nx = to_set(next);
  std::vector<Site> E;
  for (const Site& s : sail.layer(i))
    if (!nx.count(s) && !keep.count(s)) E.push_back(s);
  for (const Site& s : up)
    if (!nx.count(s) && !keep.count(s)) E.push_back(s);
  return r.cure(E);
}

}  // namespace detail

// Moves the infection from sail layer i to layer i+1, starting from base
// with layer i infected. Sites infected in base are never cured.
inline LayerStep line_by_line(const Configuration& base, const Sail& sail, int i) {
  if (i < 0 || i + 1 >= sail.layers()) throw std::out_of_range("sail layer");
  LayerStep out;
  out.start = with_infected(base, sail.layer(i));
  Runner r(out.start);
  SiteSet keep;
  for (const Site& s : sail.layer(i))
    if (base.infected(s)) keep.insert(s);
  for (const Site& s : sail.lifted(i))
    if (base.infected(s)) keep.insert(s);
  detail::advance_layer(r, sail, i, keep);
  out.moves = std::move(r.moves());
  SiteSet nx = to_set(sail.layer(i + 1));
  for (const Site& s : hamming_diff(r.current(), base))
    if (!nx.count(s)) out.residual.push_back(s);
  return out;
}

// Carries sail layer `from` upwards from base (with that layer infected)
// until every site of `goal` has been infected, never curing goal sites or
// sites infected in base. The sequence stops at the last goal infection.
inline MoveSequence sweep(const Configuration& base, const Sail& sail, int from, const std::vector<Site>& goal) {
  Configuration start = with_infected(base, sail.layer(from));
  SiteSet remaining;
  for (const Site& s : goal)
    if (!start.infected(s)) remaining.insert(s);
  if (remaining.empty()) return {};
  Runner r(start);
  SiteSet keep = to_set(goal);
  auto is_base = [&](const Site& s) { return base.infected(s); };
  std::size_t scanned = 0;
  for (int i = from; i + 1 < sail.layers(); ++i) {
    SiteSet k2 = keep;
    for (const Site& s : sail.layer(i))
      if (is_base(s)) k2.insert(s);
    for (const Site& s : sail.lifted(i))
      if (is_base(s)) k2.insert(s);
    detail::advance_layer(r, sail, i, k2);
    auto& mv = r.moves().moves;
    for (; scanned < mv.size(); ++scanned) {
      if (mv[scanned].target == State::i) remaining.erase(mv[scanned].site);
      if (remaining.empty()) {
        mv.resize(scanned + 1);
        return std::move(r.moves());
      }
    }
  }
  throw std::runtime_error("sweep ended with goal sites still healthy");
}

struct SeparatorResult {
  MoveSequence moves;
  std::vector<Site> X1;  // separating set met with the thick sail
};

namespace detail {

// From base (X1 already infected) to base with X2 infected as well.
inline MoveSequence separator_moves(const Configuration& base, const Sail& sail, const std::vector<Site>& X1,
                                    const BrickMask& upper, const std::vector<Site>& X2) {
  std::vector<Site> todo;
  for (const Site& s : X2) {
    if (!upper.at(s) || !sail.thick_contains(s))
      throw std::invalid_argument("target site " + to_string(s) + " is not above the separator on the thick sail");
    if (!base.infected(s)) todo.push_back(s);
  }
  if (todo.empty()) return {};
  if (X1.empty()) throw std::invalid_argument("separating set misses the thick sail");
  int low = sail.layers();
  for (const Site& s : X1) low = std::min(low, sail.brick.to_standard(s).z);
  MoveSequence scratch = sweep(base, sail, low, todo);
  MoveSequence kept;
  for (const Move& m : scratch.moves)
    if (upper.at(m.site)) kept.moves.push_back({m.site, m.target, std::nullopt, false});
  Runner r(base);
  r.replay(kept);
  SiteSet protect = to_set(X1);
  for (const Site& s : X2) protect.insert(s);
  MoveSequence forward = r.moves();
  r.replay_reverse(forward, protect);
  return std::move(r.moves());
}

}  // namespace detail

// Starting from base with X1 = V ∩ thick sail infected, infects X2 (above V
// on the thick sail) and returns everything else to base.
inline SeparatorResult infect_beyond_separator(const Configuration& base, const Sail& sail, const std::vector<Site>& V,
                                               const std::vector<Site>& X2) {
  SeparatorResult out;
  for (const Site& s : V)
    if (sail.thick_contains(s)) out.X1.push_back(s);
  BrickMask up = upper_part(sail.brick, to_set(V));
  Configuration start = with_infected(base, out.X1);
  out.moves = detail::separator_moves(start, sail, out.X1, up, X2);
  return out;
}

// Reverse of infect_beyond_separator: from base with X1 and X2 infected back
// to base with X1 infected.
inline MoveSequence clean_above(const Configuration& base, const Sail& sail, const std::vector<Site>& V,
                                const std::vector<Site>& X2) {
  return reverse(infect_beyond_separator(base, sail, V, X2).moves);
}

// Sites shared by the two sails.
inline std::vector<Site> sail_intersection(const Sail& a, const Sail& b) {
  if (!pointed_section(a.brick, b.brick)) throw std::invalid_argument("first brick does not point to the second");
  std::vector<Site> out;
  const Cuboid tip = a.brick.tip();
  for (const Site& s : a.sites())
    if (tip.contains(s) && b.contains(s)) out.push_back(s);
  return out;
}

// Part of sail a lying on the thick sail of b (a's brick points to b's).
inline std::vector<Site> handover_set(const Sail& a, const Sail& b) {
  std::vector<Site> out;
  for (const Site& s : a.sites())
    if (b.thick_contains(s)) out.push_back(s);
  return out;
}

// Part of sail a inside the section of b that a's tip coincides with.
inline std::vector<Site> handover_cut(const Sail& a, const Sail& b) {
  auto k = pointed_section(a.brick, b.brick);
  if (!k) throw std::invalid_argument("brick " + to_string(a.brick) + " does not point to " + to_string(b.brick));
  if (!sail_crosses(a.brick, b.brick)) throw std::invalid_argument("sail does not cross the next brick");
  std::vector<Site> out;
  const Cuboid sec = b.brick.section(*k);
  for (const Site& s : a.sites())
    if (sec.contains(s)) out.push_back(s);
  return out;
}

// From base with X1 = V ∩ thick(a) infected to base with X1 and Xp infected,
// where Xp lies in the tip of b on b's thick sail.
inline MoveSequence pass_to_next_brick(const Configuration& base, const Sail& a, const Sail& b,
                                       const std::vector<Site>& V, const std::vector<Site>& Xp) {
  std::vector<Site> X1;
  for (const Site& s : V)
    if (a.thick_contains(s)) X1.push_back(s);
  const Configuration c1 = with_infected(base, X1);
  const auto X2 = handover_set(a, b);
  Runner r(c1);
  MoveSequence g = detail::separator_moves(c1, a, X1, upper_part(a.brick, to_set(V)), X2);
  r.replay(g);
  r.replay(detail::separator_moves(with_infected(c1, X2), b, X2, upper_part(b.brick, to_set(handover_cut(a, b))), Xp));
  r.replay_reverse(g, to_set(Xp));
  return std::move(r.moves());
}

// Sails are computed once from the initial configuration and reused.
class SailBook {
 public:
  explicit SailBook(const Configuration& eta) : eta_(eta) {}
  const std::optional<Sail>& lookup(const Brick& b) {
    auto key = std::make_pair(b.anchor(), b.flag());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, find_sail(eta_, b)).first;
    return it->second;
  }
  bool good(const Brick& b) { return lookup(b).has_value(); }
  const Sail& get(const Brick& b) {
    const auto& s = lookup(b);
    if (!s) throw std::runtime_error("brick " + to_string(b) + " is not good");
    return *s;
  }
  const Configuration& eta() const { return eta_; }

 private:
  const Configuration& eta_;
  std::map<std::pair<Site, Site>, std::optional<Sail>> cache_;
};

struct Translation {
  MoveSequence moves;
  std::vector<Site> seed;       // infected at the start on top of eta
  std::vector<Site> next_seed;  // infected at the end on top of eta
  std::vector<Site> next_cut;   // separating set of the next reference brick
  std::vector<Site> cleaned;    // handover set in the reference brick used for cleaning
};

namespace detail {

// Carries `seed` (cut by V0 in the first brick) along bricks[0..n) and
// infects `target` in the last one; the handovers in between are undone.
inline MoveSequence chain_moves(const Configuration& base, const std::vector<const Sail*>& sails,
                                const std::vector<Site>& V0, const std::vector<Site>& seed,
                                const std::vector<Site>& target) {
  Runner r(base);
  std::vector<MoveSequence> legs;
  Configuration cur = base;
  std::vector<Site> V = V0, X1 = seed;
  for (std::size_t m = 0; m < sails.size(); ++m) {
    const bool last = m + 1 == sails.size();
    std::vector<Site> X2 = last ? target : handover_set(*sails[m], *sails[m + 1]);
    MoveSequence g = separator_moves(cur, *sails[m], X1, upper_part(sails[m]->brick, to_set(V)), X2);
    r.replay(g);
    legs.push_back(r.moves());
    r.moves().moves.clear();
    cur = with_infected(cur, X2);
    if (!last) {
      V = handover_cut(*sails[m], *sails[m + 1]);
      X1 = X2;
    }
  }
  MoveSequence out;
  for (auto& g : legs) out.append(g);
  Runner back(r.current());
  SiteSet keep = to_set(target);
  for (std::size_t m = legs.size() - 1; m-- > 0;) back.replay_reverse(legs[m], keep);
  out.append(back.moves());
  return out;
}

}  // namespace detail

// From eta with `seed` = V0 ∩ thick(reference sail) infected, where V0 cuts
// section 3 of the reference brick, to eta with the seed of the next
// reference brick infected and nothing else changed.
inline Translation translate_infection(const Configuration& eta, const Family& fam, Route route,
                                       const std::vector<Site>& V0, SailBook& book) {
  Translation out;
  const auto& R = fam.route(route);
  std::array<const Sail*, 4> S;
  for (int j = 0; j < 4; ++j) S[j] = &book.get(R[j]);
  std::array<const Sail*, 8> C;
  for (int j = 0; j < 8; ++j) C[j] = &book.get(fam.clean[j]);

  for (const Site& s : V0)
    if (S[0]->thick_contains(s)) out.seed.push_back(s);
  const Configuration c0 = with_infected(eta, out.seed);
  Runner r(c0);

  // walk the seed through the route, then undo the first two handovers
  std::vector<MoveSequence> legs;
  Configuration cur = c0;
  std::vector<Site> V = V0, X1 = out.seed;
  for (int j = 0; j < 3; ++j) {
    auto X2 = handover_set(*S[j], *S[j + 1]);
    MoveSequence g = detail::separator_moves(cur, *S[j], X1, upper_part(R[j], to_set(V)), X2);
    r.replay(g);
    legs.push_back(r.moves());
    r.moves().moves.clear();
    cur = with_infected(cur, X2);
    V = handover_cut(*S[j], *S[j + 1]);
    X1 = X2;
  }
  out.next_seed = X1;
  out.next_cut = V;
  MoveSequence all;
  for (auto& g : legs) all.append(g);
  {
    Runner back(r.current());
    const SiteSet keep = to_set(out.next_seed);
    back.replay_reverse(legs[1], keep);
    back.replay_reverse(legs[0], keep);
    all.append(back.moves());
    r = Runner(back.current());
  }

  // cleaning loop: from the new seed round the cleaning chain into section 0
  // of the reference brick, clear the old seed there, then undo the loop
  std::vector<const Sail*> loop{S[3]};
  for (auto* c : C) loop.push_back(c);
  loop.push_back(S[0]);
  const std::vector<const Sail*> ring(loop.begin(), loop.end() - 1);
  auto cut7 = handover_cut(*C[7], *S[0]);
  for (const Site& s : cut7)
    if (S[0]->thick_contains(s)) out.cleaned.push_back(s);

  const Configuration with_old = with_infected(eta, out.seed);
  const Configuration both = with_infected(with_old, out.next_seed);
  MoveSequence delta = detail::chain_moves(both, ring, out.next_cut, out.next_seed, out.cleaned);
  r.replay(delta);
  const Configuration fresh = with_infected(eta, out.next_seed);
  const Configuration fresh_cleaned = with_infected(fresh, out.cleaned);
  MoveSequence phi =
      detail::separator_moves(fresh_cleaned, *S[0], out.cleaned, upper_part(R[0], to_set(cut7)), out.seed);
  r.replay_reverse(phi);
  MoveSequence delta2 = detail::chain_moves(fresh, ring, out.next_cut, out.next_seed, out.cleaned);
  r.replay_reverse(delta2);
  all.append(r.moves());
  out.moves = std::move(all);
  return out;
}

struct BrickPath {
  int L = 1;
  std::vector<Site> z;       // offsets of the reference brick, last one first-to-last
  std::vector<Route> route;  // route taken from z[k] to z[k+1]
  std::size_t supergood = 0;  // index whose sail has a fully infected bottom layer
  std::size_t length() const { return z.empty() ? 0 : z.size() - 1; }
};

// Region holding every brick any path of length l towards the origin can use.
inline Cuboid search_region(int L, int l) {
  const Family f = make_family(L);
  Cuboid c = f.translated(origin_offset(L)).bounds();
  for (int nb = 0; nb <= l; ++nb)
    for (int na = 0; na + nb <= l; ++na) {
      Site z = origin_offset(L) - f.step(Route::B) * nb - f.step(Route::A) * na;
      Cuboid y = f.translated(z).bounds();
      for (int k = 0; k < 3; ++k) {
        c.lo[k] = std::min(c.lo[k], y.lo[k]);
        c.hi[k] = std::max(c.hi[k], y.hi[k]);
      }
    }
  return c;
}

inline bool bottom_infected(const Configuration& eta, const Sail& s) {
  auto l = s.layer(0);
  return std::all_of(l.begin(), l.end(), [&](const Site& x) { return eta.infected(x); });
}

// Path of reference-brick offsets ending at the origin offset in which every
// step's translation family is good and one brick has an infected sail base.
inline std::optional<BrickPath> find_supergood_brickpath(SailBook& book, int L, int l) {
  const Family f0 = make_family(L);
  const Site z0 = origin_offset(L);
  std::map<std::tuple<Site, int, bool>, bool> dead;
  std::vector<Site> zs;
  std::vector<Route> rs;
  std::size_t sg = 0;
  auto fam_ok = [&](const Site& z, Route r) {
    Family f = f0.translated(z);
    for (auto& b : f.route(r))
      if (!book.good(b)) return false;
    for (auto& b : f.clean)
      if (!book.good(b)) return false;
    return true;
  };
  auto supergood_at = [&](const Site& z) {
    const auto& s = book.lookup(f0.b[0].translated(z));
    return s && bottom_infected(book.eta(), *s);
  };
  // zs holds z_0, z_{-1}, ... while descending
  std::function<bool(int, bool)> dfs = [&](int left, bool have) -> bool {
    const Site z = zs.back();
    if (supergood_at(z) && !have) {
      have = true;
      sg = zs.size() - 1;
    }
    if (left == 0) return have;
    auto key = std::make_tuple(z, left, have);
    if (dead.count(key)) return false;
    for (Route r : {Route::B, Route::A}) {
      Site p = z - f0.step(r);
      if (!book.good(f0.b[0].translated(p)) || !fam_ok(p, r)) continue;
      zs.push_back(p);
      rs.push_back(r);
      const std::size_t sg_before = sg;
      if (dfs(left - 1, have)) return true;
      sg = sg_before;
      zs.pop_back();
      rs.pop_back();
    }
    dead[key] = true;
    return false;
  };
  if (!book.good(f0.b[0].translated(z0))) return std::nullopt;
  zs.push_back(z0);
  if (!dfs(l, false)) return std::nullopt;
  BrickPath p;
  p.L = L;
  p.z.assign(zs.rbegin(), zs.rend());
  p.route.assign(rs.rbegin(), rs.rend());
  p.supergood = zs.size() - 1 - sg;
  return p;
}

// Half-width of the cube windows declared by infect_origin_z3.
inline int window_radius(int L) {
  Cuboid c = make_family(L).bounds();
  int w = 0;
  for (int k = 0; k < 3; ++k) w = std::max(w, c.hi[k] - c.lo[k]);
  return w;
}

inline Locality cube_locality(int r) {
  return [r](const Site& s) { return Window(Cuboid{s - Site{r, r, r}, s + Site{r + 1, r + 1, r + 1}}); };
}

// Carries the infected sail base of the super-good brick along the path and
// infects the origin, which is the designated sail site of the last brick.
inline MoveSequence infect_origin_z3(const Configuration& eta, const BrickPath& path, SailBook& book) {
  const int L = path.L;
  if (path.z.empty() || path.route.size() + 1 != path.z.size()) throw std::invalid_argument("malformed brick path");
  const Family f0 = make_family(L);
  const std::size_t last = path.z.size() - 1;
  if (path.z[last] != origin_offset(L)) throw std::invalid_argument("brick path does not end at the origin brick");
  for (std::size_t k = 0; k < last; ++k)
    if (path.z[k + 1] - path.z[k] != f0.step(path.route[k])) throw std::invalid_argument("brick path step mismatch");
  const Site origin{0, 0, 0};
  const std::size_t a = path.supergood;
  const Brick first = f0.b[0].translated(path.z[a]);
  const Sail& s0 = book.get(first);
  if (!bottom_infected(eta, s0)) throw std::invalid_argument("brick path is not super-good");

  Runner r(eta);
  std::vector<Site> V, X;
  if (a == last) {
    X = {origin};
  } else {
    first.layer(12 * L).for_each([&](const Site& s) { V.push_back(s); });
    for (const Site& s : V)
      if (s0.thick_contains(s)) X.push_back(s);
  }
  MoveSequence up = sweep(eta, s0, 0, X);
  r.replay(up);
  r.replay_reverse(up, to_set(X));
  for (std::size_t k = a; k < last; ++k) {
    Translation t = translate_infection(eta, f0.translated(path.z[k]), path.route[k], V, book);
    if (to_set(t.seed) != to_set(X)) throw std::logic_error("translation seed mismatch");
    r.replay(t.moves);
    X = t.next_seed;
    V = t.next_cut;
  }
  if (a < last) {
    const Sail& sl = book.get(f0.b[0].translated(path.z[last]));
    Configuration c = with_infected(eta, X);
    r.replay(detail::separator_moves(c, sl, X, upper_part(sl.brick, to_set(V)), {origin}));
  }
  MoveSequence out = std::move(r.moves());
  out.locality = cube_locality(window_radius(L));
  return out;
}

}  // namespace fa2f::z3
