#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fa2f/lattice.hpp"

namespace fa2f {

struct Move {
  Site site;
  State target = State::i;
  std::optional<State> prior;  // state before the move, filled in by verification
  bool censored = false;       // a cure suppressed by censor(); never changes state

  bool operator==(const Move&) const = default;
};

// Union of pairwise disjoint cuboids.
struct Window {
  std::vector<Cuboid> parts;

  Window() = default;
  Window(Cuboid c) : parts{c} {}  // NOLINT(google-explicit-constructor)
  bool contains(const Site& s) const {
    return std::any_of(parts.begin(), parts.end(), [&](const Cuboid& c) { return c.contains(s); });
  }
  std::int64_t volume() const {
    std::int64_t v = 0;
    for (const auto& c : parts) v += c.volume();
    return v;
  }
};

using Locality = std::function<Window(const Site&)>;

struct MoveSequence {
  std::vector<Move> moves;
  Locality locality;  // optional per-move window Y(x)

  std::size_t size() const { return moves.size(); }
  bool empty() const { return moves.empty(); }
  void push(const Site& s, State a) { moves.push_back({s, a, std::nullopt, false}); }
  void append(const MoveSequence& o) { moves.insert(moves.end(), o.moves.begin(), o.moves.end()); }
  bool operator==(const MoveSequence& o) const { return moves == o.moves; }
};

inline MoveSequence operator+(const MoveSequence& a, const MoveSequence& b) {
  MoveSequence r = a;
  r.append(b);
  if (!r.locality) r.locality = b.locality;
  return r;
}

struct PathWitness {
  std::size_t N = 0;              // number of moves
  std::size_t hamming_budget = 0;  // max Hamming distance from the start
  std::int64_t locality_volume = 0;  // largest declared window
  bool windows_declared = false;
};

struct LegalityReport {
  bool legal = true;
  std::optional<std::size_t> first_violation;
  std::string reason;
  PathWitness witness;
  MoveSequence recorded;  // the input with prior states filled in
  Configuration endpoint;
};

struct VerifyOptions {
  bool check_windows = true;
  bool record = true;
};

namespace detail {

// Multiset of coordinates of the current difference set, for a cheap
// bounding-box test against single-cuboid windows.
class DiffTracker {
 public:
  void add(const Site& s) {
    for (int a = 0; a < 3; ++a) ++axis_[a][s[a]];
    ++n_;
  }
  void remove(const Site& s) {
    for (int a = 0; a < 3; ++a) {
      auto it = axis_[a].find(s[a]);
      if (--it->second == 0) axis_[a].erase(it);
    }
    --n_;
  }
  std::size_t size() const { return n_; }
  bool inside(const Cuboid& c) const {
    if (n_ == 0) return true;
    for (int a = 0; a < 3; ++a)
      if (axis_[a].begin()->first < c.lo[a] || axis_[a].rbegin()->first >= c.hi[a]) return false;
    return true;
  }

 private:
  std::map<int, int> axis_[3];
  std::size_t n_ = 0;
};

}  // namespace detail

// Replays the sequence from cfg. Every move carrying a site must find its
// constraint satisfied, no-ops included; censored moves are exempt. When the
// sequence declares a locality, the difference sets before and after move k
// must lie inside the window of move k.
inline LegalityReport verify_legal(const Configuration& cfg, const MoveSequence& g, const VerifyOptions& opt = {}) {
  LegalityReport rep;
  Configuration cur = cfg;
  const Box& box = cfg.box();
  const Environment& env = cfg.env();
  const bool win = opt.check_windows && static_cast<bool>(g.locality);
  rep.witness.windows_declared = static_cast<bool>(g.locality);
  rep.witness.N = g.moves.size();
  if (opt.record) rep.recorded.locality = g.locality;
  if (opt.record) rep.recorded.moves.reserve(g.moves.size());

  detail::DiffTracker diff;
  std::unordered_set<std::size_t> diff_idx;

  auto fail = [&](std::size_t k, std::string why) {
    rep.legal = false;
    rep.first_violation = k;
    rep.reason = std::move(why);
  };

  for (std::size_t k = 0; k < g.moves.size(); ++k) {
    const Move& m = g.moves[k];
    if (!env.susceptible(m.site)) {
      fail(k, "move at immune or outside site " + to_string(m.site, box.d));
      break;
    }
    const std::size_t idx = box.index(m.site);
    const bool before = cur.infected_at(idx);
    if (opt.record) {
      Move r = m;
      r.prior = before ? State::i : State::h;
      rep.recorded.moves.push_back(r);
    }
    if (m.censored) {
      if (m.target != State::h) {
        fail(k, "censored move must be a cure");
        break;
      }
      continue;
    }
    if (infected_neighbors(cur, m.site) < 2) {
      fail(k, "constraint fails at " + to_string(m.site, box.d));
      break;
    }
    const bool after = m.target == State::i;
    if (win) {
      Window w = g.locality(m.site);
      rep.witness.locality_volume = std::max(rep.witness.locality_volume, w.volume());
      bool ok;
      if (w.parts.size() == 1) {
        ok = diff.inside(w.parts[0]);
      } else {
        ok = std::all_of(diff_idx.begin(), diff_idx.end(), [&](std::size_t j) { return w.contains(box.site(j)); });
      }
      if (ok && before != after) ok = w.contains(m.site);
      if (!ok) {
        fail(k, "difference set leaves the window of " + to_string(m.site, box.d));
        break;
      }
    }
    if (before == after) continue;
    cur.put(idx, after);
    const bool now_diff = cfg.infected_at(idx) != after;
    if (now_diff) {
      diff.add(m.site);
      diff_idx.insert(idx);
    } else {
      diff.remove(m.site);
      diff_idx.erase(idx);
    }
    rep.witness.hamming_budget = std::max(rep.witness.hamming_budget, diff.size());
  }
  rep.endpoint = std::move(cur);
  return rep;
}

inline Configuration apply(const Configuration& cfg, const MoveSequence& g) {
  Configuration cur = cfg;
  for (const Move& m : g.moves) {
    if (!cfg.env().susceptible(m.site)) throw std::invalid_argument("move at immune site " + to_string(m.site));
    if (m.censored) continue;
    cur.put(cfg.box().index(m.site), m.target == State::i);
  }
  return cur;
}

// Needs recorded priors (see verify_legal). Order reversed, target and prior swapped.
inline MoveSequence reverse(const MoveSequence& g) {
  MoveSequence r;
  r.locality = g.locality;
  r.moves.reserve(g.moves.size());
  for (auto it = g.moves.rbegin(); it != g.moves.rend(); ++it) {
    if (!it->prior) throw std::logic_error("reverse needs a verified sequence with recorded prior states");
    if (it->censored) {
      r.moves.push_back(*it);
      continue;
    }
    r.moves.push_back({it->site, *it->prior, it->target, false});
  }
  return r;
}

template <class R>
MoveSequence censor(const MoveSequence& g, const R& X) {
  std::unordered_set<Site, SiteHash> xs(std::begin(X), std::end(X));
  MoveSequence r;
  r.locality = g.locality;
  r.moves.reserve(g.moves.size());
  for (const Move& m : g.moves) {
    if (m.target == State::h && xs.count(m.site)) {
      r.moves.push_back({m.site, State::h, std::nullopt, true});
    } else {
      r.moves.push_back(m);
    }
  }
  return r;
}

// CSV "index,x,y[,z],target". Censored moves never change state and are
// not written.
inline std::string write_moves_csv(const MoveSequence& g, int d) {
  std::ostringstream os;
  os << (d == 3 ? "index,x,y,z,target\n" : "index,x,y,target\n");
  std::size_t k = 0;
  for (const Move& m : g.moves) {
    if (m.censored) continue;
    os << k++ << "," << m.site.x << "," << m.site.y;
    if (d == 3) os << "," << m.site.z;
    os << "," << state_char(m.target) << "\n";
  }
  return os.str();
}

inline MoveSequence parse_moves_csv(const std::string& text) {
  MoveSequence g;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("index", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string part;
    while (std::getline(ls, part, ',')) f.push_back(part);
    if (f.size() != 4 && f.size() != 5) throw std::invalid_argument("bad move line " + std::to_string(lineno));
    Site s{std::stoi(f[1]), std::stoi(f[2]), f.size() == 5 ? std::stoi(f[3]) : 0};
    const std::string& t = f.back();
    if (t != "i" && t != "h") throw std::invalid_argument("bad target on line " + std::to_string(lineno));
    g.push(s, t == "i" ? State::i : State::h);
  }
  return g;
}

}  // namespace fa2f
