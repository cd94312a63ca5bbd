#pragma once
#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <ranges>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa2f/rng.hpp"

namespace fa2f {

enum class Boundary : std::uint8_t { healthy_frozen, infected_frozen, immune_frozen, periodic };
enum class State : std::uint8_t { h = 0, i = 1 };

inline State other(State s) { return s == State::i ? State::h : State::i; }
inline char state_char(State s) { return s == State::i ? 'i' : 'h'; }

inline std::string boundary_name(Boundary b) {
  switch (b) {
    case Boundary::healthy_frozen: return "healthy_frozen";
    case Boundary::infected_frozen: return "infected_frozen";
    case Boundary::immune_frozen: return "immune_frozen";
    case Boundary::periodic: return "periodic";
  }
  return "?";
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "healthy_frozen") return Boundary::healthy_frozen;
  if (s == "infected_frozen") return Boundary::infected_frozen;
  if (s == "immune_frozen") return Boundary::immune_frozen;
  if (s == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary mode: " + s);
}

struct Site {
  int x = 0, y = 0, z = 0;

  constexpr int operator[](int a) const { return a == 0 ? x : (a == 1 ? y : z); }
  constexpr int& operator[](int a) { return a == 0 ? x : (a == 1 ? y : z); }
  constexpr auto operator<=>(const Site&) const = default;
  constexpr Site operator+(const Site& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Site operator-(const Site& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Site operator-() const { return {-x, -y, -z}; }
  constexpr Site operator*(int k) const { return {x * k, y * k, z * k}; }
};

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept {
    auto h = static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x));
    h = h * 0x100000001b3ULL ^ static_cast<std::uint32_t>(s.y);
    h = h * 0x100000001b3ULL ^ static_cast<std::uint32_t>(s.z);
    return static_cast<std::size_t>(splitmix64(h));
  }
};

inline std::string to_string(const Site& s, int d = 3) {
  std::string r = "(" + std::to_string(s.x) + "," + std::to_string(s.y);
  if (d == 3) r += "," + std::to_string(s.z);
  return r + ")";
}

// Axis-aligned half-open cuboid [lo, hi).
struct Cuboid {
  Site lo, hi;
  bool contains(const Site& s) const {
    return s.x >= lo.x && s.x < hi.x && s.y >= lo.y && s.y < hi.y && s.z >= lo.z && s.z < hi.z;
  }
  bool empty() const { return hi.x <= lo.x || hi.y <= lo.y || hi.z <= lo.z; }
  std::int64_t volume() const {
    if (empty()) return 0;
    return std::int64_t{hi.x - lo.x} * (hi.y - lo.y) * (hi.z - lo.z);
  }
  Cuboid intersect(const Cuboid& o) const {
    return {{std::max(lo.x, o.lo.x), std::max(lo.y, o.lo.y), std::max(lo.z, o.lo.z)},
            {std::min(hi.x, o.hi.x), std::min(hi.y, o.hi.y), std::min(hi.z, o.hi.z)}};
  }
  Cuboid shifted(const Site& v) const { return {lo + v, hi + v}; }
  bool operator==(const Cuboid&) const = default;
  template <class F>
  void for_each(F&& f) const {
    for (int z = lo.z; z < hi.z; ++z)
      for (int y = lo.y; y < hi.y; ++y)
        for (int x = lo.x; x < hi.x; ++x) f(Site{x, y, z});
  }
};

struct Box {
  Site lower{};
  std::array<int, 3> dims{1, 1, 1};
  int d = 2;
  Boundary boundary = Boundary::healthy_frozen;

  static Box square(int nx, int ny, Boundary b = Boundary::healthy_frozen, Site lo = {}) {
    Box r{lo, {nx, ny, 1}, 2, b};
    r.validate();
    return r;
  }
  static Box cube(int nx, int ny, int nz, Boundary b = Boundary::healthy_frozen, Site lo = {}) {
    Box r{lo, {nx, ny, nz}, 3, b};
    r.validate();
    return r;
  }
  static Box covering(const Cuboid& c, int d, Boundary b = Boundary::healthy_frozen) {
    Box r{c.lo, {c.hi.x - c.lo.x, c.hi.y - c.lo.y, d == 3 ? c.hi.z - c.lo.z : 1}, d, b};
    r.validate();
    return r;
  }

  void validate() const {
    if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
    for (int a = 0; a < d; ++a)
      if (dims[a] <= 0) throw std::invalid_argument("box dimensions must be positive");
    if (d == 2 && dims[2] != 1) throw std::invalid_argument("2d box must have unit z extent");
  }

  std::size_t size() const { return std::size_t(dims[0]) * dims[1] * dims[2]; }
  Cuboid extent() const { return {lower, lower + Site{dims[0], dims[1], dims[2]}}; }
  bool contains(const Site& s) const { return extent().contains(s); }
  std::size_t index(const Site& s) const {
    return (std::size_t(s.z - lower.z) * dims[1] + std::size_t(s.y - lower.y)) * dims[0] +
           std::size_t(s.x - lower.x);
  }
  Site site(std::size_t idx) const {
    Site s;
    s.x = lower.x + static_cast<int>(idx % dims[0]);
    idx /= dims[0];
    s.y = lower.y + static_cast<int>(idx % dims[1]);
    s.z = lower.z + static_cast<int>(idx / dims[1]);
    return s;
  }
  bool operator==(const Box&) const = default;

  // Visits the 2d lattice neighbours of s. Inside the box f(idx) is called
  // with the neighbour's index; outside, boundary handling decides:
  // periodic wraps, infected_frozen calls frozen(), the rest are ignored.
  template <class F, class G>
  void neighbors(const Site& s, F&& f, G&& frozen) const {
    for (int a = 0; a < d; ++a) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        Site n = s;
        n[a] += sgn;
        int rel = n[a] - lower[a];
        if (rel < 0 || rel >= dims[a]) {
          if (boundary == Boundary::periodic) {
            n[a] = lower[a] + ((rel % dims[a]) + dims[a]) % dims[a];
            if (n == s) continue;
          } else {
            if (boundary == Boundary::infected_frozen) frozen();
            continue;
          }
        }
        f(index(n));
      }
    }
  }
};

struct ModelParams {
  double q = 0.5;
  double pi = 0.0;
  double epsilon = 1.0;
  int dimension = 2;

  void validate() const {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    if (!(pi >= 0.0 && pi < 1.0)) throw std::invalid_argument("pi must lie in [0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (dimension != 2 && dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
  }
};

class Environment {
 public:
  Environment() : d_(std::make_shared<Data>()) {}
  Environment(Box box, std::vector<std::uint8_t> immune, double pi = 0.0) {
    box.validate();
    if (immune.size() != box.size()) throw std::invalid_argument("label count does not match box");
    auto d = std::make_shared<Data>();
    d->box = box;
    d->pi = pi;
    d->immune = std::move(immune);
    for (std::size_t k = 0; k < d->immune.size(); ++k)
      if (!d->immune[k]) d->susceptible.push_back(static_cast<std::uint32_t>(k));
    d_ = std::move(d);
  }
  static Environment all_susceptible(const Box& box) {
    return Environment(box, std::vector<std::uint8_t>(box.size(), 0), 0.0);
  }

  const Box& box() const { return d_->box; }
  double pi() const { return d_->pi; }
  bool immune_at(std::size_t idx) const { return d_->immune[idx] != 0; }
  bool immune(const Site& s) const { return d_->box.contains(s) && d_->immune[d_->box.index(s)]; }
  bool susceptible(const Site& s) const {
    return d_->box.contains(s) && !d_->immune[d_->box.index(s)];
  }
  std::size_t susceptible_count() const { return d_->susceptible.size(); }
  const std::vector<std::uint32_t>& susceptible_indices() const { return d_->susceptible; }
  const std::vector<std::uint8_t>& labels() const { return d_->immune; }

  template <class R>
  Environment with_immune(const R& sites, bool value = true) const {
    auto lab = d_->immune;
    for (const Site& s : sites) {
      if (!box().contains(s)) throw std::out_of_range("site outside environment box");
      lab[box().index(s)] = value ? 1 : 0;
    }
    return Environment(box(), std::move(lab), pi());
  }
  Environment with_boundary(Boundary b) const {
    Box bx = box();
    bx.boundary = b;
    return Environment(bx, d_->immune, pi());
  }

  bool same_as(const Environment& o) const {
    return d_ == o.d_ || (d_->box == o.d_->box && d_->immune == o.d_->immune);
  }

 private:
  struct Data {
    Box box{};
    double pi = 0.0;
    std::vector<std::uint8_t> immune;
    std::vector<std::uint32_t> susceptible;
  };
  std::shared_ptr<const Data> d_;
};

class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(Environment env)
      : env_(std::move(env)), bits_((env_.box().size() + 63) / 64, 0) {}

  const Environment& env() const { return env_; }
  const Box& box() const { return env_.box(); }

  bool infected_at(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1U; }
  bool infected(const Site& s) const {
    return box().contains(s) && infected_at(box().index(s));
  }
  State state(const Site& s) const { return infected(s) ? State::i : State::h; }

  // Unchecked in-place write. Callers are responsible for susceptibility.
  void put(std::size_t idx, bool inf) {
    auto& w = bits_[idx >> 6];
    const std::uint64_t m = std::uint64_t{1} << (idx & 63);
    w = inf ? (w | m) : (w & ~m);
  }
  void set(const Site& s, State a) {
    if (!env_.susceptible(s)) throw std::invalid_argument("cannot set state of immune or outside site " + to_string(s));
    put(box().index(s), a == State::i);
  }

  std::size_t infected_count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  std::vector<Site> infected_sites() const {
    std::vector<Site> out;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t b = bits_[w];
      while (b) {
        int t = std::countr_zero(b);
        out.push_back(box().site(w * 64 + t));
        b &= b - 1;
      }
    }
    return out;
  }
  const std::vector<std::uint64_t>& words() const { return bits_; }

  bool operator==(const Configuration& o) const { return env_.same_as(o.env_) && bits_ == o.bits_; }

 private:
  Environment env_;
  std::vector<std::uint64_t> bits_;
};

// Number of susceptible infected neighbours, boundary mode included.
inline int infected_neighbors(const Configuration& cfg, const Site& x) {
  int n = 0;
  cfg.box().neighbors(
      x, [&](std::size_t j) { n += cfg.infected_at(j) ? 1 : 0; }, [&] { ++n; });
  return n;
}

inline bool constraint(const Configuration& cfg, const Site& x) {
  if (!cfg.env().susceptible(x)) throw std::domain_error("constraint queried at immune or outside site " + to_string(x));
  return infected_neighbors(cfg, x) >= 2;
}

inline Environment sample_environment(const ModelParams& p, const Box& box, std::uint64_t seed) {
  box.validate();
  Rng rng(seed, streams::environment);
  std::vector<std::uint8_t> lab(box.size());
  for (auto& l : lab) l = rng.bernoulli(p.pi) ? 1 : 0;
  return Environment(box, std::move(lab), p.pi);
}

inline Configuration sample_configuration(const ModelParams& p, const Environment& env, std::uint64_t seed) {
  Rng rng(seed, streams::configuration);
  Configuration c(env);
  for (auto k : env.susceptible_indices())
    if (rng.bernoulli(p.q)) c.put(k, true);
  return c;
}

template <class R>
Configuration set_state(const Configuration& cfg, const R& X, State a) {
  Configuration out = cfg;
  for (const Site& s : X) out.set(s, a);
  return out;
}

inline Configuration flip(const Configuration& cfg, const Site& x) {
  Configuration out = cfg;
  out.set(x, other(cfg.state(x)));
  return out;
}

inline std::vector<Site> hamming_diff(const Configuration& a, const Configuration& b) {
  if (!a.env().same_as(b.env())) throw std::invalid_argument("configurations live on different environments");
  std::vector<Site> out;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) {
    std::uint64_t x = wa[w] ^ wb[w];
    while (x) {
      out.push_back(a.box().site(w * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t hamming_distance(const Configuration& a, const Configuration& b) {
  std::size_t n = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) n += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
  return n;
}

}  // namespace fa2f
