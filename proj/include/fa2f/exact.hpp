#pragma once
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fa2f/lattice.hpp"

namespace fa2f {

inline constexpr std::size_t kMaxExactSites = 20;

using StatePredicate = std::function<bool(std::uint32_t)>;

// All configurations of the susceptible sites of a small box, one bit per site.
class StateSpace {
 public:
  explicit StateSpace(Environment env) : env_(std::move(env)) {
    const auto& sus = env_.susceptible_indices();
    if (sus.size() > kMaxExactSites)
      throw std::length_error("state space too large: " + std::to_string(sus.size()) + " susceptible sites");
    for (auto k : sus) sites_.push_back(env_.box().site(k));
    // neighbour table: per site, indices of susceptible neighbours and
    // the number of frozen-infected neighbours
    nbr_.resize(sites_.size());
    frozen_.assign(sites_.size(), 0);
    std::vector<int> pos(env_.box().size(), -1);
    for (std::size_t b = 0; b < sus.size(); ++b) pos[sus[b]] = static_cast<int>(b);
    for (std::size_t b = 0; b < sites_.size(); ++b)
      env_.box().neighbors(
          sites_[b],
          [&](std::size_t j) {
            if (pos[j] >= 0) nbr_[b].push_back(pos[j]);
          },
          [&] { ++frozen_[b]; });
  }

  const Environment& env() const { return env_; }
  std::size_t num_sites() const { return sites_.size(); }
  std::uint32_t num_states() const { return std::uint32_t{1} << sites_.size(); }
  const std::vector<Site>& sites() const { return sites_; }
  int bit_of(const Site& s) const {
    for (std::size_t b = 0; b < sites_.size(); ++b)
      if (sites_[b] == s) return static_cast<int>(b);
    return -1;
  }

  bool constrained(std::uint32_t st, std::size_t b) const {
    int n = frozen_[b];
    for (int j : nbr_[b]) n += (st >> j) & 1U;
    return n >= 2;
  }
  double mu(std::uint32_t st, double q) const {
    int k = std::popcount(st);
    return std::pow(q, k) * std::pow(1.0 - q, static_cast<int>(sites_.size()) - k);
  }
  Configuration to_configuration(std::uint32_t st) const {
    Configuration c(env_);
    for (std::size_t b = 0; b < sites_.size(); ++b)
      if ((st >> b) & 1U) c.set(sites_[b], State::i);
    return c;
  }
  std::uint32_t from_configuration(const Configuration& c) const {
    std::uint32_t st = 0;
    for (std::size_t b = 0; b < sites_.size(); ++b)
      if (c.infected(sites_[b])) st |= std::uint32_t{1} << b;
    return st;
  }

 private:
  Environment env_;
  std::vector<Site> sites_;
  std::vector<std::vector<int>> nbr_;
  std::vector<int> frozen_;
};

inline double flip_rate(const StateSpace& sp, std::uint32_t st, std::size_t b, double q) {
  if (!sp.constrained(st, b)) return 0.0;
  return ((st >> b) & 1U) ? 1.0 - q : q;
}

// Row-major sparse generator; row = source state.
inline Eigen::SparseMatrix<double, Eigen::RowMajor> build_generator(const StateSpace& sp, double q) {
  const std::uint32_t n = sp.num_states();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(n) * (sp.num_sites() / 2 + 1));
  for (std::uint32_t s = 0; s < n; ++s) {
    double out = 0.0;
    for (std::size_t b = 0; b < sp.num_sites(); ++b) {
      double r = flip_rate(sp, s, b, q);
      if (r == 0.0) continue;
      trip.emplace_back(s, s ^ (std::uint32_t{1} << b), r);
      out += r;
    }
    if (out != 0.0) trip.emplace_back(s, s, -out);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> L(n, n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

inline double dirichlet_form(const StateSpace& sp, double q, const std::vector<double>& f) {
  if (f.size() != sp.num_states()) throw std::invalid_argument("function size does not match state space");
  double acc = 0.0;
  for (std::uint32_t s = 0; s < sp.num_states(); ++s) {
    double inner = 0.0;
    for (std::size_t b = 0; b < sp.num_sites(); ++b) {
      if (!sp.constrained(s, b)) continue;
      double g = f[s ^ (std::uint32_t{1} << b)] - f[s];
      inner += g * g;
    }
    acc += sp.mu(s, q) * inner;
  }
  return q * (1.0 - q) * acc;
}

struct PoissonSolution {
  std::vector<double> values;
  std::vector<std::uint32_t> excluded;  // states that cannot reach A, not meeting E
  double residual = 0.0;                // relative max-norm residual
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& m, std::vector<std::uint32_t> st)
      : std::runtime_error(m), states(std::move(st)) {}
  std::vector<std::uint32_t> states;
};

// Solves L T = -1_E off A with T = 0 on A. Because the chain is reversible,
// "can reach A" is the union of the connected components touching A.
// Components missing A get T = 0 when they avoid E; otherwise the system is
// singular and the offending states are reported.
inline PoissonSolution solve_poisson(const StateSpace& sp, double q, const StatePredicate& E,
                                     const StatePredicate& A) {
  const std::uint32_t n = sp.num_states();
  PoissonSolution sol;
  sol.values.assign(n, 0.0);

  std::vector<std::uint8_t> inA(n), inE(n), reach(n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    inA[s] = A(s) ? 1 : 0;
    inE[s] = E(s) ? 1 : 0;
    if (inA[s]) {
      reach[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < sp.num_sites(); ++b) {
      if (!sp.constrained(s, b)) continue;
      auto t = s ^ (std::uint32_t{1} << b);
      if (!reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::vector<std::uint32_t> bad;
  for (std::uint32_t s = 0; s < n; ++s)
    if (!reach[s]) (inE[s] ? bad : sol.excluded).push_back(s);
  if (!bad.empty())
    throw SingularSystemError("target unreachable from " + std::to_string(bad.size()) + " states that meet E",
                              std::move(bad));

  std::vector<int> col(n, -1);
  std::vector<std::uint32_t> unk;
  for (std::uint32_t s = 0; s < n; ++s)
    if (reach[s] && !inA[s]) {
      col[s] = static_cast<int>(unk.size());
      unk.push_back(s);
    }
  if (unk.empty()) return sol;

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(unk.size()));
  for (std::size_t r = 0; r < unk.size(); ++r) {
    auto s = unk[r];
    double out = 0.0;
    for (std::size_t b = 0; b < sp.num_sites(); ++b) {
      double rt = flip_rate(sp, s, b, q);
      if (rt == 0.0) continue;
      out += rt;
      int c = col[s ^ (std::uint32_t{1} << b)];
      if (c >= 0) trip.emplace_back(static_cast<int>(r), c, rt);
    }
    trip.emplace_back(static_cast<int>(r), static_cast<int>(r), -out);
    rhs[static_cast<Eigen::Index>(r)] = inE[s] ? -1.0 : 0.0;
  }
  Eigen::SparseMatrix<double> M(static_cast<Eigen::Index>(unk.size()), static_cast<Eigen::Index>(unk.size()));
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(M);
  if (lu.info() != Eigen::Success) throw std::runtime_error("sparse factorization failed");
  Eigen::VectorXd x = lu.solve(rhs);
  for (int it = 0; it < 3; ++it) {
    Eigen::VectorXd res = rhs - M * x;
    x += lu.solve(res);
  }
  Eigen::VectorXd res = rhs - M * x;
  double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  sol.residual = res.cwiseAbs().maxCoeff() / scale;
  if (!(sol.residual <= 1e-10)) throw std::runtime_error("poisson residual too large");
  for (std::size_t r = 0; r < unk.size(); ++r) sol.values[unk[r]] = x[static_cast<Eigen::Index>(r)];
  return sol;
}

struct DirichletCheck {
  double lhs = 0.0, rhs = 0.0, gap = 0.0;
};

// mu(T 1_E) against D(T) for the Poisson solution T.
inline DirichletCheck verify_dirichlet_identity(const StateSpace& sp, double q, const StatePredicate& E,
                                                const StatePredicate& A) {
  auto sol = solve_poisson(sp, q, E, A);
  DirichletCheck c;
  for (std::uint32_t s = 0; s < sp.num_states(); ++s)
    if (E(s)) c.lhs += sp.mu(s, q) * sol.values[s];
  c.rhs = dirichlet_form(sp, q, sol.values);
  c.gap = std::abs(c.lhs - c.rhs);
  return c;
}

inline std::vector<double> exact_expected_hitting(const StateSpace& sp, double q, const StatePredicate& A) {
  return solve_poisson(sp, q, [](std::uint32_t) { return true; }, A).values;
}

}  // namespace fa2f
