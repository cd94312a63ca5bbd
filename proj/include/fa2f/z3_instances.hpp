#pragma once
#include <optional>
#include <vector>

#include "fa2f/z3_moves.hpp"

namespace fa2f::z3 {

struct Z3Instance {
  Configuration cfg;
  BrickPath path;
};

// Offsets of a brick path ending at the origin brick with the given routes.
inline std::vector<Site> offsets_for(int L, const std::vector<Route>& routes) {
  const Family f = make_family(L);
  std::vector<Site> z(routes.size() + 1);
  z.back() = origin_offset(L);
  for (std::size_t k = routes.size(); k-- > 0;) z[k] = z[k + 1] - f.step(routes[k]);
  return z;
}

// Random configuration (density q, pollution pi) on the search region with
// the sail base of the first brick of the route sequence infected. Returns
// none when some brick of the path is not good.
inline std::optional<Z3Instance> planted_instance(int L, const std::vector<Route>& routes, double q, double pi,
                                                  std::uint64_t seed) {
  ModelParams p;
  p.q = q;
  p.pi = pi;
  p.dimension = 3;
  const int l = static_cast<int>(routes.size());
  const Box box = Box::covering(search_region(L, l), 3);
  Configuration eta = sample_configuration(p, sample_environment(p, box, seed), seed);
  const auto z = offsets_for(L, routes);
  const Brick first = make_family(L).b[0].translated(z.front());
  // infecting more can change which sail is least, so repeat until stable
  for (int round = 0; round < 8; ++round) {
    auto s = find_sail(eta, first);
    if (!s) return std::nullopt;
    if (bottom_infected(eta, *s)) break;
    eta = with_infected(eta, s->layer(0));
  }
  SailBook book(eta);
  const Family f0 = make_family(L);
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const Family f = f0.translated(z[k]);
    for (const auto& b : f.route(routes[k]))
      if (!book.good(b)) return std::nullopt;
    for (const auto& b : f.clean)
      if (!book.good(b)) return std::nullopt;
  }
  if (!book.good(f0.b[0].translated(z.back()))) return std::nullopt;
  if (!bottom_infected(eta, book.get(first))) return std::nullopt;
  return Z3Instance{eta, BrickPath{L, z, routes, 0}};
}

}  // namespace fa2f::z3
