#pragma once

// Random instance generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <set>
#include <vector>

#include "posicert/certificate.hpp"
#include "posicert/interval_union.hpp"
#include "posicert/random.hpp"
#include "posicert/saturate_1d.hpp"

namespace fixtures {

using namespace posicert;

// Random U with 1..max_k components, endpoints with denominators up to 4,
// occasionally degenerate components.
inline IntervalUnion random_union(Rng& rng, int max_k = 3) {
  const int k = static_cast<int>(rng.uniform(1, max_k));
  std::set<Rational> ends;
  while (static_cast<int>(ends.size()) < 2 * k) ends.insert(rng.rational(16, 4));
  std::vector<Rational> sorted(ends.begin(), ends.end());
  std::vector<ClosedInterval> comps;
  for (int i = 0; i < k; ++i) {
    ClosedInterval c{sorted[2 * i], sorted[2 * i + 1]};
    if (rng.uniform(0, 6) == 0) c.hi = c.lo;
    comps.push_back(c);
  }
  return IntervalUnion(std::move(comps));
}

inline Rational random_between(Rng& rng, const Rational& lo, const Rational& hi) {
  const long steps = rng.uniform(0, 8);
  return lo + (hi - lo) * ratio(steps, 8);
}

// f = c * (square part) * (linear factors) of degree <= max_degree. Roots are
// mostly placed where they keep f >= 0 on U, sometimes anywhere.
inline UniPoly random_candidate(Rng& rng, const IntervalUnion& u, int max_degree = 10) {
  const UniPoly x = UniPoly::variable(0);
  UniPoly f(ratio(rng.uniform(1, 5), rng.uniform(1, 3)));
  int deg = 0;
  const int target = static_cast<int>(rng.uniform(0, max_degree));
  while (deg < target) {
    const long choice = rng.uniform(0, 9);
    if (choice <= 1 && deg + 2 <= max_degree) {
      f *= x_minus(rng.rational(20, 4)).pow(2);
      deg += 2;
    } else if (choice == 2) {
      f *= x_minus(u.min() - ratio(rng.uniform(0, 8), rng.uniform(1, 4)));
      deg += 1;
    } else if (choice == 3) {
      f *= UniPoly(u.max() + ratio(rng.uniform(0, 8), rng.uniform(1, 4))) - x;
      deg += 1;
    } else if (choice <= 5 && u.size() >= 2 && deg + 2 <= max_degree) {
      const auto g = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(u.size()) - 2));
      const Rational r = random_between(rng, u[g].hi, u[g + 1].lo);
      const Rational s = random_between(rng, r, u[g + 1].lo);
      f *= x_minus(r) * x_minus(s);
      deg += 2;
    } else if (choice == 6 && deg + 2 <= max_degree) {
      const Rational p = rng.rational(10, 3);
      f *= x_minus(p) * x_minus(p) + UniPoly(ratio(rng.uniform(1, 9), rng.uniform(1, 4)));
      deg += 2;
    } else if (choice == 7) {
      // Root on an endpoint of U.
      const auto& c = u[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(u.size()) - 1))];
      f *= x_minus(rng.coin() ? c.lo : c.hi);
      deg += 1;
    } else {
      f *= x_minus(rng.rational(20, 4));
      deg += 1;
    }
  }
  if (rng.uniform(0, 9) == 0) f *= Rational(-1);
  return f;
}

// Random half-strip certificate over {s_1, ..., s_k, y}.
inline Certificate<2> random_halfstrip_certificate(Rng& rng, const IntervalUnion& u, unsigned degree,
                                                   unsigned terms) {
  GeneratorSet<2> gs;
  for (const auto& g : natural_generators(u).gens) gs.gens.push_back(embed<2>(g));
  gs.gens.push_back(BiPoly::variable(1));
  return random_certificate(gs, degree, terms, rng.next());
}

}  // namespace fixtures
