#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "posicert/interval_union.hpp"
#include "posicert/poly.hpp"

namespace posicert {

// Exactly one real root of `poly` (square-free) lies in (lo, hi]. A rational
// root is always reported exactly as lo == hi; otherwise hi is not a root.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  UniPoly poly;

  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

// One bisection step. Exact intervals are left unchanged.
void bisect(IsolatingInterval& iv);

// Position of the isolated root relative to x: -1 below, 0 equal, +1 above.
// Refines `iv` as needed; terminates because a non-exact interval never has a
// rational root.
int compare_root(IsolatingInterval& iv, const Rational& x);

// Bisects until the width is at most max_width (or the root is found exactly).
IsolatingInterval refine(IsolatingInterval iv, const Rational& max_width);

// Sturm sequence of the square-free part of p.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

// Number of distinct real roots of p in (lo, hi]. Throws PreconditionError for p = 0.
int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi);

// Cauchy bound: every real root r satisfies |r| < bound.
Rational root_bound(const UniPoly& p);

// One interval per distinct real root, ascending, each of width <= 1.
std::vector<IsolatingInterval> isolate_roots(const UniPoly& p);

// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const UniPoly& p);

// unit * prod(factor^mult) * prod(unfactored^mult) == input. Factors are monic.
struct FactorList {
  Rational unit;
  std::vector<std::pair<UniPoly, unsigned>> factors;
  // Monic pieces the low-degree factorizer could not split (empty when complete).
  std::vector<std::pair<UniPoly, unsigned>> unfactored;

  bool complete() const { return unfactored.empty(); }
  UniPoly product() const;
};

// Yun's algorithm: pairwise coprime square-free monic factors with multiplicities.
FactorList square_free_decompose(const UniPoly& p);

// Rational-root peeling followed by a search for rational quadratic factors of
// the remaining square-free pieces up to degree 8. Anything left is reported
// in `unfactored`.
FactorList factor_low_degree(const UniPoly& p);

struct NonnegDecision {
  bool nonneg = true;
  // On rejection: a point c in U with p(c) < 0.
  std::optional<Rational> witness;
};

NonnegDecision decide_nonneg_on_U(const UniPoly& p, const IntervalUnion& u);

// The distinct real roots of p strictly inside (lower, upper), separated from
// each other and from the bounds, plus one sample point in each open gap
// between consecutive boundaries (so samples.size() == roots.size() + 1).
// Missing bounds mean -inf / +inf.
struct RootLayout {
  std::vector<IsolatingInterval> roots;
  std::vector<Rational> samples;
};

RootLayout root_layout(const UniPoly& p, const std::optional<Rational>& lower,
                       const std::optional<Rational>& upper);

}  // namespace posicert
