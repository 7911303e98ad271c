#pragma once

// Reference checks that do not go through the library's expansion or
// multiplication code: certificates and polynomials are compared by exact
// point evaluation on a tensor grid large enough to determine a polynomial of
// the given per-variable degree.

#include <algorithm>
#include <array>
#include <vector>

#include "posicert/certificate.hpp"
#include "posicert/interval_union.hpp"

namespace oracle {

using posicert::Certificate;
using posicert::Poly;
using posicert::Rational;

template <std::size_t N>
Rational eval_certificate(const Certificate<N>& c, const std::array<Rational, N>& pt) {
  std::vector<Rational> gen_values;
  for (const auto& g : c.genset.gens) gen_values.push_back(eval(g, pt));
  Rational total = 0;
  for (const auto& t : c.terms) {
    Rational sos = 0;
    for (const auto& ws : t.sos.squares) {
      const Rational h = eval(ws.square, pt);
      sos += ws.coeff * h * h;
    }
    for (std::size_t i = 0; i < t.exponent.size(); ++i) {
      if (t.exponent[i]) sos *= gen_values[i];
    }
    total += sos;
  }
  return total;
}

// Per-variable degree bound of the expansion of c.
template <std::size_t N>
std::array<int, N> degree_bound(const Certificate<N>& c) {
  std::array<int, N> d{};
  for (const auto& t : c.terms) {
    for (std::size_t v = 0; v < N; ++v) {
      int deg = 0;
      for (const auto& ws : t.sos.squares) deg = std::max(deg, 2 * ws.square.degree(v));
      for (std::size_t i = 0; i < t.exponent.size(); ++i) {
        if (t.exponent[i]) deg += std::max(c.genset.gens[i].degree(v), 0);
      }
      d[v] = std::max(d[v], deg);
    }
  }
  return d;
}

// Calls visit(point) for every point of {0, 1, ..., d_v}^N shifted to be
// centred near zero.
template <std::size_t N, typename Visit>
bool for_each_grid_point(const std::array<int, N>& d, Visit&& visit) {
  std::array<int, N> idx{};
  while (true) {
    std::array<Rational, N> pt;
    for (std::size_t v = 0; v < N; ++v) pt[v] = Rational(idx[v] - d[v] / 2, 1) + Rational(1, 3);
    if (!visit(pt)) return false;
    std::size_t v = 0;
    while (v < N && ++idx[v] > d[v]) idx[v++] = 0;
    if (v == N) return true;
  }
}

// True iff the expansion of c equals f, decided by interpolation-grid evaluation.
template <std::size_t N>
bool certifies(const Certificate<N>& c, const Poly<N>& f) {
  auto d = degree_bound(c);
  for (std::size_t v = 0; v < N; ++v) d[v] = std::max(d[v], std::max(f.degree(v), 0));
  return for_each_grid_point<N>(d, [&](const std::array<Rational, N>& pt) {
    return eval_certificate(c, pt) == eval(f, pt);
  });
}

// True iff both certificates expand to the same polynomial.
template <std::size_t N>
bool same_expansion(const Certificate<N>& a, const Certificate<N>& b) {
  auto d = degree_bound(a);
  const auto db = degree_bound(b);
  for (std::size_t v = 0; v < N; ++v) d[v] = std::max(d[v], db[v]);
  return for_each_grid_point<N>(d, [&](const std::array<Rational, N>& pt) {
    return eval_certificate(a, pt) == eval_certificate(b, pt);
  });
}

// Univariate evaluation by Horner on the dense coefficient list.
inline Rational horner(const posicert::UniPoly& p, const Rational& x) {
  int deg = p.degree(0);
  Rational acc = 0;
  for (int e = deg; e >= 0; --e) {
    acc *= x;
    acc += p.coefficient({static_cast<std::uint32_t>(e)});
  }
  return acc;
}

// Points k/den of U for every den in `dens`, plus the endpoints.
inline std::vector<Rational> mesh(const posicert::IntervalUnion& u, const std::vector<long>& dens) {
  std::vector<Rational> pts;
  for (const auto& c : u.components()) {
    pts.push_back(c.lo);
    pts.push_back(c.hi);
    for (long den : dens) {
      const posicert::Integer first = posicert::ceil_of(c.lo * den);
      const posicert::Integer last = posicert::floor_of(c.hi * den);
      for (posicert::Integer k = first; k <= last; ++k) {
        Rational r(k, den);
        r.canonicalize();
        pts.push_back(r);
      }
    }
  }
  return pts;
}

// A mesh point of U where p < 0, if any.
inline std::optional<Rational> mesh_refute(const posicert::UniPoly& p, const posicert::IntervalUnion& u,
                                           const std::vector<long>& dens) {
  for (const auto& x : mesh(u, dens)) {
    if (horner(p, x) < 0) return x;
  }
  return std::nullopt;
}

// Sign changes of p along a sorted mesh, ignoring exact zeros except as roots.
inline int brute_root_count(const posicert::UniPoly& p, const Rational& lo, const Rational& hi, long steps) {
  // Counts mesh points that are roots plus sign changes between nonzero neighbours.
  int count = 0;
  int last = 0;
  for (long i = 0; i <= steps; ++i) {
    const Rational x = lo + (hi - lo) * posicert::ratio(i, steps);
    const int s = sgn(horner(p, x));
    if (s == 0) {
      if (i > 0) ++count;
      last = 0;
      continue;
    }
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// y -> y^2 done by hand: squares are substituted and the factor y^2 coming from
// the generator y moves into the square.
inline posicert::Certificate<2> substitute_y_squared(const posicert::Certificate<2>& c) {
  using namespace posicert;
  const BiPoly x = BiPoly::variable(0);
  const BiPoly y = BiPoly::variable(1);
  Certificate<2> out;
  out.kind = c.kind;
  const std::size_t k = c.genset.size() - 1;
  out.genset.gens.assign(c.genset.gens.begin(), c.genset.gens.begin() + static_cast<long>(k));
  for (const auto& t : c.terms) {
    CertTerm<2> nt;
    nt.exponent.assign(t.exponent.begin(), t.exponent.begin() + static_cast<long>(k));
    for (const auto& ws : t.sos.squares) {
      BiPoly h = compose(ws.square, std::array<BiPoly, 2>{x, y * y});
      if (t.exponent[k]) h *= y;
      nt.sos.squares.push_back({ws.coeff, h});
    }
    out.terms.push_back(nt);
  }
  return out;
}

}  // namespace oracle
