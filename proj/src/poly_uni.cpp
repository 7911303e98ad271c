#include "posicert/poly.hpp"

namespace posicert {

UniPoly uni_from_coefficients(const std::vector<Rational>& low_to_high) {
  UniPoly p;
  for (std::size_t i = 0; i < low_to_high.size(); ++i) {
    p += UniPoly::monomial(low_to_high[i], {static_cast<std::uint32_t>(i)});
  }
  return p;
}

std::vector<Rational> dense_coefficients(const UniPoly& p) {
  std::vector<Rational> out(std::max(degree(p), 0) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

UniPoly x_minus(const Rational& r) {
  return UniPoly::variable(0) - UniPoly(r);
}

UniPoly derivative(const UniPoly& p) {
  UniPoly d;
  for (const auto& [e, c] : p.terms()) {
    if (e[0] > 0) d += UniPoly::monomial(c * e[0], {e[0] - 1});
  }
  return d;
}

DivisionResult<1> divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  DivisionResult<1> out;
  out.remainder = num;
  const int dd = degree(den);
  const Rational& lc = den.leading_coefficient();
  while (!out.remainder.is_zero() && degree(out.remainder) >= dd) {
    const auto shift = static_cast<std::uint32_t>(degree(out.remainder) - dd);
    const auto step = UniPoly::monomial(out.remainder.leading_coefficient() / lc, {shift});
    out.quotient += step;
    out.remainder -= step * den;
  }
  return out;
}

UniPoly make_monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading_coefficient();
  return p * inv;
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).remainder;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

UniPoly square_free_part(const UniPoly& p) {
  if (degree(p) <= 0) return p.is_zero() ? p : UniPoly(1);
  const UniPoly g = gcd(p, derivative(p));
  return make_monic(divmod(p, g).quotient);
}

std::vector<Integer> primitive_integer_coefficients(const UniPoly& p) {
  const auto dense = dense_coefficients(p);
  Integer l = 1;
  for (const auto& c : dense) {
    if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<Integer> out;
  out.reserve(dense.size());
  Integer g = 0;
  for (const auto& c : dense) {
    Integer v = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (g == 0) return out;
  if (!p.is_zero() && p.leading_coefficient() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

}  // namespace posicert
