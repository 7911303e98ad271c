#include "posicert/transforms.hpp"

#include <map>

#include "posicert/poly_io.hpp"
#include "posicert/real_roots.hpp"
#include "posicert/saturate_1d.hpp"

namespace posicert {

namespace {

const BiPoly kX = BiPoly::variable(0);
const BiPoly kY = BiPoly::variable(1);

template <std::size_t N>
using TermsByExponent = std::map<ExponentVector, SOS<N>>;

template <std::size_t N>
void add_square(TermsByExponent<N>& terms, const ExponentVector& e, const Poly<N>& square,
                const Rational& weight) {
  if (square.is_zero() || weight == 0) return;
  terms[e].squares.push_back({weight, square});
}

// Terms ordered by exponent vector (lexicographically), empty SOS dropped.
template <std::size_t N>
std::vector<CertTerm<N>> collect(const TermsByExponent<N>& terms) {
  std::vector<CertTerm<N>> out;
  for (const auto& [e, sos] : terms) {
    if (!sos.empty()) out.push_back({e, sos});
  }
  return out;
}

template <std::size_t N>
bool module_shaped(const std::vector<CertTerm<N>>& terms) {
  for (const auto& t : terms) {
    int ones = 0;
    for (auto v : t.exponent) ones += v;
    if (ones > 1) return false;
  }
  return true;
}

template <std::size_t N>
void assert_verifies(const Certificate<N>& c, const Poly<N>& target, const char* what) {
  const auto v = verify(c, target);
  if (!v) throw InternalError(std::string(what) + " produced a certificate that does not verify: " + describe(v));
}

BiPoly reflect_y(const BiPoly& p) { return substitute(p, 1, -kY); }

bool is_y_free(const BiPoly& p) { return p.degree(1) <= 0; }

// Splits a half-strip generator list {s_1, ..., s_k, y} and recovers U.
IntervalUnion halfstrip_base(const GeneratorSet<2>& gs) {
  if (gs.size() < 2 || gs.gens.back() != kY) {
    throw PreconditionError("half-strip certificate must list y as its last generator");
  }
  GeneratorSet<2> base;
  base.gens.assign(gs.gens.begin(), gs.gens.end() - 1);
  for (const auto& g : base.gens) {
    if (!is_y_free(g)) throw PreconditionError("generator " + to_string(g) + " depends on y");
  }
  const auto u = natural_union_of(base);
  if (!u) throw PreconditionError("generators before y are not the natural generators of an interval union");
  return *u;
}

}  // namespace

ParitySplit parity_split(const BiPoly& h) {
  ParitySplit out;
  for (const auto& [e, c] : h.terms()) {
    if (e[1] % 2 == 0) {
      out.even += BiPoly::monomial(c, e);
    } else {
      out.odd_quotient += BiPoly::monomial(c, {e[0], e[1] - 1});
    }
  }
  const BiPoly lhs = (h * h + reflect_y(h) * reflect_y(h)) * Rational(1, 2);
  const BiPoly rhs = out.even * out.even + out.odd_quotient * out.odd_quotient * kY * kY;
  if (lhs != rhs || out.even + kY * out.odd_quotient != h) {
    throw InternalError("parity split identity failed for " + to_string(h));
  }
  return out;
}

Certificate<2> lift_halfstrip(const Certificate<2>& c_strip, const IntervalUnion& u) {
  c_strip.validate();
  const GeneratorSet<1> natural = natural_generators(u);
  const std::size_t k = natural.size();
  bool matches = c_strip.genset.size() == k;
  for (std::size_t i = 0; matches && i < k; ++i) matches = c_strip.genset.gens[i] == embed<2>(natural.gens[i]);
  if (!matches) {
    throw PreconditionError("strip certificate is not over the natural generators of " + to_string(u));
  }

  TermsByExponent<2> terms;
  for (const auto& t : c_strip.terms) {
    ExponentVector plain = t.exponent;
    plain.push_back(0);
    ExponentVector with_y = t.exponent;
    with_y.push_back(1);
    for (const auto& ws : t.sos.squares) {
      const ParitySplit split = parity_split(ws.square);
      add_square(terms, plain, halve_exponents(split.even, 1), ws.coeff);
      add_square(terms, with_y, halve_exponents(split.odd_quotient, 1), ws.coeff);
    }
  }

  Certificate<2> out;
  out.genset.gens = c_strip.genset.gens;
  out.genset.gens.push_back(kY);
  out.genset.label = "half-strip generators for " + to_string(u);
  out.terms = collect(terms);
  out.kind = c_strip.kind == CertKind::module && module_shaped(out.terms) ? CertKind::module
                                                                           : CertKind::preordering;

  const BiPoly strip = expand(c_strip);
  const BiPoly symmetric = (strip + reflect_y(strip)) * Rational(1, 2);
  if (!is_even_in(symmetric, 1)) throw InternalError("symmetrized expansion is not even in y");
  assert_verifies(out, halve_exponents(symmetric, 1), "half-strip lift");
  return out;
}

Certificate<2> pullback_to_strip(const Certificate<2>& c_half) {
  c_half.validate();
  halfstrip_base(c_half.genset);
  const std::size_t k = c_half.genset.size() - 1;
  const BiPoly y2 = kY * kY;
  TermsByExponent<2> terms;
  for (const auto& t : c_half.terms) {
    const ExponentVector e(t.exponent.begin(), t.exponent.begin() + static_cast<long>(k));
    for (const auto& ws : t.sos.squares) {
      BiPoly h = substitute(ws.square, 1, y2);
      if (t.exponent[k] != 0) h *= kY;
      add_square(terms, e, h, ws.coeff);
    }
  }
  Certificate<2> out;
  out.genset.gens.assign(c_half.genset.gens.begin(), c_half.genset.gens.end() - 1);
  out.genset.label = "strip generators";
  out.terms = collect(terms);
  out.kind = c_half.kind;
  assert_verifies(out, substitute(expand(c_half), 1, y2), "strip pullback");
  return out;
}

Certificate<2> shift_halfstrip(const Certificate<2>& c, const UniPoly& q) {
  c.validate();
  const IntervalUnion u = halfstrip_base(c.genset);
  const NonnegDecision d = decide_nonneg_on_U(q, u);
  if (!d.nonneg) throw NegativeOnSetError(*d.witness);

  const BiPoly shifted_y = kY - embed<2>(q);
  Certificate<2> out;
  out.kind = c.kind;
  out.genset.gens.assign(c.genset.gens.begin(), c.genset.gens.end() - 1);
  out.genset.gens.push_back(shifted_y);
  out.genset.label = "shifted half-strip generators";
  for (const auto& t : c.terms) {
    CertTerm<2> nt{t.exponent, {}};
    for (const auto& ws : t.sos.squares) nt.sos.squares.push_back({ws.coeff, substitute(ws.square, 1, shifted_y)});
    out.terms.push_back(std::move(nt));
  }
  assert_verifies(out, substitute(expand(c), 1, shifted_y), "half-strip shift");
  return out;
}

Certificate<2> xy_cut_transform(const Certificate<2>& c, unsigned n) {
  c.validate();
  const std::vector<BiPoly> expected{kX - kX * kX, kY - BiPoly(1)};
  if (c.genset.gens != expected) {
    throw PreconditionError("certificate must be over {u - u^2, v - 1}, written {x - x^2, y - 1}");
  }
  const std::array<BiPoly, 2> images{kX, kX * kY};
  const BiPoly xn = kX.pow(n);

  TermsByExponent<2> terms;
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const auto& term = c.terms[t];
    for (std::size_t s = 0; s < term.sos.squares.size(); ++s) {
      const auto& ws = term.sos.squares[s];
      const auto division = divide(compose(ws.square, images), xn);
      if (!division.remainder.is_zero()) throw CutDivisibilityError(t, s, to_string(division.remainder));
      add_square(terms, term.exponent, division.quotient, ws.coeff);
    }
  }

  Certificate<2> out;
  out.genset.gens = {kX - kX * kX, kX * kY - BiPoly(1)};
  out.genset.label = "xy-cut generators";
  out.terms = collect(terms);
  out.kind = c.kind;
  assert_verifies(out, exact_divide(compose(expand(c), images), xn * xn), "xy-cut transform");
  return out;
}

unsigned xy_cut_auto_n(const BiPoly& f) {
  long n = 0;
  for (const auto& [e, c] : f.terms()) {
    const long deficit = static_cast<long>(e[1]) - static_cast<long>(e[0]);
    if (deficit > 0) n = std::max(n, (deficit + 1) / 2);
  }
  return static_cast<unsigned>(n);
}

BiPoly xy_cut_preimage(const BiPoly& f, unsigned n) {
  BiPoly g;
  for (const auto& [e, c] : f.terms()) {
    const long ux = static_cast<long>(e[0]) + 2L * n - static_cast<long>(e[1]);
    if (ux < 0) {
      throw PreconditionError("x^" + std::to_string(2 * n) + " * f is not a polynomial in x and xy");
    }
    g += BiPoly::monomial(c, {static_cast<std::uint32_t>(ux), e[1]});
  }
  return g;
}

Certificate<3> surface_z_transform(const TriPoly& f, const Certificate<2>& c_strip) {
  c_strip.validate();
  const BiPoly one_minus_x2 = BiPoly(1) - kX * kX;
  if (c_strip.genset.gens != std::vector<BiPoly>{one_minus_x2}) {
    throw PreconditionError("strip certificate must be over {1 - x^2}");
  }
  const TriPoly x = TriPoly::variable(0);
  const TriPoly z = TriPoly::variable(2);
  const TriPoly x2 = x * x;
  const BiPoly g = compose(f, std::array<BiPoly, 3>{kX, kY, kX * kX});
  const auto v = verify(c_strip, g);
  if (!v) throw PreconditionError("strip certificate does not expand to f(x, y, x^2): " + describe(v));

  // f - f(x, y, x^2) = h (z - x^2), h = sum_i g_i (z^(i-1) + z^(i-2) x^2 + ... + x^(2(i-1))).
  TriPoly h;
  const int dz = f.degree(2);
  for (int i = 1; i <= dz; ++i) {
    const TriPoly gi = embed<3>(coeff_in_z(f, static_cast<std::uint32_t>(i)));
    if (gi.is_zero()) continue;
    TriPoly geometric;
    for (int j = 0; j < i; ++j) {
      geometric += z.pow(static_cast<unsigned>(i - 1 - j)) * x2.pow(static_cast<unsigned>(j));
    }
    h += gi * geometric;
  }
  if (f - embed<3>(g) != h * (z - x2)) throw InternalError("ideal part rewrite failed");

  Certificate<3> out = embed_certificate<3>(c_strip);
  out.genset.gens = {TriPoly(1) - x2, z - x2, x2 - z};
  out.genset.label = "surface generators";
  out.genset.natural_for.reset();
  for (auto& t : out.terms) t.exponent.resize(3, 0);
  if (!h.is_zero()) {
    // h = ((h + 1)/2)^2 - ((h - 1)/2)^2
    const Rational half(1, 2);
    const TriPoly plus = (h + TriPoly(1)) * half;
    const TriPoly minus = (h - TriPoly(1)) * half;
    if (!plus.is_zero()) out.terms.push_back({{0, 1, 0}, SOS<3>{{{Rational(1), plus}}}});
    if (!minus.is_zero()) out.terms.push_back({{0, 0, 1}, SOS<3>{{{Rational(1), minus}}}});
  }
  assert_verifies(out, f, "surface transform");
  return out;
}

}  // namespace posicert
