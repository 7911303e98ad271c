#include "posicert/saturate_1d.hpp"

#include <algorithm>
#include <map>

#include "posicert/poly_io.hpp"
#include "posicert/real_roots.hpp"

namespace posicert {

namespace {

const UniPoly kX = UniPoly::variable(0);

// Certificate under construction: generator mask -> (monic square base -> weight).
using SquareMap = std::map<UniPoly, Rational, PolyLess<1>>;
using Partial = std::map<std::uint32_t, SquareMap>;

void add_square(Partial& p, std::uint32_t mask, UniPoly base, Rational weight) {
  if (weight == 0 || base.is_zero()) return;
  const Rational lc = base.leading_coefficient();
  weight *= lc * lc;
  base *= Rational(1) / lc;
  auto& w = p[mask][base];
  w += weight;
}

// Distributes the product; s_i^2 arising from shared generators is absorbed
// into the square bases.
Partial multiply(const Partial& a, const Partial& b, const std::vector<UniPoly>& gens) {
  Partial out;
  for (const auto& [ma, sa] : a) {
    for (const auto& [mb, sb] : b) {
      const std::uint32_t common = ma & mb;
      UniPoly extra(1);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if ((common >> i) & 1U) extra *= gens[i];
      }
      for (const auto& [ha, wa] : sa) {
        for (const auto& [hb, wb] : sb) add_square(out, ma ^ mb, ha * hb * extra, wa * wb);
      }
    }
  }
  return out;
}

Partial constant_partial(const Rational& c) {
  Partial p;
  add_square(p, 0, UniPoly(1), c);
  return p;
}

Partial from_sos(const SOS<1>& sos, std::uint32_t mask) {
  Partial p;
  for (const auto& ws : sos.squares) add_square(p, mask, ws.square, ws.coeff);
  return p;
}

Certificate<1> to_certificate(const Partial& p, const GeneratorSet<1>& gs, CertKind kind) {
  Certificate<1> c;
  c.genset = gs;
  c.kind = kind;
  for (const auto& [mask, squares] : p) {
    CertTerm<1> term;
    term.exponent.assign(gs.size(), 0);
    for (std::size_t i = 0; i < gs.size(); ++i) term.exponent[i] = (mask >> i) & 1U;
    for (const auto& [base, w] : squares) {
      if (w != 0) term.sos.squares.push_back({w, base});
    }
    if (!term.sos.empty()) c.terms.push_back(std::move(term));
  }
  return c;
}

template <std::size_t N>
void assert_verifies(const Certificate<N>& c, const Poly<N>& target, const char* what) {
  const auto v = verify(c, target);
  if (!v) throw InternalError(std::string(what) + " produced a certificate that does not verify: " + describe(v));
}

// Where a sign-changing root may be paired: left of U, right of U, or in gap i
// (the closed interval between component i and i + 1).
struct Zone {
  enum Kind { left, right, gap } kind;
  int gap_index = -1;

  friend bool operator==(const Zone&, const Zone&) = default;
};

std::vector<Zone> zones_of(const Rational& r, const IntervalUnion& u) {
  std::vector<Zone> out;
  if (r <= u.min()) out.push_back({Zone::left});
  if (r >= u.max()) out.push_back({Zone::right});
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (u[i].hi <= r && r <= u[i + 1].lo) out.push_back({Zone::gap, static_cast<int>(i)});
  }
  return out;
}

// Zone of an irrational root; nullopt when it lies inside a component.
std::optional<Zone> zone_of(IsolatingInterval iv, const IntervalUnion& u) {
  if (compare_root(iv, u.min()) < 0) return Zone{Zone::left};
  if (compare_root(iv, u.max()) > 0) return Zone{Zone::right};
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (compare_root(iv, u[i].hi) > 0 && compare_root(iv, u[i + 1].lo) < 0) {
      return Zone{Zone::gap, static_cast<int>(i)};
    }
  }
  return std::nullopt;
}

struct RealQuadratic {
  UniPoly q;  // monic, irreducible over Q, two real roots
  Zone lo_zone;
  Zone hi_zone;
};

struct LinearUnit {
  Rational root;
  std::vector<Zone> options;
};

// Residual of (x - r)(x - s) - t (x - b)(x - a) with r + s = root_sum, rs = root_product.
UniPoly gap_residual(const Rational& root_sum, const Rational& root_product, const Rational& t,
                     const Rational& b, const Rational& a) {
  const UniPoly quad = kX * kX - UniPoly(root_sum) * kX + UniPoly(root_product);
  return quad - UniPoly(t) * (x_minus(b) * x_minus(a));
}

}  // namespace

GeneratorSet<1> natural_generators(const IntervalUnion& u) {
  GeneratorSet<1> gs;
  gs.gens.push_back(x_minus(u.min()));
  for (std::size_t i = 1; i < u.size(); ++i) gs.gens.push_back(x_minus(u[i].lo) * x_minus(u[i - 1].hi));
  gs.gens.push_back(UniPoly(u.max()) - kX);
  gs.label = "natural generators for " + to_string(u);
  gs.natural_for = u;
  return gs;
}

std::optional<IntervalUnion> natural_union_of(const std::vector<UniPoly>& gens) {
  if (gens.size() < 2) return std::nullopt;
  const UniPoly& first = gens.front();
  const UniPoly& last = gens.back();
  if (degree(first) != 1 || first.leading_coefficient() != 1) return std::nullopt;
  if (degree(last) != 1 || last.leading_coefficient() != -1) return std::nullopt;
  std::vector<Rational> ends{-first.constant_term()};
  for (std::size_t i = 1; i + 1 < gens.size(); ++i) {
    if (degree(gens[i]) != 2 || gens[i].leading_coefficient() != 1) return std::nullopt;
    const auto roots = rational_roots(gens[i]);
    if (roots.size() != 2) return std::nullopt;
    ends.push_back(roots[0]);
    ends.push_back(roots[1]);
  }
  ends.push_back(last.constant_term());
  std::vector<ClosedInterval> comps;
  for (std::size_t i = 0; i < ends.size(); i += 2) comps.push_back({ends[i], ends[i + 1]});
  try {
    IntervalUnion u(std::move(comps));
    if (natural_generators(u).gens != gens) return std::nullopt;
    return u;
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

SOS<1> psd_quadratic_sos(const UniPoly& q) {
  SOS<1> out;
  const int d = degree(q);
  if (d < 0) return out;
  if (d == 0) {
    if (q.constant_term() < 0) throw PreconditionError("negative constant is not PSD");
    out.squares.push_back({q.constant_term(), UniPoly(1)});
    return out;
  }
  if (d != 2) throw PreconditionError("expected a PSD polynomial of degree 0 or 2, got " + to_string(q));
  const Rational alpha = q.coefficient({2});
  const Rational beta = q.coefficient({1});
  const Rational gamma = q.coefficient({0});
  if (alpha < 0) throw PreconditionError(to_string(q) + " is not PSD");
  const Rational shift = beta / (2 * alpha);
  const Rational rest = gamma - beta * beta / (4 * alpha);
  if (rest < 0) throw PreconditionError(to_string(q) + " is not PSD");
  out.squares.push_back({alpha, kX + UniPoly(shift)});
  if (rest > 0) out.squares.push_back({rest, UniPoly(1)});
  return out;
}

GapCertificate bcj_gap_certificate_from_sum_product(const Rational& root_sum,
                                                    const Rational& root_product,
                                                    const Rational& b, const Rational& a) {
  if (!(b < a)) throw PreconditionError("gap endpoints must satisfy b < a");
  // Discriminant of the residual as a function of t: D(t) = A t^2 + B t + C,
  // with A = (a - b)^2 > 0, D(0) = (r - s)^2, D(1) = (r + s - a - b)^2.
  const Rational& p = root_sum;
  const Rational& r0 = root_product;
  const Rational q = a + b;
  const Rational w = a * b;
  const Rational da = q * q - 4 * w;
  const Rational db = 4 * (w + r0) - 2 * p * q;
  const Rational dc = p * p - 4 * r0;
  Rational t = -db / (2 * da);
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  const Rational disc = da * t * t + db * t + dc;
  if (disc > 0) {
    throw InternalError("gap construction failed: residual discriminant " + disc.get_str() +
                        " > 0 at t = " + t.get_str());
  }
  const UniPoly gen = x_minus(b) * x_minus(a);
  GapCertificate out;
  out.t = t;
  out.cert.genset.gens = {gen};
  out.cert.genset.label = "gap generator";
  out.cert.kind = CertKind::module;
  const SOS<1> sigma0 = psd_quadratic_sos(gap_residual(p, r0, t, b, a));
  if (!sigma0.empty()) out.cert.terms.push_back({{0}, sigma0});
  if (t > 0) out.cert.terms.push_back({{1}, SOS<1>{{{t, UniPoly(1)}}}});
  const UniPoly target = kX * kX - UniPoly(p) * kX + UniPoly(r0);
  assert_verifies(out.cert, target, "gap construction");
  return out;
}

GapCertificate bcj_gap_certificate(const Rational& r, const Rational& s, const Rational& b,
                                   const Rational& a) {
  if (!(b < a)) throw PreconditionError("gap endpoints must satisfy b < a");
  if (!(b <= r && r <= s && s <= a)) throw PreconditionError("roots must satisfy b <= r <= s <= a");
  return bcj_gap_certificate_from_sum_product(r + s, r * s, b, a);
}

std::vector<ClosureIdentity> lemma1_identities(const IntervalUnion& u) {
  const Rational a = u.min();
  const Rational b = u.max();
  if (!(a < b)) throw PreconditionError("closure identities need a1 < bk");
  const Rational c = Rational(1) / (b - a);
  GeneratorSet<1> gs;
  gs.gens = {x_minus(a), UniPoly(b) - kX};
  gs.label = "outer generators";
  const UniPoly& s1 = gs.gens[0];
  const UniPoly& s2 = gs.gens[1];

  std::vector<ClosureIdentity> out;
  {
    Certificate<1> cert{gs, {}, CertKind::module};
    cert.terms.push_back({{1, 0}, SOS<1>{{{c, s2}}}});
    cert.terms.push_back({{0, 1}, SOS<1>{{{c, s1}}}});
    out.push_back({"(x - a1)(bk - x)", s1 * s2, cert});
  }
  // x - a1 = c((x - a1)^2 + s1 s2), and symmetrically for bk - x; the s1 s2
  // term goes through the first identity.
  {
    Certificate<1> literal{gs, {}, CertKind::preordering};
    literal.terms.push_back({{0, 0}, SOS<1>{{{c, s1}}}});
    literal.terms.push_back({{1, 1}, SOS<1>{{{c, UniPoly(1)}}}});
    out.push_back({"x - a1", s1, module_form_single_interval(literal)});
  }
  {
    Certificate<1> literal{gs, {}, CertKind::preordering};
    literal.terms.push_back({{0, 0}, SOS<1>{{{c, s2}}}});
    literal.terms.push_back({{1, 1}, SOS<1>{{{c, UniPoly(1)}}}});
    out.push_back({"bk - x", s2, module_form_single_interval(literal)});
  }
  for (const auto& id : out) assert_verifies(id.cert, id.product, "closure identity");
  return out;
}

Certificate<1> module_form_single_interval(const Certificate<1>& c) {
  const auto u = natural_union_of(c.genset);
  if (!u || u->size() != 1 || c.genset.size() != 2) {
    throw PreconditionError("certificate is not over the natural generators of a single interval");
  }
  c.validate();
  const UniPoly& s1 = c.genset.gens[0];
  const UniPoly& s2 = c.genset.gens[1];
  const Rational a = u->min();
  const Rational b = u->max();
  Partial p;
  for (const auto& t : c.terms) {
    const std::uint32_t mask = t.exponent[0] | (t.exponent[1] << 1);
    for (const auto& ws : t.sos.squares) {
      if (mask != 3) {
        add_square(p, mask, ws.square, ws.coeff);
      } else if (a < b) {
        // s1 s2 = (s2^2 s1 + s1^2 s2) / (b - a)
        const Rational k = ws.coeff / (b - a);
        add_square(p, 1, ws.square * s2, k);
        add_square(p, 2, ws.square * s1, k);
      } else {
        // Point interval: s2 = -s1, and s2 = ((s2 + 1)/2)^2 - ((s2 - 1)/2)^2.
        const Rational half(1, 2);
        add_square(p, 1, ws.square * (s2 + UniPoly(1)) * half, ws.coeff);
        add_square(p, 2, ws.square * (s2 - UniPoly(1)) * half, ws.coeff);
      }
    }
  }
  Certificate<1> out = to_certificate(p, c.genset, CertKind::module);
  assert_verifies(out, expand(c), "module-form rewrite");
  return out;
}

Certificate<1> certify_nonneg_1d(const UniPoly& f, const IntervalUnion& u) {
  const GeneratorSet<1> gs = natural_generators(u);
  const std::vector<UniPoly>& gens = gs.gens;
  const std::size_t k = u.size();
  const std::uint32_t left_bit = 1U;
  const std::uint32_t right_bit = 1U << k;
  const UniPoly& s_left = gens.front();
  const UniPoly& s_right = gens.back();

  if (f.is_zero()) return to_certificate({}, gs, CertKind::preordering);

  const NonnegDecision decision = decide_nonneg_on_U(f, u);
  if (!decision.nonneg) throw NegativeOnSetError(*decision.witness);

  const FactorList fl = factor_low_degree(f);

  // Square part as (factor, half power); odd part split by kind.
  std::vector<std::pair<UniPoly, unsigned>> half_powers;
  std::vector<LinearUnit> fixed_linear;
  std::vector<LinearUnit> flexible_linear;
  std::vector<std::size_t> splittable;  // indices into half_powers
  std::vector<UniPoly> psd_quadratics;
  std::vector<RealQuadratic> real_quadratics;

  for (const auto& [g, m] : fl.unfactored) {
    if (m % 2 != 0) {
      throw CapabilityError("odd-multiplicity factor " + to_string(g) +
                            " has no factorization into rational factors of degree <= 2");
    }
    half_powers.emplace_back(g, m / 2);
  }
  for (const auto& [g, m] : fl.factors) {
    if (m / 2 > 0) {
      half_powers.emplace_back(g, m / 2);
      if (degree(g) == 1 && zones_of(-g.constant_term(), u).size() >= 2) {
        splittable.push_back(half_powers.size() - 1);
      }
    }
    if (m % 2 == 0) continue;
    if (degree(g) == 1) {
      const Rational r = -g.constant_term();
      LinearUnit unit{r, zones_of(r, u)};
      if (unit.options.empty()) {
        throw InternalError("sign-changing root " + r.get_str() + " lies inside U");
      }
      (unit.options.size() == 1 ? fixed_linear : flexible_linear).push_back(std::move(unit));
      continue;
    }
    const Rational disc = g.coefficient({1}) * g.coefficient({1}) - 4 * g.coefficient({0});
    if (disc < 0) {
      psd_quadratics.push_back(g);
      continue;
    }
    auto roots = isolate_roots(g);
    const auto lo = zone_of(roots[0], u);
    const auto hi = zone_of(roots[1], u);
    if (!lo || !hi) throw InternalError("sign-changing root of " + to_string(g) + " lies inside U");
    const bool same = *lo == *hi;
    const bool straddle = lo->kind == Zone::left && hi->kind == Zone::right;
    if (!same && !straddle) {
      throw CapabilityError("irrational roots of " + to_string(g) +
                            " fall in different regions; pairing them needs algebraic coefficients");
    }
    real_quadratics.push_back({g, *lo, *hi});
  }

  // Fixed parity and sign contributions.
  std::vector<int> gap_parity(k > 0 ? k - 1 : 0, 0);
  int sign = sgn(fl.unit);
  for (const auto& unit : fixed_linear) {
    const Zone& z = unit.options.front();
    if (z.kind == Zone::gap) gap_parity[z.gap_index] ^= 1;
    if (z.kind == Zone::right) sign = -sign;
  }
  for (const auto& rq : real_quadratics) {
    if (rq.lo_zone.kind == Zone::left && rq.hi_zone.kind == Zone::right) sign = -sign;
  }

  // Roots sitting on points shared by two regions can go either way, and a
  // squared root at such a point may be split into two of them. Search the
  // (small) space of choices for one that leaves every gap with an even number
  // of roots and a positive overall sign.
  const std::size_t max_choices = 1U << 16;
  std::optional<std::vector<Zone>> chosen;
  std::vector<LinearUnit> chosen_units;
  std::vector<std::size_t> chosen_splits;
  for (std::size_t split_mask = 0; split_mask < (std::size_t{1} << splittable.size()) && !chosen;
       ++split_mask) {
    std::vector<LinearUnit> units = flexible_linear;
    std::vector<std::size_t> splits;
    for (std::size_t j = 0; j < splittable.size(); ++j) {
      if (((split_mask >> j) & 1U) == 0) continue;
      const auto& g = half_powers[splittable[j]].first;
      const Rational r = -g.constant_term();
      units.push_back({r, zones_of(r, u)});
      units.push_back({r, zones_of(r, u)});
      splits.push_back(splittable[j]);
    }
    std::size_t combos = 1;
    for (const auto& unit : units) {
      combos *= unit.options.size();
      if (combos > max_choices) throw CapabilityError("too many boundary roots to pair");
    }
    for (std::size_t idx = 0; idx < combos; ++idx) {
      std::vector<Zone> pick;
      std::size_t rest = idx;
      auto parity = gap_parity;
      int s = sign;
      for (const auto& unit : units) {
        const Zone z = unit.options[rest % unit.options.size()];
        rest /= unit.options.size();
        pick.push_back(z);
        if (z.kind == Zone::gap) parity[z.gap_index] ^= 1;
        if (z.kind == Zone::right) s = -s;
      }
      bool ok = s > 0;
      for (int p : parity) ok = ok && p == 0;
      if (ok) {
        chosen = pick;
        chosen_units = units;
        chosen_splits = splits;
        break;
      }
    }
  }
  if (!chosen) {
    throw InternalError("could not pair the sign-changing roots of " + to_string(f) + " on " + to_string(u));
  }
  for (auto idx : chosen_splits) half_powers[idx].second -= 1;

  // Build the product.
  Partial cert = constant_partial(abs(fl.unit));
  std::vector<std::vector<Rational>> gap_roots(gap_parity.size());
  auto place = [&](const Rational& r, const Zone& z) {
    Partial unit;
    switch (z.kind) {
      case Zone::left:  // x - r = s_left + (a1 - r)
        add_square(unit, left_bit, UniPoly(1), Rational(1));
        add_square(unit, 0, UniPoly(1), u.min() - r);
        cert = multiply(cert, unit, gens);
        break;
      case Zone::right:  // r - x = s_right + (r - bk)
        add_square(unit, right_bit, UniPoly(1), Rational(1));
        add_square(unit, 0, UniPoly(1), r - u.max());
        cert = multiply(cert, unit, gens);
        break;
      case Zone::gap:
        gap_roots[z.gap_index].push_back(r);
        break;
    }
  };
  for (const auto& unit : fixed_linear) place(unit.root, unit.options.front());
  for (std::size_t i = 0; i < chosen_units.size(); ++i) place(chosen_units[i].root, (*chosen)[i]);

  for (std::size_t g = 0; g < gap_roots.size(); ++g) {
    auto& roots = gap_roots[g];
    std::sort(roots.begin(), roots.end());
    const std::uint32_t bit = 1U << (g + 1);
    for (std::size_t i = 0; i + 1 < roots.size(); i += 2) {
      const auto gc = bcj_gap_certificate(roots[i], roots[i + 1], u[g].hi, u[g + 1].lo);
      Partial unit;
      for (const auto& t : gc.cert.terms) {
        for (const auto& ws : t.sos.squares) add_square(unit, t.exponent[0] ? bit : 0, ws.square, ws.coeff);
      }
      cert = multiply(cert, unit, gens);
    }
  }

  for (const auto& rq : real_quadratics) {
    const UniPoly& q = rq.q;
    Partial unit;
    if (rq.lo_zone.kind == Zone::left && rq.hi_zone.kind == Zone::left) {
      // Taylor expansion at a1: q = s^2 + q'(a1) s + q(a1), s = x - a1.
      add_square(unit, 0, s_left, Rational(1));
      add_square(unit, left_bit, UniPoly(1), eval(derivative(q), u.min()));
      add_square(unit, 0, UniPoly(1), eval(q, u.min()));
    } else if (rq.lo_zone.kind == Zone::right) {
      // q = s^2 - q'(bk) s + q(bk), s = bk - x.
      add_square(unit, 0, s_right, Rational(1));
      add_square(unit, right_bit, UniPoly(1), -eval(derivative(q), u.max()));
      add_square(unit, 0, UniPoly(1), eval(q, u.max()));
    } else if (rq.lo_zone.kind == Zone::left) {
      // -q = s_left s_right + mu s_left + nu s_right + kappa.
      const Rational a = u.min();
      const Rational b = u.max();
      const Rational delta = -q.coefficient({1}) - a - b;
      const Rational mu = delta > 0 ? delta : Rational(0);
      const Rational nu = delta < 0 ? Rational(-delta) : Rational(0);
      const Rational kappa = a * b + mu * a - nu * b - q.coefficient({0});
      add_square(unit, left_bit | right_bit, UniPoly(1), Rational(1));
      add_square(unit, left_bit, UniPoly(1), mu);
      add_square(unit, right_bit, UniPoly(1), nu);
      add_square(unit, 0, UniPoly(1), kappa);
    } else {
      const int g = rq.lo_zone.gap_index;
      const auto gc = bcj_gap_certificate_from_sum_product(-q.coefficient({1}), q.coefficient({0}),
                                                           u[g].hi, u[g + 1].lo);
      const std::uint32_t bit = 1U << (g + 1);
      for (const auto& t : gc.cert.terms) {
        for (const auto& ws : t.sos.squares) add_square(unit, t.exponent[0] ? bit : 0, ws.square, ws.coeff);
      }
    }
    cert = multiply(cert, unit, gens);
  }

  for (const auto& q : psd_quadratics) cert = multiply(cert, from_sos(psd_quadratic_sos(q), 0), gens);

  UniPoly root_of_square(1);
  for (const auto& [g, h] : half_powers) root_of_square *= g.pow(h);
  Partial square;
  add_square(square, 0, root_of_square, Rational(1));
  cert = multiply(cert, square, gens);

  Certificate<1> out = to_certificate(cert, gs, CertKind::preordering);
  assert_verifies(out, f, "univariate certification");
  return out;
}

}  // namespace posicert
