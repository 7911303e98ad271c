#include "posicert/diagnostics.hpp"

#include <cstdlib>
#include <string>

#include "posicert/poly_io.hpp"

namespace posicert {

namespace {

// Second Sobol dimension (primitive polynomial x + 1), 32-bit.
std::uint32_t sobol_dim2(std::uint64_t i) {
  std::uint32_t m = 1;
  std::uint32_t out = 0;
  for (unsigned k = 1; k <= 32 && i != 0; ++k, i >>= 1) {
    if (i & 1U) out ^= m << (32 - k);
    m = (m << 1) ^ m;
  }
  return out;
}

Rational from_bits(std::uint32_t bits) {
  Rational r(Integer(bits), Integer(1) << 32);
  r.canonicalize();
  return r;
}

// t in [0, 1) mapped onto U by arc length; degenerate unions cycle through points.
Rational map_into(const IntervalUnion& u, const Rational& t, std::uint64_t i) {
  Rational total = 0;
  for (const auto& c : u.components()) total += c.hi - c.lo;
  if (total == 0) return u[i % u.size()].lo;
  Rational pos = t * total;
  for (const auto& c : u.components()) {
    const Rational len = c.hi - c.lo;
    if (pos <= len) return c.lo + pos;
    pos -= len;
  }
  return u.max();
}

UniPoly restrict_at_x(const BiPoly& g, const Rational& c) {
  UniPoly out;
  for (const auto& [e, coeff] : g.terms()) {
    Rational v = coeff;
    for (std::uint32_t k = 0; k < e[0]; ++k) v *= c;
    out += UniPoly::monomial(v, {e[1]});
  }
  return out;
}

std::string in_y(const UniPoly& p) {
  BiPoly b;
  for (const auto& [e, c] : p.terms()) b += BiPoly::monomial(c, {0, e[0]});
  return to_string(b);
}

// Sign of p at the root isolated by iv.
int sign_at_root(const UniPoly& p, const IsolatingInterval& iv) {
  if (iv.is_exact()) return sgn(eval(p, iv.lo));
  const UniPoly g = gcd(p, iv.poly);
  if (degree(g) >= 1 && sturm_count(g, iv.lo, iv.hi) == 1) return 0;
  // No root of p lies in (lo, hi], so p keeps the sign it has at hi.
  return sgn(eval(p, iv.hi));
}

bool satisfies_all(const std::vector<UniPoly>& ps, const Rational& y) {
  for (const auto& p : ps) {
    if (eval(p, y) < 0) return false;
  }
  return true;
}

}  // namespace

Rational van_der_corput(std::uint64_t i) {
  Integer num = 0;
  Integer den = 1;
  while (i != 0) {
    num = num * 2 + (i & 1U);
    den *= 2;
    i >>= 1;
  }
  // The least significant bit of i became the most significant of num.
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Region Region::strip(IntervalUnion u) {
  Region r;
  r.kind = Kind::strip;
  r.u = std::move(u);
  return r;
}

Region Region::halfstrip(IntervalUnion u, UniPoly q) {
  Region r;
  r.kind = Kind::halfstrip;
  r.u = std::move(u);
  r.q = std::move(q);
  return r;
}

Region Region::custom(std::vector<BiPoly> gens, Rational x_lo, Rational x_hi) {
  if (x_hi < x_lo) throw PreconditionError("sampling box has x_hi < x_lo");
  Region r;
  r.kind = Kind::custom;
  r.gens = std::move(gens);
  r.x_lo = std::move(x_lo);
  r.x_hi = std::move(x_hi);
  return r;
}

bool Region::contains(const std::array<Rational, 2>& point) const {
  switch (kind) {
    case Kind::strip:
      return u.contains(point[0]);
    case Kind::halfstrip:
      return u.contains(point[0]) && point[1] >= eval(q, point[0]);
    case Kind::custom:
      for (const auto& g : gens) {
        if (eval(g, point) < 0) return false;
      }
      return true;
  }
  return false;
}

std::optional<std::array<Rational, 2>> sample_refute_2d(const BiPoly& f, const Region& region,
                                                        unsigned budget) {
  if (budget == 0) throw PreconditionError("sampling budget must be positive");
  std::vector<std::array<Rational, 2>> probes;

  // Boundary probes first.
  std::vector<Rational> xs;
  if (region.kind == Region::Kind::custom) {
    xs = {region.x_lo, region.x_hi};
  } else {
    for (const auto& c : region.u.components()) {
      xs.push_back(c.lo);
      if (!c.is_point()) xs.push_back(c.hi);
    }
  }
  for (const auto& x : xs) {
    const Rational base = region.kind == Region::Kind::halfstrip ? eval(region.q, x) : Rational(0);
    probes.push_back({x, base});
    probes.push_back({x, base + 1});
    if (region.kind != Region::Kind::halfstrip) probes.push_back({x, Rational(-1)});
  }

  static const long kScales[] = {1, 4, 16, 1L << 10, 1L << 20};
  unsigned used = 0;
  auto test = [&](const std::array<Rational, 2>& p) {
    ++used;
    return region.contains(p) && eval(f, p) < 0;
  };
  for (const auto& p : probes) {
    if (used >= budget) return std::nullopt;
    if (test(p)) return p;
  }
  for (std::uint64_t i = 1; used < budget; ++i) {
    const Rational t1 = van_der_corput(i);
    const Rational t2 = from_bits(sobol_dim2(i));
    const Rational scale(kScales[i % 5]);
    std::array<Rational, 2> p;
    if (region.kind == Region::Kind::custom) {
      p[0] = region.x_lo + t1 * (region.x_hi - region.x_lo);
    } else {
      p[0] = map_into(region.u, t1, i);
    }
    if (region.kind == Region::Kind::halfstrip) {
      p[1] = eval(region.q, p[0]) + t2 * scale;
    } else {
      p[1] = (2 * t2 - 1) * scale;
    }
    if (test(p)) return p;
  }
  return std::nullopt;
}

// Replaces the defining polynomial of an irrational endpoint by the smallest
// factor of one constraint that still has the root in (lo, hi].
void tighten(IsolatingInterval& iv, const std::vector<UniPoly>& active) {
  if (iv.is_exact()) return;
  for (const auto& p : active) {
    const FactorList f = factor_low_degree(p);
    for (const auto* list : {&f.factors, &f.unfactored}) {
      for (const auto& [g, m] : *list) {
        if (degree(g) < degree(iv.poly) && sturm_count(g, iv.lo, iv.hi) == 1) iv.poly = g;
      }
    }
  }
}

FiberSet fiber_set(const std::vector<BiPoly>& gens, const Rational& c) {
  FiberSet out;
  out.c = c;
  std::vector<UniPoly> active;
  bool infeasible = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    UniPoly p = restrict_at_x(gens[i], c);
    out.restricted.push_back(p);
    if (p.is_zero()) {
      out.notes.push_back("constraint " + std::to_string(i + 1) + " vanishes identically at x = " +
                          c.get_str() + "; dropped");
    } else if (p.is_constant()) {
      if (p.constant_term() < 0) {
        infeasible = true;
        out.notes.push_back("constraint " + std::to_string(i + 1) + " is negative at x = " + c.get_str());
      }
    } else {
      active.push_back(std::move(p));
    }
  }
  if (infeasible) return out;
  if (active.empty()) {
    out.pieces.push_back({});
    return out;
  }

  UniPoly product(1);
  for (const auto& p : active) product *= p;
  RootLayout layout = root_layout(product, std::nullopt, std::nullopt);
  const std::size_t r = layout.roots.size();

  // Elements alternate gap 0, root 0, gap 1, ..., root r-1, gap r.
  std::vector<bool> inside(2 * r + 1);
  for (std::size_t m = 0; m <= r; ++m) inside[2 * m] = satisfies_all(active, layout.samples[m]);
  for (std::size_t m = 0; m < r; ++m) {
    bool ok = true;
    for (const auto& p : active) ok = ok && sign_at_root(p, layout.roots[m]) >= 0;
    inside[2 * m + 1] = ok;
  }

  for (std::size_t j = 0; j < inside.size();) {
    if (!inside[j]) {
      ++j;
      continue;
    }
    std::size_t end = j;
    while (end + 1 < inside.size() && inside[end + 1]) ++end;
    FiberPiece piece;
    if (j % 2 == 1) {
      piece.lo = FiberEndpoint{layout.roots[(j - 1) / 2], true};
    } else if (j > 0) {
      piece.lo = FiberEndpoint{layout.roots[j / 2 - 1], false};
    }
    if (end % 2 == 1) {
      piece.hi = FiberEndpoint{layout.roots[(end - 1) / 2], true};
    } else if (end + 1 < inside.size()) {
      piece.hi = FiberEndpoint{layout.roots[end / 2], false};
    }
    if (piece.lo) tighten(piece.lo->root, active);
    if (piece.hi) tighten(piece.hi->root, active);
    out.pieces.push_back(std::move(piece));
    j = end + 1;
  }
  return out;
}

std::string to_string(const FiberEndpoint& e) {
  if (e.root.is_exact()) return e.root.lo.get_str();
  return "{root of " + in_y(e.root.poly) + " in (" + e.root.lo.get_str() + ", " + e.root.hi.get_str() + "]}";
}

std::string to_string(const FiberSet& f) {
  if (f.pieces.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    const auto& p = f.pieces[i];
    if (i > 0) out += " u ";
    if (p.lo && p.hi && p.lo->closed && p.hi->closed && p.lo->root.is_exact() && p.hi->root.is_exact() &&
        p.lo->root.lo == p.hi->root.lo) {
      out += "{" + to_string(*p.lo) + "}";
      continue;
    }
    out += p.lo ? (p.lo->closed ? "[" : "(") + to_string(*p.lo) : "(-inf";
    out += ", ";
    out += p.hi ? to_string(*p.hi) + (p.hi->closed ? "]" : ")") : "inf)";
  }
  return out;
}

unsigned precision_bits() {
  if (const char* env = std::getenv("POSICERT_PRECISION_BITS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 100000) return static_cast<unsigned>(v);
  }
  return 64;
}

std::string to_string(EndpointStatus s) {
  switch (s) {
    case EndpointStatus::holds:
      return "condition-holds";
    case EndpointStatus::fails:
      return "condition-fails";
    case EndpointStatus::undecided:
      return "undecided-at-precision";
  }
  return "?";
}

EndpointReport endpoint_generator_check(const std::vector<BiPoly>& gens, const Rational& c,
                                        unsigned bits) {
  EndpointReport rep;
  rep.fiber = fiber_set(gens, c);
  const auto& pieces = rep.fiber.pieces;
  if (pieces.size() != 1 || !pieces[0].lo || !pieces[0].lo->closed || pieces[0].hi) {
    throw PreconditionError("fiber at x = " + c.get_str() + " is " + to_string(rep.fiber) +
                            ", not a closed ray [l, inf)");
  }
  const IsolatingInterval endpoint = pieces[0].lo->root;
  const Rational floor_width(Integer(1), Integer(1) << bits);

  bool undecided = false;
  for (std::size_t i = 0; i < rep.fiber.restricted.size(); ++i) {
    const UniPoly& p = rep.fiber.restricted[i];
    rep.candidates.push_back(in_y(p));
    if (rep.matching || degree(p) != 1 || p.leading_coefficient() <= 0) continue;
    const Rational rho = -p.constant_term() / p.leading_coefficient();
    IsolatingInterval iv = endpoint;
    while (true) {
      if (iv.is_exact()) {
        if (iv.lo == rho) rep.matching = i;
        break;
      }
      if (rho <= iv.lo || rho > iv.hi) break;
      if (eval(iv.poly, rho) == 0) {
        rep.matching = i;
        break;
      }
      if (iv.width() < floor_width) {
        undecided = true;
        break;
      }
      bisect(iv);
    }
  }

  const std::string ell = to_string(*pieces[0].lo);
  if (rep.matching) {
    rep.status = EndpointStatus::holds;
    rep.detail = "g" + std::to_string(*rep.matching + 1) + "(c, y) = " + rep.candidates[*rep.matching] +
                 " is a positive multiple of y - l with l = " + ell;
  } else if (undecided) {
    rep.status = EndpointStatus::undecided;
    rep.detail = "a linear candidate could not be separated from l = " + ell + " within 2^-" +
                 std::to_string(bits);
  } else {
    rep.status = EndpointStatus::fails;
    rep.detail = "no g_i(c, y) is a positive multiple of y - l with l = " + ell;
  }
  return rep;
}

ObstructionReport obstruction_scan(const std::vector<BiPoly>& gens, const IntervalUnion& u,
                                   unsigned samples, unsigned bits) {
  if (samples == 0) throw PreconditionError("sample count must be positive");
  std::vector<const ClosedInterval*> open_parts;
  for (const auto& comp : u.components()) {
    if (!comp.is_point()) open_parts.push_back(&comp);
  }
  ObstructionReport rep;
  if (open_parts.empty()) {
    rep.summary = "U has empty interior; no samples taken";
    return rep;
  }
  const std::size_t k = open_parts.size();
  for (unsigned i = 0; i < samples; ++i) {
    const ClosedInterval& comp = *open_parts[i % k];
    ObstructionSample s;
    s.c = comp.lo + van_der_corput(i / k + 1) * (comp.hi - comp.lo);
    const FiberSet fiber = fiber_set(gens, s.c);
    s.fiber = to_string(fiber);
    const auto& pieces = fiber.pieces;
    s.applicable = pieces.size() == 1 && pieces[0].lo && pieces[0].lo->closed && !pieces[0].hi;
    if (s.applicable) {
      s.status = endpoint_generator_check(gens, s.c, bits).status;
      ++rep.applicable;
      switch (s.status) {
        case EndpointStatus::holds:
          ++rep.holds;
          break;
        case EndpointStatus::fails:
          ++rep.fails;
          break;
        case EndpointStatus::undecided:
          ++rep.undecided;
          break;
      }
    }
    rep.samples.push_back(std::move(s));
  }
  if (rep.applicable == 0) {
    rep.summary = "no applicable samples: no fiber was a closed ray [l, inf)";
  } else {
    rep.summary = std::to_string(rep.fails) + " of " + std::to_string(rep.applicable) +
                  " applicable samples fail the endpoint condition (" + std::to_string(rep.holds) +
                  " hold, " + std::to_string(rep.undecided) + " undecided). ";
    if (rep.fails > 0) {
      rep.summary +=
          "Failures are consistent with a preordering that is not saturated; the argument needs "
          "them at infinitely many c, so this is evidence, not proof.";
    } else {
      rep.summary += "A zero failure count proves nothing about saturation.";
    }
  }
  return rep;
}

}  // namespace posicert
