#include "posicert/real_roots.hpp"

#include <algorithm>

#include "posicert/poly_io.hpp"

namespace posicert {

namespace {

Rational horner(const std::vector<Rational>& dense, const Rational& x) {
  Rational acc = 0;
  for (auto it = dense.rbegin(); it != dense.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

int sign_at(const std::vector<Rational>& dense, const Rational& x) {
  return sgn(horner(dense, x));
}

class SturmChain {
 public:
  explicit SturmChain(const UniPoly& square_free) {
    for (const auto& p : sturm_sequence(square_free)) chain_.push_back(dense_coefficients(p));
  }

  int variations(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const int s = sign_at(p, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int count(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) return 0;
    return variations(lo) - variations(hi);
  }

 private:
  std::vector<std::vector<Rational>> chain_;
};

// Refines `iv` to width < 1/A where A is the leading coefficient of the
// primitive integer form; the only rational candidate is then k/A.
void detect_rational_root(IsolatingInterval& iv, const Integer& lead) {
  if (iv.is_exact()) return;
  const Rational limit(Integer(1), lead);
  while (!iv.is_exact() && !(iv.width() < limit)) bisect(iv);
  if (iv.is_exact()) return;
  const Rational scaled_hi = iv.hi * lead;
  const Integer k = floor_of(scaled_hi);
  Rational candidate(k, lead);
  candidate.canonicalize();
  if (candidate > iv.lo && candidate <= iv.hi && eval(iv.poly, candidate) == 0) {
    iv.lo = candidate;
    iv.hi = candidate;
  }
}


// Trial division up to a fixed bound; a leftover cofactor is accepted only
// when it is a probable prime. Returns false if |n| could not be factored.
bool prime_factors(Integer n, std::vector<std::pair<Integer, unsigned>>& out) {
  n = abs(n);
  out.clear();
  for (unsigned long d = 2; d <= 1000000UL && Integer(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) == 0) continue;
    unsigned m = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++m;
    }
    out.emplace_back(Integer(d), m);
  }
  if (n > 1) {
    if (Integer(1000000) * 1000000 > n || mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
      out.emplace_back(n, 1);
    } else {
      return false;
    }
  }
  return true;
}

bool positive_divisors(const Integer& n, std::vector<Integer>& out, std::size_t cap) {
  std::vector<std::pair<Integer, unsigned>> pf;
  if (!prime_factors(n, pf)) return false;
  out.assign(1, Integer(1));
  for (const auto& [p, m] : pf) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= m; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
      if (out.size() > cap) return false;
    }
  }
  return true;
}

// Looks for a rational quadratic factor of a square-free polynomial without
// rational roots. Candidates a*x^2 + b*x + c are constrained by a | lead,
// c | const, (a + b + c) | P(1) and (a - b + c) | P(-1).
std::optional<UniPoly> find_quadratic_factor(const UniPoly& p) {
  const auto coeffs = primitive_integer_coefficients(p);
  const Integer& lead = coeffs.back();
  const Integer& cst = coeffs.front();
  Integer at_one = 0;
  Integer at_minus_one = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    at_one += coeffs[i];
    at_minus_one += (i % 2 == 0) ? coeffs[i] : Integer(-coeffs[i]);
  }
  if (cst == 0 || at_one == 0 || at_minus_one == 0) return std::nullopt;

  constexpr std::size_t kCap = 4096;
  std::vector<Integer> div_a, div_c, div_one;
  if (!positive_divisors(lead, div_a, kCap) || !positive_divisors(cst, div_c, kCap) ||
      !positive_divisors(at_one, div_one, kCap)) {
    return std::nullopt;
  }
  const UniPoly x = UniPoly::variable(0);
  for (const auto& a : div_a) {
    for (const auto& c_abs : div_c) {
      for (int cs : {1, -1}) {
        const Integer c = cs * c_abs;
        for (const auto& d_abs : div_one) {
          for (int ds : {1, -1}) {
            const Integer b = ds * d_abs - a - c;
            const Integer at_m1 = a - b + c;
            if (at_m1 == 0 || mpz_divisible_p(at_minus_one.get_mpz_t(), at_m1.get_mpz_t()) == 0) {
              continue;
            }
            UniPoly q = UniPoly(Rational(a)) * x * x + UniPoly(Rational(b)) * x + UniPoly(Rational(c));
            if (divmod(p, q).remainder.is_zero()) return make_monic(q);
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

void bisect(IsolatingInterval& iv) {
  if (iv.is_exact()) return;
  const Rational mid = (iv.lo + iv.hi) / 2;
  const int s_mid = sgn(eval(iv.poly, mid));
  if (s_mid == 0) {
    iv.lo = mid;
    iv.hi = mid;
    return;
  }
  const int s_hi = sgn(eval(iv.poly, iv.hi));
  if (s_hi == 0) {
    iv.lo = iv.hi;
    return;
  }
  if (s_mid == s_hi) {
    iv.hi = mid;
  } else {
    iv.lo = mid;
  }
}

int compare_root(IsolatingInterval& iv, const Rational& x) {
  while (true) {
    if (iv.is_exact()) return iv.lo < x ? -1 : (iv.lo > x ? 1 : 0);
    if (iv.hi <= x) return -1;
    if (iv.lo >= x) return 1;
    bisect(iv);
  }
}

IsolatingInterval refine(IsolatingInterval iv, const Rational& max_width) {
  while (!iv.is_exact() && iv.width() > max_width) bisect(iv);
  return iv;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("Sturm sequence of the zero polynomial");
  std::vector<UniPoly> seq;
  seq.push_back(make_monic(square_free_part(p)));
  if (degree(seq[0]) <= 0) return seq;
  seq.push_back(make_monic(derivative(seq[0])));
  while (true) {
    UniPoly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    // Scale by a positive constant only; signs must be preserved.
    r = -r;
    Rational lc = r.leading_coefficient();
    if (lc < 0) lc = -lc;
    seq.push_back(r * (1 / lc));
  }
  return seq;
}

int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw PreconditionError("sturm_count of the zero polynomial");
  return SturmChain(square_free_part(p)).count(lo, hi);
}

Rational root_bound(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("root bound of the zero polynomial");
  const Rational& lc = p.leading_coefficient();
  Rational m = 0;
  for (const auto& [e, c] : p.terms()) {
    if (static_cast<int>(e[0]) == degree(p)) continue;
    Rational r = abs(c / lc);
    if (r > m) m = r;
  }
  return m + 1;
}

std::vector<IsolatingInterval> isolate_roots(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("isolate_roots of the zero polynomial");
  const UniPoly sqf = square_free_part(p);
  std::vector<IsolatingInterval> out;
  if (degree(sqf) <= 0) return out;

  const SturmChain chain(sqf);
  const Rational bound = root_bound(sqf);
  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack{{-bound, bound, chain.count(-bound, bound)}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      out.push_back({cur.lo, cur.hi, sqf});
      continue;
    }
    const Rational mid = (cur.lo + cur.hi) / 2;
    const int left = chain.count(cur.lo, mid);
    stack.push_back({mid, cur.hi, cur.count - left});
    stack.push_back({cur.lo, mid, left});
  }

  const auto ints = primitive_integer_coefficients(sqf);
  const Integer lead = ints.back();
  for (auto& iv : out) {
    if (eval(sqf, iv.hi) == 0) iv.lo = iv.hi;
    detect_rational_root(iv, lead);
    iv = refine(iv, Rational(1));
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<Rational> rational_roots(const UniPoly& p) {
  std::vector<Rational> out;
  for (const auto& iv : isolate_roots(p)) {
    if (iv.is_exact()) out.push_back(iv.lo);
  }
  return out;
}

UniPoly FactorList::product() const {
  UniPoly r(unit);
  for (const auto& [f, m] : factors) r *= f.pow(m);
  for (const auto& [f, m] : unfactored) r *= f.pow(m);
  return r;
}

FactorList square_free_decompose(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("square_free_decompose of the zero polynomial");
  FactorList out;
  out.unit = p.leading_coefficient();
  const UniPoly f = make_monic(p);
  if (degree(f) == 0) return out;
  const UniPoly a0 = gcd(f, derivative(f));
  UniPoly b = divmod(f, a0).quotient;
  UniPoly c = divmod(derivative(f), a0).quotient;
  UniPoly d = c - derivative(b);
  unsigned i = 1;
  while (degree(b) > 0) {
    const UniPoly a = gcd(b, d);
    if (degree(a) > 0) out.factors.emplace_back(a, i);
    b = divmod(b, a).quotient;
    c = divmod(d, a).quotient;
    d = c - derivative(b);
    ++i;
  }
  return out;
}

FactorList factor_low_degree(const UniPoly& p) {
  const FactorList sqf = square_free_decompose(p);
  FactorList out;
  out.unit = sqf.unit;
  for (const auto& [piece, mult] : sqf.factors) {
    UniPoly rest = piece;
    for (const auto& r : rational_roots(piece)) {
      out.factors.emplace_back(x_minus(r), mult);
      rest = divmod(rest, x_minus(r)).quotient;
    }
    while (degree(rest) >= 4 && degree(rest) <= 8) {
      auto q = find_quadratic_factor(rest);
      if (!q) break;
      out.factors.emplace_back(*q, mult);
      rest = divmod(rest, *q).quotient;
    }
    if (degree(rest) == 2) {
      out.factors.emplace_back(make_monic(rest), mult);
    } else if (degree(rest) > 0) {
      out.unfactored.emplace_back(make_monic(rest), mult);
    }
  }
  return out;
}

RootLayout root_layout(const UniPoly& p, const std::optional<Rational>& lower,
                       const std::optional<Rational>& upper) {
  RootLayout out;
  std::vector<IsolatingInterval> all = p.is_zero() ? std::vector<IsolatingInterval>{} : isolate_roots(p);
  for (auto& iv : all) {
    if (lower && compare_root(iv, *lower) <= 0) continue;
    if (upper && compare_root(iv, *upper) >= 0) continue;
    out.roots.push_back(std::move(iv));
  }

  // Sample strictly between consecutive boundaries, refining roots apart when
  // their intervals touch.
  auto right_end = [](const IsolatingInterval& iv) { return iv.hi; };
  for (std::size_t i = 0; i <= out.roots.size(); ++i) {
    std::optional<Rational> left;
    if (i == 0) {
      left = lower;
    } else {
      left = right_end(out.roots[i - 1]);
    }
    std::optional<Rational> right;
    if (i == out.roots.size()) {
      right = upper;
      if (upper && i > 0) {
        auto& last = out.roots[i - 1];
        while (!(last.hi < *upper)) bisect(last);
        left = last.hi;
      }
    } else {
      auto& next = out.roots[i];
      if (left) {
        while (!(*left < next.lo)) {
          bisect(next);
          if (i > 0 && !out.roots[i - 1].is_exact()) {
            bisect(out.roots[i - 1]);
            left = out.roots[i - 1].hi;
          }
        }
      }
      right = next.lo;
    }
    if (left && right) {
      out.samples.push_back((*left + *right) / 2);
    } else if (left) {
      out.samples.push_back(*left + 1);
    } else if (right) {
      out.samples.push_back(*right - 1);
    } else {
      out.samples.emplace_back(0);
    }
  }
  return out;
}

NonnegDecision decide_nonneg_on_U(const UniPoly& p, const IntervalUnion& u) {
  NonnegDecision out;
  auto check = [&](const Rational& c) {
    if (eval(p, c) < 0) {
      out.nonneg = false;
      out.witness = c;
      return false;
    }
    return true;
  };
  for (const auto& comp : u.components()) {
    if (!check(comp.lo)) return out;
    if (comp.is_point()) continue;
    if (!check(comp.hi)) return out;
    if (p.is_zero()) continue;
    for (const auto& s : root_layout(p, comp.lo, comp.hi).samples) {
      if (!check(s)) return out;
    }
  }
  return out;
}

}  // namespace posicert
