#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posicert/errors.hpp"
#include "posicert/rational.hpp"

namespace posicert {

template <std::size_t N>
using Exponent = std::array<std::uint32_t, N>;

template <std::size_t N>
constexpr std::uint64_t total_degree_of(const Exponent<N>& e) {
  std::uint64_t d = 0;
  for (auto v : e) d += v;
  return d;
}

// Graded order, ties broken lexicographically with x > y > z. The map keeps the
// greatest monomial first, so the first stored term is the leading term.
template <std::size_t N>
struct MonomialOrder {
  bool operator()(const Exponent<N>& a, const Exponent<N>& b) const {
    const auto da = total_degree_of<N>(a);
    const auto db = total_degree_of<N>(b);
    if (da != db) return da > db;
    return a > b;
  }
};

// Sparse polynomial with exact rational coefficients in N variables (x, y, z).
// No stored coefficient is ever zero, so structural equality is polynomial
// equality.
template <std::size_t N>
class Poly {
  static_assert(N >= 1 && N <= 3, "only 1, 2 or 3 variables are supported");

 public:
  using Exp = Exponent<N>;
  using TermMap = std::map<Exp, Rational, MonomialOrder<N>>;
  static constexpr std::size_t arity = N;

  Poly() = default;
  explicit Poly(const Rational& c) { add_term(Exp{}, c); }
  explicit Poly(long c) : Poly(Rational(c)) {}

  static Poly constant(const Rational& c) { return Poly(c); }

  static Poly variable(std::size_t var) {
    if (var >= N) throw ArityError("variable index out of range");
    Exp e{};
    e[var] = 1;
    return monomial(Rational(1), e);
  }

  static Poly monomial(const Rational& c, const Exp& e) {
    Poly p;
    p.add_term(e, c);
    return p;
  }

  static Poly from_terms(const std::vector<std::pair<Exp, Rational>>& terms) {
    Poly p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp{});
  }

  Rational coefficient(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exp{}); }

  // Degree in one variable; the zero polynomial has degree -1.
  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
    return d;
  }

  int total_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(total_degree_of<N>(terms_.begin()->first));
  }

  // Precondition: nonzero.
  const Exp& leading_exponent() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exp e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned k) const {
    Poly result(1);
    Poly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

 private:
  void add_term(const Exp& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

using UniPoly = Poly<1>;
using BiPoly = Poly<2>;
using TriPoly = Poly<3>;

// Total order on polynomials (by term sequence); used for map keys.
template <std::size_t N>
struct PolyLess {
  bool operator()(const Poly<N>& a, const Poly<N>& b) const {
    MonomialOrder<N> order;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
      if (ia->first != ib->first) return order(ia->first, ib->first);
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms().end() && ib != b.terms().end();
  }
};

// Printer lives in poly_io.cpp.
template <std::size_t N>
std::string to_string(const Poly<N>& p);

template <std::size_t N>
Rational eval(const Poly<N>& p, std::span<const Rational> point) {
  if (point.size() != N) {
    throw ArityError("evaluation point has " + std::to_string(point.size()) +
                     " coordinates, polynomial has " + std::to_string(N) + " variables");
  }
  std::array<std::vector<Rational>, N> powers;
  for (std::size_t v = 0; v < N; ++v) {
    const int d = std::max(p.degree(v), 0);
    powers[v].reserve(d + 1);
    powers[v].emplace_back(1);
    for (int i = 1; i <= d; ++i) powers[v].push_back(powers[v].back() * point[v]);
  }
  Rational sum = 0;
  Rational term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t v = 0; v < N; ++v) {
      if (e[v] != 0) term *= powers[v][e[v]];
    }
    sum += term;
  }
  return sum;
}

template <std::size_t N>
Rational eval(const Poly<N>& p, const std::array<Rational, N>& point) {
  return eval(p, std::span<const Rational>(point));
}

inline Rational eval(const Poly<1>& p, const Rational& x) {
  return eval(p, std::array<Rational, 1>{x});
}

// Replaces variable i by images[i]; the result lives in the ring of the images.
template <std::size_t N, std::size_t M>
Poly<M> compose(const Poly<N>& p, const std::array<Poly<M>, N>& images) {
  std::array<std::vector<Poly<M>>, N> powers;
  for (std::size_t v = 0; v < N; ++v) {
    const int d = std::max(p.degree(v), 0);
    powers[v].emplace_back(1);
    for (int i = 1; i <= d; ++i) powers[v].push_back(powers[v].back() * images[v]);
  }
  Poly<M> result;
  for (const auto& [e, c] : p.terms()) {
    Poly<M> term(c);
    for (std::size_t v = 0; v < N; ++v) {
      if (e[v] != 0) term *= powers[v][e[v]];
    }
    result += term;
  }
  return result;
}

template <std::size_t N>
std::array<Poly<N>, N> identity_images() {
  std::array<Poly<N>, N> images;
  for (std::size_t v = 0; v < N; ++v) images[v] = Poly<N>::variable(v);
  return images;
}

// p with variable `var` replaced by `replacement`.
template <std::size_t N>
Poly<N> substitute(const Poly<N>& p, std::size_t var, const Poly<N>& replacement) {
  if (var >= N) throw ArityError("unknown variable index " + std::to_string(var));
  auto images = identity_images<N>();
  images[var] = replacement;
  return compose(p, images);
}

// Explicit promotion into a ring with more variables; the new variables are unused.
template <std::size_t M, std::size_t N>
Poly<M> embed(const Poly<N>& p) {
  static_assert(M >= N, "embed only promotes to a larger ring");
  Poly<M> r;
  for (const auto& [e, c] : p.terms()) {
    Exponent<M> f{};
    for (std::size_t v = 0; v < N; ++v) f[v] = e[v];
    r += Poly<M>::monomial(c, f);
  }
  return r;
}

// Drops the last variable; throws if it occurs.
template <std::size_t M, std::size_t N>
Poly<M> restrict_to(const Poly<N>& p) {
  static_assert(M <= N);
  Poly<M> r;
  for (const auto& [e, c] : p.terms()) {
    Exponent<M> f{};
    for (std::size_t v = 0; v < N; ++v) {
      if (v < M) {
        f[v] = e[v];
      } else if (e[v] != 0) {
        throw ArityError("polynomial uses a variable outside the target ring");
      }
    }
    r += Poly<M>::monomial(c, f);
  }
  return r;
}

// Coefficient of var^i, as a polynomial in the remaining variables of the same ring.
template <std::size_t N>
Poly<N> coeff_in(const Poly<N>& p, std::size_t var, std::uint32_t i) {
  if (var >= N) throw ArityError("unknown variable index " + std::to_string(var));
  Poly<N> r;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != i) continue;
    auto f = e;
    f[var] = 0;
    r += Poly<N>::monomial(c, f);
  }
  return r;
}

// a_i(x) in p = sum_i a_i(x) y^i.
inline UniPoly coeff_in_y(const BiPoly& p, std::uint32_t i) {
  UniPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (e[1] == i) r += UniPoly::monomial(c, {e[0]});
  }
  return r;
}

// g_i(x, y) in p = sum_i g_i(x, y) z^i.
inline BiPoly coeff_in_z(const TriPoly& p, std::uint32_t i) {
  BiPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (e[2] == i) r += BiPoly::monomial(c, {e[0], e[1]});
  }
  return r;
}

template <std::size_t N>
bool is_even_in(const Poly<N>& p, std::size_t var) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [var](const auto& t) { return t.first[var] % 2 == 0; });
}

// Replaces var^(2j) by var^j. Precondition: is_even_in(p, var).
template <std::size_t N>
Poly<N> halve_exponents(const Poly<N>& p, std::size_t var) {
  Poly<N> r;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] % 2 != 0) throw PreconditionError("polynomial is not even in the variable");
    auto f = e;
    f[var] /= 2;
    r += Poly<N>::monomial(c, f);
  }
  return r;
}

template <std::size_t N>
struct DivisionResult {
  Poly<N> quotient;
  Poly<N> remainder;
};

// Division by a single polynomial in the graded monomial order. The remainder is
// unique, so it is zero exactly when den divides num.
template <std::size_t N>
DivisionResult<N> divide(const Poly<N>& num, const Poly<N>& den) {
  if (den.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  const auto& lead = den.leading_exponent();
  const Rational& lead_c = den.leading_coefficient();
  DivisionResult<N> out;
  Poly<N> rest = num;
  while (!rest.is_zero()) {
    // Find the greatest term of `rest` divisible by the leading monomial of den.
    bool found = false;
    for (const auto& [e, c] : rest.terms()) {
      bool divisible = true;
      for (std::size_t v = 0; v < N; ++v) divisible = divisible && e[v] >= lead[v];
      if (!divisible) continue;
      Exponent<N> q{};
      for (std::size_t v = 0; v < N; ++v) q[v] = e[v] - lead[v];
      const auto step = Poly<N>::monomial(c / lead_c, q);
      out.quotient += step;
      rest -= step * den;
      found = true;
      break;
    }
    if (!found) {
      out.remainder += rest;
      break;
    }
  }
  return out;
}

template <std::size_t N>
Poly<N> exact_divide(const Poly<N>& num, const Poly<N>& den) {
  auto r = divide(num, den);
  if (!r.remainder.is_zero()) throw IndivisibleError(to_string(r.remainder));
  return r.quotient;
}

// ---- univariate helpers (poly_uni.cpp) ----

// Degree of a univariate polynomial; -1 for zero.
inline int degree(const UniPoly& p) { return p.degree(0); }

UniPoly uni_from_coefficients(const std::vector<Rational>& low_to_high);
std::vector<Rational> dense_coefficients(const UniPoly& p);
UniPoly x_minus(const Rational& r);
UniPoly derivative(const UniPoly& p);
DivisionResult<1> divmod(const UniPoly& num, const UniPoly& den);
UniPoly make_monic(const UniPoly& p);
// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly square_free_part(const UniPoly& p);
// Integer coefficients with gcd 1 and positive leading coefficient, proportional to p.
std::vector<Integer> primitive_integer_coefficients(const UniPoly& p);

}  // namespace posicert
