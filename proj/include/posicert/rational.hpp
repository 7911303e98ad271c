#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace posicert {

// Exact rational scalar. gmpxx keeps values canonical after arithmetic; values
// built from strings go through parse_rational, which canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q". Throws ParseError on anything else or q == 0.
Rational parse_rational(std::string_view text);

// num/den in lowest terms. mpq_class(num, den) does not reduce by itself.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int sign(const Rational& r) { return sgn(r); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace posicert
