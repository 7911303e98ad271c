#pragma once

#include <cstdint>
#include <random>

#include "posicert/poly.hpp"

namespace posicert {

// Seeded generator for fixtures and sampling. Draws are taken directly from the
// 64-bit engine output so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool coin() { return (next() & 1U) != 0; }

  // num/den with |num| <= max_num and 1 <= den <= max_den.
  Rational rational(long max_num, long max_den) {
    Rational r(uniform(-max_num, max_num), uniform(1, max_den));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(long max_num, long max_den) {
    Rational r = 0;
    while (r == 0) r = rational(max_num, max_den);
    return r;
  }

 private:
  std::mt19937_64 engine_;
};

// Random polynomial of total degree <= degree_bound; never zero.
template <std::size_t N>
Poly<N> random_poly(Rng& rng, unsigned degree_bound, long max_num = 5, long max_den = 3) {
  Poly<N> p;
  while (p.is_zero()) {
    Exponent<N> e{};
    // Enumerate monomials of total degree <= degree_bound; keep each with probability ~1/2.
    auto visit = [&](auto&& self, std::size_t var, unsigned left) -> void {
      if (var == N) {
        if (rng.coin()) p += Poly<N>::monomial(rng.rational(max_num, max_den), e);
        return;
      }
      for (unsigned k = 0; k <= left; ++k) {
        e[var] = k;
        self(self, var + 1, left - k);
      }
      e[var] = 0;
    };
    visit(visit, 0, degree_bound);
  }
  return p;
}

}  // namespace posicert
