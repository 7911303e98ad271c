#pragma once

#include <cstddef>
#include <string>

#include "posicert/certificate.hpp"
#include "posicert/interval_union.hpp"

namespace posicert {

// h = even + y * odd_quotient with both parts even in y, so that
// h(x,y)^2 / 2 + h(x,-y)^2 / 2 = even^2 + odd_quotient^2 * y^2.
struct ParitySplit {
  BiPoly even;
  BiPoly odd_quotient;
};

ParitySplit parity_split(const BiPoly& h);

// Turns a strip certificate of F(x, y) = f(x, y^2) over the natural generators
// of U into a half-strip certificate of f over {s_1, ..., s_k, y}. F is
// symmetrized first, so for a non-even F the result certifies the even part.
Certificate<2> lift_halfstrip(const Certificate<2>& c_strip, const IntervalUnion& u);

// Inverse direction used by tests and the CLI: a half-strip certificate over
// {s_1, ..., s_k, y} becomes a strip certificate of f(x, y^2) over {s_1, ..., s_k}.
Certificate<2> pullback_to_strip(const Certificate<2>& c_half);

// Certificate of g(x, y - q(x)) over {s_1, ..., s_k, y - q} from a half-strip
// certificate of g over {s_1, ..., s_k, y}. The s_i must be the natural
// generators of some U; q >= 0 on U is checked (NegativeOnSetError otherwise).
Certificate<2> shift_halfstrip(const Certificate<2>& c, const UniPoly& q);

// Certificate of g(x, xy) / x^(2n) over {x - x^2, xy - 1} from a certificate of
// g(u, v) over {u - u^2, v - 1}. Terms come out merged and ordered as
// s0 + s1 (xy - 1) + (s2 + s3 (xy - 1)) (x - x^2).
class CutDivisibilityError : public Error {
 public:
  CutDivisibilityError(std::size_t term, std::size_t square, std::string residual)
      : Error("square " + std::to_string(square + 1) + " of term " + std::to_string(term + 1) +
              " is not divisible by the required power of x after substitution; residual " +
              residual),
        term_(term),
        square_(square),
        residual_(std::move(residual)) {}

  std::size_t term() const { return term_; }
  std::size_t square() const { return square_; }
  const std::string& residual() const { return residual_; }

 private:
  std::size_t term_;
  std::size_t square_;
  std::string residual_;
};

Certificate<2> xy_cut_transform(const Certificate<2>& c, unsigned n);

// Smallest n with x^(2n) f in Q[x, xy].
unsigned xy_cut_auto_n(const BiPoly& f);

// g(u, v) with g(x, xy) = x^(2n) f(x, y). Requires n >= xy_cut_auto_n(f).
BiPoly xy_cut_preimage(const BiPoly& f, unsigned n);

// Certificate of f(x, y, z) over {1 - x^2, z - x^2, x^2 - z} from a certificate
// of f(x, y, x^2) over {1 - x^2}.
Certificate<3> surface_z_transform(const TriPoly& f, const Certificate<2>& c_strip);

}  // namespace posicert
