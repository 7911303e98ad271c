#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posicert/certificate.hpp"
#include "posicert/interval_union.hpp"

namespace posicert {

// f takes a negative value on U; `witness` is a point of U where it does.
class NegativeOnSetError : public Error {
 public:
  explicit NegativeOnSetError(Rational witness)
      : Error("polynomial is negative on the set, e.g. at x = " + witness.get_str()),
        witness_(std::move(witness)) {}

  const Rational& witness() const { return witness_; }

 private:
  Rational witness_;
};

// {x - a1, (x - a2)(x - b1), ..., (x - ak)(x - b(k-1)), bk - x}, in this order.
GeneratorSet<1> natural_generators(const IntervalUnion& u);

// Inverse of natural_generators: recovers U when `gens` is exactly a natural
// generator list (the last variable unused when N > 1).
std::optional<IntervalUnion> natural_union_of(const std::vector<UniPoly>& gens);

template <std::size_t N>
std::optional<IntervalUnion> natural_union_of(const GeneratorSet<N>& gs) {
  std::vector<UniPoly> uni;
  try {
    for (const auto& g : gs.gens) uni.push_back(restrict_to<1>(g));
  } catch (const ArityError&) {
    return std::nullopt;
  }
  return natural_union_of(uni);
}

struct ClosureIdentity {
  std::string name;
  UniPoly product;
  Certificate<1> cert;  // module form over {x - a1, bk - x}
};

// The three closure identities over {x - a1, bk - x}: for (x - a1)(bk - x), for
// x - a1 and for bk - x. Requires a1 < bk.
std::vector<ClosureIdentity> lemma1_identities(const IntervalUnion& u);

// Explicit SOS of a PSD polynomial of degree <= 2 by completing the square.
// Throws PreconditionError if q is not PSD.
SOS<1> psd_quadratic_sos(const UniPoly& q);

struct GapCertificate {
  Rational t;           // 0 <= t <= 1
  Certificate<1> cert;  // (x - r)(x - s) = t (x - b)(x - a) + sigma0, over {(x - b)(x - a)}
};

// Requires b <= r <= s <= a and b < a.
GapCertificate bcj_gap_certificate(const Rational& r, const Rational& s, const Rational& b,
                                   const Rational& a);

// Same construction from the root sum and product of a monic quadratic whose
// two real roots lie in [b, a].
GapCertificate bcj_gap_certificate_from_sum_product(const Rational& root_sum,
                                                    const Rational& root_product,
                                                    const Rational& b, const Rational& a);

// Preordering certificate of f over natural_generators(u). Throws
// NegativeOnSetError when f < 0 somewhere on u and CapabilityError when the
// odd-multiplicity part of f has an irreducible factor of degree > 2 (or an
// irrational root pair that cannot be matched inside one region).
Certificate<1> certify_nonneg_1d(const UniPoly& f, const IntervalUnion& u);

// Rewrites every s1*s2 term of a certificate over the natural generators of a
// single interval through the first closure identity. Same expansion, module kind.
Certificate<1> module_form_single_interval(const Certificate<1>& c);

}  // namespace posicert
