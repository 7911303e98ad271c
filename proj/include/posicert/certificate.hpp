#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posicert/interval_union.hpp"
#include "posicert/poly.hpp"

namespace posicert {

enum class CertKind { module, preordering };

std::string to_string(CertKind kind);
CertKind parse_cert_kind(const std::string& text);

// Ordered generators s_1..s_m of K_S.
template <std::size_t N>
struct GeneratorSet {
  std::vector<Poly<N>> gens;
  std::string label;
  // Set when gens is exactly the natural choice of generators for this union.
  std::optional<IntervalUnion> natural_for;

  std::size_t size() const { return gens.size(); }
  const Poly<N>& operator[](std::size_t i) const { return gens[i]; }

  void validate() const {
    if (gens.empty()) throw PreconditionError("generator set is empty");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].is_zero()) throw PreconditionError("generator " + std::to_string(i + 1) + " is zero");
    }
  }
};

// coeff * square^2 with coeff > 0.
template <std::size_t N>
struct WeightedSquare {
  Rational coeff;
  Poly<N> square;

  friend bool operator==(const WeightedSquare&, const WeightedSquare&) = default;
};

// Sum of weighted squares; the empty list is the zero SOS.
template <std::size_t N>
struct SOS {
  std::vector<WeightedSquare<N>> squares;

  Poly<N> expand() const {
    Poly<N> sum;
    for (const auto& ws : squares) sum += (ws.square * ws.square) * ws.coeff;
    return sum;
  }

  bool empty() const { return squares.empty(); }
  friend bool operator==(const SOS&, const SOS&) = default;
};

using ExponentVector = std::vector<std::uint8_t>;

template <std::size_t N>
struct CertTerm {
  ExponentVector exponent;  // 0/1 per generator
  SOS<N> sos;

  friend bool operator==(const CertTerm&, const CertTerm&) = default;
};

// sum_e SOS_e * prod_i s_i^{e_i}.
template <std::size_t N>
struct Certificate {
  GeneratorSet<N> genset;
  std::vector<CertTerm<N>> terms;
  CertKind kind = CertKind::preordering;

  // Structural checks: exponent lengths, 0/1 entries, positive weights, and the
  // at-most-one-generator rule for module certificates.
  void validate() const {
    genset.validate();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& term = terms[t];
      const std::string where = "term " + std::to_string(t + 1);
      if (term.exponent.size() != genset.size()) {
        throw PreconditionError(where + ": exponent vector has length " +
                                std::to_string(term.exponent.size()) + ", expected " +
                                std::to_string(genset.size()));
      }
      int ones = 0;
      for (auto e : term.exponent) {
        if (e > 1) throw PreconditionError(where + ": exponent entries must be 0 or 1");
        ones += e;
      }
      if (kind == CertKind::module && ones > 1) {
        throw PreconditionError(where + ": module certificate uses a product of generators");
      }
      for (const auto& ws : term.sos.squares) {
        if (ws.coeff <= 0) throw PreconditionError(where + ": SOS weights must be positive");
      }
    }
  }

  // Structural equality (generators, terms, kind); labels are ignored.
  friend bool operator==(const Certificate& a, const Certificate& b) {
    return a.genset.gens == b.genset.gens && a.terms == b.terms && a.kind == b.kind;
  }
};

template <std::size_t N>
Poly<N> generator_product(const GeneratorSet<N>& gs, const ExponentVector& e) {
  Poly<N> p(1);
  for (std::size_t i = 0; i < e.size() && i < gs.size(); ++i) {
    if (e[i] != 0) p *= gs[i];
  }
  return p;
}

template <std::size_t N>
Poly<N> expand(const Certificate<N>& c) {
  Poly<N> sum;
  for (const auto& term : c.terms) {
    if (term.sos.empty()) continue;
    sum += term.sos.expand() * generator_product(c.genset, term.exponent);
  }
  return sum;
}

template <std::size_t N>
struct Verdict {
  bool accepted = true;
  // On rejection: the first differing monomial in the graded order, with the
  // coefficient the certificate produces and the one the target has.
  std::optional<Exponent<N>> monomial;
  Rational certificate_coeff;
  Rational target_coeff;

  explicit operator bool() const { return accepted; }
};

// Accepts iff expand(c) == f coefficient by coefficient.
template <std::size_t N>
Verdict<N> verify(const Certificate<N>& c, const Poly<N>& f) {
  const Poly<N> diff = expand(c) - f;
  Verdict<N> v;
  if (diff.is_zero()) return v;
  const auto& e = diff.leading_exponent();
  v.accepted = false;
  v.monomial = e;
  v.target_coeff = f.coefficient(e);
  v.certificate_coeff = v.target_coeff + diff.leading_coefficient();
  return v;
}

template <std::size_t N>
std::string describe(const Verdict<N>& v) {
  if (v.accepted) return "accept";
  return "reject at monomial " + to_string(Poly<N>::monomial(Rational(1), *v.monomial)) +
         ": certificate has " + v.certificate_coeff.get_str() + ", target has " +
         v.target_coeff.get_str();
}

// Every quadratic-module certificate is a preordering certificate.
template <std::size_t N>
Certificate<N> to_preordering(Certificate<N> c) {
  c.kind = CertKind::preordering;
  return c;
}

// Promotes a certificate into a ring with more variables.
template <std::size_t M, std::size_t N>
Certificate<M> embed_certificate(const Certificate<N>& c) {
  Certificate<M> out;
  out.kind = c.kind;
  out.genset.label = c.genset.label;
  out.genset.natural_for = c.genset.natural_for;
  for (const auto& g : c.genset.gens) out.genset.gens.push_back(embed<M>(g));
  for (const auto& t : c.terms) {
    CertTerm<M> nt{t.exponent, {}};
    for (const auto& ws : t.sos.squares) nt.sos.squares.push_back({ws.coeff, embed<M>(ws.square)});
    out.terms.push_back(std::move(nt));
  }
  return out;
}

// Deterministic fixture generator: random squares of total degree <= degree_bound
// attached to random 0/1 exponent vectors. The expansion is non-negative on K_S
// by construction.
template <std::size_t N>
Certificate<N> random_certificate(const GeneratorSet<N>& gs, unsigned degree_bound,
                                  unsigned term_count, std::uint64_t seed,
                                  CertKind kind = CertKind::preordering);

// JSON wire format (certificate_json.cpp).
template <std::size_t N>
std::string certificate_to_json(const Certificate<N>& c, int indent = 2);

// Number of variables declared by a JSON certificate.
std::size_t certificate_arity(const std::string& json_text);

template <std::size_t N>
Certificate<N> certificate_from_json(const std::string& json_text);

}  // namespace posicert
