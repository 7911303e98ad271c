#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "posicert/interval_union.hpp"
#include "posicert/poly.hpp"
#include "posicert/real_roots.hpp"

namespace posicert {

// Where sample_refute_2d looks for a negative value.
struct Region {
  enum class Kind { strip, halfstrip, custom };

  Kind kind = Kind::strip;
  IntervalUnion u{{{Rational(0), Rational(1)}}};
  UniPoly q;                  // halfstrip: y >= q(x)
  std::vector<BiPoly> gens;   // custom: all g_i >= 0
  Rational x_lo = -1, x_hi = 1;  // custom: x range to sample

  static Region strip(IntervalUnion u);
  static Region halfstrip(IntervalUnion u, UniPoly q);
  static Region custom(std::vector<BiPoly> gens, Rational x_lo, Rational x_hi);

  // Exact membership test.
  bool contains(const std::array<Rational, 2>& point) const;
};

// Deterministic quasi-random search for a point of the region with f < 0.
// Never returns a false witness: membership and sign are checked exactly.
std::optional<std::array<Rational, 2>> sample_refute_2d(const BiPoly& f, const Region& region,
                                                        unsigned budget);

// Endpoint of a fiber piece: a real algebraic number (exact when rational).
struct FiberEndpoint {
  IsolatingInterval root;
  bool closed = true;
};

// A connected piece of the fiber; a missing endpoint means -inf / +inf.
struct FiberPiece {
  std::optional<FiberEndpoint> lo;
  std::optional<FiberEndpoint> hi;
};

struct FiberSet {
  Rational c;
  std::vector<UniPoly> restricted;  // g_i(c, y), written in the variable of UniPoly
  std::vector<FiberPiece> pieces;
  std::vector<std::string> notes;

  bool empty() const { return pieces.empty(); }
  bool is_line() const { return pieces.size() == 1 && !pieces[0].lo && !pieces[0].hi; }
};

// {y : g_i(c, y) >= 0 for all i} as a union of closed, open or half-open
// intervals and rays. Constraints with g_i(c, y) identically zero are dropped
// and recorded in `notes`.
FiberSet fiber_set(const std::vector<BiPoly>& gens, const Rational& c);

// "[1/2, inf)", "(-inf, inf)", "empty", ... Irrational endpoints are written as
// {root of p in (lo, hi]} with p in y.
std::string to_string(const FiberSet& f);
std::string to_string(const FiberEndpoint& e);

// Refinement floor in bits: POSICERT_PRECISION_BITS if set to a positive
// integer, 64 otherwise.
unsigned precision_bits();

enum class EndpointStatus { holds, fails, undecided };

std::string to_string(EndpointStatus s);

struct EndpointReport {
  EndpointStatus status = EndpointStatus::fails;
  FiberSet fiber;
  std::vector<std::string> candidates;     // g_i(c, y), as text in y
  std::optional<std::size_t> matching;     // index of a g_i equal to r (y - l), r > 0
  std::string detail;
};

// Tests the necessary condition of the non-saturation argument at x = c: the
// fiber is a ray [l, inf) and some g_i(c, y) equals r (y - l) with r > 0.
// Throws PreconditionError if the fiber is not a closed ray with finite l.
EndpointReport endpoint_generator_check(const std::vector<BiPoly>& gens, const Rational& c,
                                        unsigned bits = precision_bits());

struct ObstructionSample {
  Rational c;
  bool applicable = false;
  EndpointStatus status = EndpointStatus::undecided;
  std::string fiber;
};

struct ObstructionReport {
  std::vector<ObstructionSample> samples;
  std::size_t applicable = 0;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t undecided = 0;
  std::string summary;

  double failure_fraction() const {
    return applicable == 0 ? 0.0 : static_cast<double>(fails) / static_cast<double>(applicable);
  }
};

// Runs endpoint_generator_check at `samples` points of the interior of U.
ObstructionReport obstruction_scan(const std::vector<BiPoly>& gens, const IntervalUnion& u,
                                   unsigned samples, unsigned bits = precision_bits());

// Van der Corput sequence in base 2: 0, 1/2, 1/4, 3/4, 1/8, ...
Rational van_der_corput(std::uint64_t i);

}  // namespace posicert
