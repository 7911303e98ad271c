#include <gtest/gtest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "posicert/diagnostics.hpp"
#include "posicert/poly_io.hpp"

using namespace posicert;

namespace {

BiPoly B(const char* s) { return parse_poly<2>(s); }

std::vector<BiPoly> gens(std::initializer_list<const char*> texts) {
  std::vector<BiPoly> out;
  for (const char* t : texts) out.push_back(B(t));
  return out;
}

const std::vector<BiPoly> kCut = gens({"x - x^2", "y^2 - x", "y"});

// Membership recomputed from scratch: x in U and the y-side condition.
bool in_region(const Region& r, const std::array<Rational, 2>& p) {
  switch (r.kind) {
    case Region::Kind::strip:
      return r.u.contains(p[0]);
    case Region::Kind::halfstrip:
      return r.u.contains(p[0]) && p[1] >= eval(r.q, p[0]);
    case Region::Kind::custom:
      for (const auto& g : r.gens) {
        if (eval(g, p) < 0) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

TEST(SampleRefute, Examples) {
  const auto strip = Region::strip(IntervalUnion::parse("[0,1]"));
  EXPECT_TRUE(sample_refute_2d(B("-1"), strip, 10));
  EXPECT_FALSE(sample_refute_2d(B("y^2"), strip, 1000));
  const auto w = sample_refute_2d(B("y"), strip, 1000);
  ASSERT_TRUE(w);
  EXPECT_LT((*w)[1], 0);
  EXPECT_THROW(sample_refute_2d(B("y"), strip, 0), PreconditionError);
}

TEST(SampleRefute, FindsLargeYBehaviour) {
  // Negative only for y beyond 1000.
  const auto w = sample_refute_2d(B("1000 - y"), Region::halfstrip(IntervalUnion::parse("[0,1]"), UniPoly()), 200);
  ASSERT_TRUE(w);
  EXPECT_GT((*w)[1], 1000);
}

TEST(SampleRefute, WitnessesAreExactAndInRegion) {
  Rng rng(2718);
  int found = 0;
  for (int i = 0; i < 300; ++i) {
    const auto u = fixtures::random_union(rng);
    Region region;
    switch (i % 3) {
      case 0:
        region = Region::strip(u);
        break;
      case 1:
        region = Region::halfstrip(u, x_minus(rng.rational(3, 2)).pow(2));
        break;
      default:
        region = Region::custom(gens({"x - x^2", "y^2 - x", "y"}), Rational(-1), Rational(2));
        break;
    }
    const BiPoly f = random_poly<2>(rng, 3);
    const auto w = sample_refute_2d(f, region, 64);
    if (!w) continue;
    ++found;
    ASSERT_TRUE(in_region(region, *w));
    ASSERT_LT(eval(f, *w), 0);
  }
  EXPECT_GT(found, 50);
}

TEST(SampleRefute, NeverRefutesCertifiedPolynomials) {
  Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    const auto u = fixtures::random_union(rng);
    const auto c = fixtures::random_halfstrip_certificate(rng, u, 2, 3);
    ASSERT_FALSE(sample_refute_2d(expand(c), Region::halfstrip(u, UniPoly()), 128));
  }
}

TEST(SampleRefute, Deterministic) {
  const auto region = Region::strip(IntervalUnion::parse("[0,1]u[2,3]"));
  const BiPoly f = B("y^2 - x*y + 1/10");
  EXPECT_EQ(sample_refute_2d(f, region, 500), sample_refute_2d(f, region, 500));
}

TEST(FiberSet, Examples) {
  EXPECT_EQ(to_string(fiber_set(kCut, Rational(1, 4))), "[1/2, inf)");
  EXPECT_EQ(to_string(fiber_set(gens({"x - x^2", "y"}), Rational(1, 2))), "[0, inf)");
  const auto line = fiber_set(gens({"x - x^2"}), Rational(1, 2));
  EXPECT_EQ(to_string(line), "(-inf, inf)");
  EXPECT_TRUE(line.is_line());
}

TEST(FiberSet, ShapesAndDegenerations) {
  EXPECT_TRUE(fiber_set(gens({"x - x^2"}), Rational(2)).empty());
  EXPECT_EQ(to_string(fiber_set(gens({"x - x^2"}), Rational(2))), "empty");
  EXPECT_EQ(to_string(fiber_set(gens({"y", "-y"}), Rational(0))), "{0}");
  EXPECT_EQ(to_string(fiber_set(gens({"1 - y^2", "y^2 - 1/4"}), Rational(0))), "[-1, -1/2] u [1/2, 1]");
  EXPECT_EQ(to_string(fiber_set(gens({"-y^2"}), Rational(0))), "{0}");

  const auto dropped = fiber_set(gens({"x*y", "y + 1"}), Rational(0));
  EXPECT_EQ(to_string(dropped), "[-1, inf)");
  EXPECT_EQ(dropped.notes.size(), 1u);

  const auto irr = fiber_set(kCut, Rational(1, 2));
  ASSERT_EQ(irr.pieces.size(), 1u);
  ASSERT_TRUE(irr.pieces[0].lo);
  const auto& root = irr.pieces[0].lo->root;
  EXPECT_FALSE(root.is_exact());
  EXPECT_LT(root.lo * root.lo, Rational(1, 2));
  EXPECT_GE(root.hi * root.hi, Rational(1, 2));
  EXPECT_EQ(to_string(irr).rfind("[{root of y^2 - 1/2 in (", 0), 0u);
}

TEST(FiberSet, RationalEndpointsAreExact) {
  for (int n = 1; n < 20; ++n) {
    const Rational c = ratio(n * n, 400);
    const auto f = fiber_set(kCut, c);
    ASSERT_EQ(f.pieces.size(), 1u);
    ASSERT_TRUE(f.pieces[0].lo->root.is_exact());
    EXPECT_EQ(f.pieces[0].lo->root.lo, ratio(n, 20));
  }
}

TEST(EndpointCheck, Examples) {
  const auto a = endpoint_generator_check(kCut, Rational(1, 4));
  EXPECT_EQ(a.status, EndpointStatus::fails);
  EXPECT_EQ(a.candidates, (std::vector<std::string>{"3/16", "y^2 - 1/4", "y"}));
  EXPECT_FALSE(a.matching);

  const auto b = endpoint_generator_check(gens({"x - x^2", "y - x"}), Rational(1, 4));
  EXPECT_EQ(b.status, EndpointStatus::holds);
  EXPECT_EQ(b.matching, 1u);
  EXPECT_EQ(b.candidates[1], "y - 1/4");

  const auto c = endpoint_generator_check(gens({"x - x^2", "y^3 - x", "y"}), Rational(1, 8));
  EXPECT_EQ(c.status, EndpointStatus::fails);
  EXPECT_EQ(to_string(c.fiber), "[1/2, inf)");
}

TEST(EndpointCheck, RequiresClosedRay) {
  EXPECT_THROW(endpoint_generator_check(gens({"x - x^2"}), Rational(1, 2)), PreconditionError);
  EXPECT_THROW(endpoint_generator_check(gens({"1 - y"}), Rational(1, 2)), PreconditionError);
}

TEST(EndpointCheck, FailsOnTheCutHalfStripEverywhere) {
  for (long n = 1; n < 40; ++n) {
    const Rational c = ratio(n, 40);
    ASSERT_EQ(endpoint_generator_check(kCut, c).status, EndpointStatus::fails) << c;
  }
}

TEST(EndpointCheck, DecisionDoesNotDependOnPrecision) {
  // sqrt(1/2) = 0.70710... and the candidate root 707/1000 are separated while
  // isolating the roots of the constraints, before any precision floor applies.
  const auto g = gens({"x - x^2", "y^2 - x", "y - 707/1000"});
  EXPECT_EQ(endpoint_generator_check(g, Rational(1, 2), 1).status, EndpointStatus::fails);
  EXPECT_EQ(endpoint_generator_check(g, Rational(1, 2), 64).status, EndpointStatus::fails);
  const auto h = gens({"x - x^2", "y^2 - x", "y - 1/2"});
  EXPECT_EQ(endpoint_generator_check(h, Rational(1, 4), 1).status, EndpointStatus::holds);
}

TEST(EndpointCheck, PrecisionFromEnvironment) {
  ::unsetenv("POSICERT_PRECISION_BITS");
  EXPECT_EQ(precision_bits(), 64u);
  ::setenv("POSICERT_PRECISION_BITS", "4", 1);
  EXPECT_EQ(precision_bits(), 4u);
  ::setenv("POSICERT_PRECISION_BITS", "junk", 1);
  EXPECT_EQ(precision_bits(), 64u);
  ::setenv("POSICERT_PRECISION_BITS", "0", 1);
  EXPECT_EQ(precision_bits(), 64u);
  ::unsetenv("POSICERT_PRECISION_BITS");
}

TEST(ObstructionScan, CutHalfStripFailsEverywhere) {
  const auto rep = obstruction_scan(kCut, IntervalUnion::parse("[0,1]"), 16);
  EXPECT_EQ(rep.samples.size(), 16u);
  EXPECT_EQ(rep.applicable, 16u);
  EXPECT_EQ(rep.fails, 16u);
  EXPECT_EQ(rep.failure_fraction(), 1.0);
  for (const auto& s : rep.samples) {
    EXPECT_GT(s.c, 0);
    EXPECT_LT(s.c, 1);
  }
}

TEST(ObstructionScan, PlainHalfStripHolds) {
  const auto rep = obstruction_scan(gens({"x - x^2", "y"}), IntervalUnion::parse("[0,1]"), 16);
  EXPECT_EQ(rep.applicable, 16u);
  EXPECT_EQ(rep.holds, 16u);
  EXPECT_NE(rep.summary.find("proves nothing"), std::string::npos);
}

TEST(ObstructionScan, NoYConstraints) {
  const auto rep = obstruction_scan(gens({"x - x^2"}), IntervalUnion::parse("[0,1]"), 16);
  EXPECT_EQ(rep.applicable, 0u);
  EXPECT_NE(rep.summary.find("no applicable samples"), std::string::npos);
  EXPECT_THROW(obstruction_scan(kCut, IntervalUnion::parse("[0,1]"), 0), PreconditionError);
}

TEST(ObstructionScan, Deterministic) {
  const auto u = IntervalUnion::parse("[0,1]u[2,3]");
  const auto a = obstruction_scan(kCut, u, 12);
  const auto b = obstruction_scan(kCut, u, 12);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].c, b.samples[i].c);
    EXPECT_EQ(a.samples[i].fiber, b.samples[i].fiber);
    EXPECT_EQ(a.samples[i].status, b.samples[i].status);
  }
  EXPECT_EQ(a.summary, b.summary);
}

TEST(VanDerCorput, FirstTerms) {
  EXPECT_EQ(van_der_corput(0), 0);
  EXPECT_EQ(van_der_corput(1), Rational(1, 2));
  EXPECT_EQ(van_der_corput(2), Rational(1, 4));
  EXPECT_EQ(van_der_corput(3), Rational(3, 4));
  EXPECT_EQ(van_der_corput(4), Rational(1, 8));
}
