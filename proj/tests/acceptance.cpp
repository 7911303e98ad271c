// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "posicert/diagnostics.hpp"
#include "posicert/poly_io.hpp"
#include "posicert/real_roots.hpp"
#include "posicert/saturate_1d.hpp"
#include "posicert/transforms.hpp"

using namespace posicert;

namespace {

const UniPoly kx = UniPoly::variable(0);
const BiPoly kX = BiPoly::variable(0);
const BiPoly kY = BiPoly::variable(1);

struct Outcome {
  bool ok = true;
  std::string detail;
};

#define REQUIRE(cond, msg)          \
  do {                              \
    if (!(cond)) return {false, msg}; \
  } while (0)

Outcome closure_identities() {
  Rng rng(1001);
  for (int i = 0; i < 50; ++i) {
    auto u = fixtures::random_union(rng);
    while (u.min() == u.max()) u = fixtures::random_union(rng);
    const Rational a1 = u.min(), bk = u.max();
    const std::vector<UniPoly> expected{x_minus(a1) * (UniPoly(bk) - kx), x_minus(a1), UniPoly(bk) - kx};
    const auto ids = lemma1_identities(u);
    REQUIRE(ids.size() == 3, "expected three identities for " + to_string(u));
    for (std::size_t j = 0; j < 3; ++j) {
      REQUIRE(ids[j].product == expected[j], ids[j].name + " has the wrong left side on " + to_string(u));
      REQUIRE(verify(ids[j].cert, expected[j]), ids[j].name + " does not verify on " + to_string(u));
      REQUIRE(oracle::certifies(ids[j].cert, expected[j]), ids[j].name + " disagrees with the grid oracle");
      REQUIRE(ids[j].cert.kind == CertKind::module, ids[j].name + " is not in module form");
    }
  }
  return {true, "50 random [a1, bk], 150 identities exact"};
}

Outcome gap_certificates() {
  Rng rng(1002);
  for (int i = 0; i < 200; ++i) {
    Rational b = rng.rational(20, 4), a = rng.rational(20, 4);
    if (a == b) a += 1;
    if (a < b) std::swap(a, b);
    Rational r = fixtures::random_between(rng, b, a), s = fixtures::random_between(rng, b, a);
    if (s < r) std::swap(r, s);
    const auto g = bcj_gap_certificate(r, s, b, a);
    REQUIRE(g.t >= 0 && g.t <= 1, "t outside [0, 1]");
    const UniPoly target = x_minus(r) * x_minus(s);
    REQUIRE(verify(g.cert, target), "identity rejected");
    REQUIRE(oracle::certifies(g.cert, target), "identity disagrees with the grid oracle");
  }
  return {true, "200 gap quadratics, t in [0, 1], identities exact"};
}

Outcome univariate() {
  Rng rng(1003);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 300; ++i) {
    const auto u = fixtures::random_union(rng, 3);
    const auto f = fixtures::random_candidate(rng, u, 10);
    const auto d = decide_nonneg_on_U(f, u);
    if (d.nonneg) {
      const auto c = certify_nonneg_1d(f, u);
      REQUIRE(verify(c, f), "certificate rejected for " + to_string(f) + " on " + to_string(u));
      REQUIRE(oracle::certifies(c, f), "grid oracle disagrees for " + to_string(f));
      ++accepted;
    } else {
      REQUIRE(d.witness && u.contains(*d.witness), "witness missing or outside U");
      REQUIRE(oracle::horner(f, *d.witness) < 0, "witness is not negative");
      ++rejected;
    }
  }
  return {true, std::to_string(accepted) + " certified, " + std::to_string(rejected) + " refuted"};
}

Outcome halfstrip_round_trip() {
  Rng rng(1004);
  for (int i = 0; i < 200; ++i) {
    const auto u = fixtures::random_union(rng);
    const auto c = fixtures::random_halfstrip_certificate(rng, u, 2, 1 + static_cast<unsigned>(i % 4));
    const auto lifted = lift_halfstrip(oracle::substitute_y_squared(c), u);
    REQUIRE(expand(lifted) == expand(c), "lifted expansion differs");
    REQUIRE(oracle::certifies(lifted, expand(c)), "grid oracle disagrees");
  }
  return {true, "200 certificates reproduced exactly"};
}

Outcome xy_cut() {
  Rng rng(1005);
  const GeneratorSet<2> gs{{kX - kX * kX, kY - BiPoly(1)}, "cut", std::nullopt};
  const std::vector<BiPoly> expected_gens{kX - kX * kX, kX * kY - BiPoly(1)};
  for (int i = 0; i < 50; ++i) {
    const unsigned n = static_cast<unsigned>(i % 3);
    auto c = random_certificate(gs, 2, 3, rng.next());
    for (auto& t : c.terms) {
      for (auto& ws : t.sos.squares) ws.square *= kX.pow(n);
    }
    const BiPoly f = exact_divide(compose(expand(c), std::array<BiPoly, 2>{kX, kX * kY}), kX.pow(2 * n));
    const auto out = xy_cut_transform(c, n);
    REQUIRE(out.genset.gens == expected_gens, "wrong output generators");
    REQUIRE(verify(out, f), "transformed certificate rejected");
    REQUIRE(oracle::certifies(out, f), "grid oracle disagrees");
    for (std::size_t j = 1; j < out.terms.size(); ++j) {
      REQUIRE(out.terms[j - 1].exponent < out.terms[j].exponent, "terms not grouped s0, s1, s2, s3");
    }
  }
  return {true, "50 certificates, n in {0, 1, 2}, grouped form"};
}

Outcome surface() {
  Rng rng(1006);
  const GeneratorSet<2> gs{{BiPoly(1) - kX * kX}, "strip", std::nullopt};
  const TriPoly z = TriPoly::variable(2);
  const TriPoly x2 = TriPoly::variable(0) * TriPoly::variable(0);
  for (int i = 0; i < 50; ++i) {
    const auto strip = random_certificate(gs, 2, 2, rng.next(), CertKind::module);
    const TriPoly f = embed<3>(expand(strip)) + random_poly<3>(rng, 2) * (z - x2);
    const auto out = surface_z_transform(f, strip);
    REQUIRE(verify(out, f), "surface certificate rejected");
    REQUIRE(oracle::certifies(out, f), "grid oracle disagrees");
  }
  return {true, "50 surface certificates exact"};
}

Outcome obstruction() {
  const auto u = IntervalUnion::parse("[0,1]");
  const std::vector<BiPoly> cut{kX - kX * kX, kY * kY - kX, kY};
  const auto a = obstruction_scan(cut, u, 16);
  REQUIRE(a.applicable == 16 && a.fails == 16, "cut half-strip: " + a.summary);
  // Per-sample oracle: the fiber starts at sqrt(c) and no candidate is linear with root sqrt(c).
  for (const auto& s : a.samples) {
    REQUIRE(s.c > 0 && s.c < 1, "sample outside (0, 1)");
    const auto fiber = fiber_set(cut, s.c);
    const auto& lo = fiber.pieces.at(0).lo->root;
    REQUIRE(lo.lo * lo.lo <= s.c && s.c <= lo.hi * lo.hi, "fiber endpoint is not sqrt(c)");
  }
  const auto b = obstruction_scan({kX - kX * kX, kY}, u, 16);
  REQUIRE(b.applicable == 16 && b.holds == 16, "plain half-strip: " + b.summary);
  return {true, "16/16 fail on {x-x^2, y^2-x, y}, 16/16 hold on {x-x^2, y}"};
}

Outcome mutation() {
  Rng rng(1008);
  const std::vector<GeneratorSet<2>> sets{
      {{kX - kX * kX}, "strip", std::nullopt},
      {{kX - kX * kX, kY * kY - kX, kY}, "cut half-strip", std::nullopt},
      {{kX - kX * kX, kX * kY - BiPoly(1)}, "xy cut", std::nullopt}};
  int tried = 0, false_accepts = 0;
  while (tried < 1000) {
    const auto c = random_certificate(sets[static_cast<std::size_t>(tried % 3)], 2, 2, rng.next());
    const BiPoly f = expand(c);
    auto mutant = c;
    const Rational delta = rng.nonzero_rational(7, 5);
    BiPoly* target;
    if (rng.uniform(0, 3) == 0) {
      target = &mutant.genset.gens[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mutant.genset.size()) - 1))];
    } else {
      auto& t = mutant.terms[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mutant.terms.size()) - 1))];
      target = &t.sos.squares[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(t.sos.squares.size()) - 1))].square;
    }
    auto it = target->terms().begin();
    std::advance(it, rng.uniform(0, static_cast<long>(target->term_count()) - 1));
    *target += BiPoly::monomial(delta, it->first);
    if (oracle::certifies(mutant, f)) continue;  // perturbation left the expansion unchanged
    ++tried;
    if (verify(mutant, f)) ++false_accepts;
  }
  REQUIRE(false_accepts == 0, std::to_string(false_accepts) + " false accepts");
  return {true, "1000 mutants rejected, 0 false accepts"};
}

Outcome concordance() {
  Rng rng(1009);
  int refuted = 0;
  for (int i = 0; i < 500; ++i) {
    const auto u = fixtures::random_union(rng);
    const auto f = fixtures::random_candidate(rng, u, 8);
    const auto d = decide_nonneg_on_U(f, u);
    if (const auto w = oracle::mesh_refute(f, u, {1, 3, 7, 256})) {
      REQUIRE(!d.nonneg, "mesh finds f(" + w->get_str() + ") < 0 but decide accepts " + to_string(f));
      ++refuted;
    }
    if (!d.nonneg) REQUIRE(u.contains(*d.witness) && oracle::horner(f, *d.witness) < 0, "bad 1-d witness");
  }
  int witnesses = 0;
  for (int i = 0; i < 200; ++i) {
    const auto u = fixtures::random_union(rng);
    const Region region = i % 2 ? Region::strip(u) : Region::halfstrip(u, x_minus(rng.rational(3, 2)).pow(2));
    const BiPoly f = random_poly<2>(rng, 3);
    const auto w = sample_refute_2d(f, region, 64);
    if (!w) continue;
    ++witnesses;
    REQUIRE(u.contains((*w)[0]), "2-d witness outside U");
    if (region.kind == Region::Kind::halfstrip) REQUIRE((*w)[1] >= eval(region.q, (*w)[0]), "2-d witness below q");
    REQUIRE(eval(f, *w) < 0, "2-d witness is not negative");
  }
  return {true, "500 instances, " + std::to_string(refuted) + " mesh refutations matched; " +
                    std::to_string(witnesses) + " 2-d witnesses exact and in region"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closure identities", 1, closure_identities},
      {2, "gap quadratic construction", 2, gap_certificates},
      {3, "univariate saturation", 30, univariate},
      {4, "half-strip round trip", 30, halfstrip_round_trip},
      {5, "xy-cut pipeline", 10, xy_cut},
      {6, "surface z = x^2 pipeline", 10, surface},
      {7, "endpoint obstruction scan", 5, obstruction},
      {8, "verifier soundness under mutation", 10, mutation},
      {9, "oracle concordance", 20, concordance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail += "; over time limit";
    }
    if (!o.ok) ++failed;
    std::printf("%s %d %s: %s (exact, %.3f s, limit %.0f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
