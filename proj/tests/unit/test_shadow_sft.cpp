#include <doctest.h>

#include <cmath>

#include "shadowing/shadow_sft.hpp"
#include "shadowing/specification.hpp"

using namespace shadowing;

namespace {

// two-sided limit pseudo-orbit with exact tails and a block of arbitrary
// admissible points in the center
PseudoOrbit<Sft> garbage_center_po(const Sft& sft, const SymbolicPoint& past,
                                   const SymbolicPoint& future, long long W, long long c,
                                   RngStream& rng) {
  std::vector<SymbolicPoint> window((std::size_t)(2 * W + 1));
  for (long long i = -W; i <= W; ++i) {
    if (i <= -c)
      window[(std::size_t)(i + W)] = sft.apply(past, i);
    else if (i >= c)
      window[(std::size_t)(i + W)] = sft.apply(future, i);
    else
      window[(std::size_t)(i + W)] = sft.random_point(6, rng);
  }
  return PseudoOrbit<Sft>(sft, std::move(window), TailSpec::exact_orbit(),
                          TailSpec::exact_orbit());
}

}  // namespace

TEST_CASE("exact orbit: shadow equals the seed, deviations exactly zero") {
  auto sft = Sft::golden_mean();
  RngStream rng(3);
  SymbolicPoint seed = sft.random_point(12, rng);
  auto po = generate_pseudo_orbit(sft, seed, {ScheduleKind::constant, 0.0}, 24, 3);
  auto cert = shadow_sft(sft, po, 24);
  CHECK(cert.max_deviation() == 0.0);
  CHECK(sft.distance(cert.shadow_point, seed) == 0.0);
  CHECK(cert.orbit_residual == 0.0);
  CHECK(cert.verdict == Verdict::two_sided_limit_shadowed);
}

TEST_CASE("golden-mean splice with garbage center: repaired diagonal") {
  auto sft = Sft::golden_mean();
  RngStream rng(31);
  SymbolicPoint zeros = SymbolicPoint::periodic({0});
  SymbolicPoint alt = SymbolicPoint::periodic({0, 1});
  auto po = garbage_center_po(sft, zeros, alt, 16, 3, rng);
  auto cert = shadow_sft(sft, po, 16);
  CHECK(sft.admissible(cert.shadow_point));
  CHECK(cert.orbit_residual == 0.0);
  // far from the center the shadow matches the tails exactly
  for (long long i = 10; i <= 30; ++i) {
    CHECK(cert.shadow_point.symbol(-i) == zeros.symbol(-i));
    CHECK(cert.shadow_point.symbol(i) == alt.symbol(i));
  }
  // deviations decay like 2^-(|i| - c)
  for (long long i = 8; i <= 16; ++i) {
    CHECK(cert.deviation_at(i) <= std::ldexp(1.0, (int)-(i - 6)));
    CHECK(cert.deviation_at(-i) <= std::ldexp(1.0, (int)-(i - 6)));
  }
  // tail bounds are consistent with the edge deviations
  CHECK(cert.deviation_at(16) <= cert.forward_tail.coeff);
  CHECK(cert.deviation_at(-16) <= cert.backward_tail.coeff);
  CHECK(cert.forward_tail.rate == 0.5);
  CHECK(cert.backward_tail.rate == 0.5);
}

TEST_CASE("full shift never needs repairs; deviations halve per step") {
  auto full = Sft::full_shift(2);
  RngStream rng(8);
  auto po = generate_pseudo_orbit(full, full.random_point(8, rng),
                                  {ScheduleKind::inverse_square, 1.0}, 64, 21);
  auto cert = shadow_sft(full, po, 64);
  CHECK(cert.orbit_residual == 0.0);
  // the diagonal itself is admissible on the full shift, so the shadow
  // matches every central symbol
  for (long long i = -64; i <= 64; ++i)
    CHECK(cert.shadow_point.symbol(i) == po.point(i).symbol(0));
}

TEST_CASE("mixing is required") {
  auto swap = Sft::from_transitions({{0, 1}, {1, 0}});
  SymbolicPoint seed = SymbolicPoint::periodic({0, 1});
  auto po = generate_pseudo_orbit(swap, seed, {ScheduleKind::constant, 0.0}, 8, 1);
  CHECK_THROWS_AS(shadow_sft(swap, po, 8), Error);
}

TEST_CASE("specification shadowing on the golden-mean shift") {
  auto sft = Sft::golden_mean();
  SymbolicPoint zeros = SymbolicPoint::periodic({0});
  SymbolicPoint alt = SymbolicPoint::periodic({0, 1});
  auto spec = Specification<SymbolicPoint>::two_point(-4, zeros.shifted(-4), 4, alt.shifted(4));
  SymbolicPoint z = shadow_specification(sft, spec, 0.125);
  CHECK(sft.admissible(z));
  // symbols within radius 3 of -+4 match the anchors
  for (long long j = -3; j <= 3; ++j) {
    CHECK(z.symbol(-4 + j) == zeros.symbol(j));
    CHECK(z.symbol(4 + j) == alt.symbol(4 + j));
  }
  CHECK(sft.distance(sft.apply(z, -4), zeros.shifted(-4)) < 0.125);
  CHECK(sft.distance(sft.apply(z, 4), alt.shifted(4)) < 0.125);
  // single interval: the anchor pulled to time 0, exactly
  auto single = Specification<SymbolicPoint>::single(5, alt.shifted(5));
  CHECK(sft.distance(shadow_specification(sft, single, 0.5), alt) == 0.0);
  // gaps below the required spacing are rejected, never widened
  auto tight = Specification<SymbolicPoint>::two_point(-1, zeros.shifted(-1), 1, alt.shifted(1));
  CHECK_THROWS_AS(shadow_specification(sft, tight, 0.125), Error);
}

TEST_CASE("specification shadowing on the cat map: leaf intersection") {
  auto cat = HyperbolicToralMap::cat_map();
  TorusPoint p1{0.0, 0.0};
  TorusPoint p2{0.1, 0.2};
  const long long N = 20;
  auto spec = Specification<TorusPoint>::two_point(-N, cat.apply(p1, -N), N, cat.apply(p2, N));
  TorusPoint z = shadow_specification(cat, spec, 1e-3);
  // verified by direct iteration (20 steps keep roundoff far below delta)
  CHECK(cat.distance(cat.apply(z, -N), cat.apply(p1, -N)) < 1e-3);
  CHECK(cat.distance(cat.apply(z, N), cat.apply(p2, N)) < 1e-3);
  // single interval is exact
  auto single = Specification<TorusPoint>::single(7, cat.apply(p2, 7));
  CHECK(cat.distance(shadow_specification(cat, single, 1e-6), p2) <= 1e-10);
  // an unreachable delta is reported
  auto tight = Specification<TorusPoint>::two_point(-1, p1, 1, p2);
  CHECK_THROWS_AS(shadow_specification(cat, tight, 1e-9), Error);
}
