#include <doctest.h>

#include <string>

#include "shadowing/pipeline.hpp"

using namespace shadowing;

TEST_CASE("exact orbit input short-circuits to the seed") {
  auto cat = HyperbolicToralMap::cat_map();
  TorusPoint seed{0.3, 0.8};
  auto po = generate_pseudo_orbit(cat, seed, {ScheduleKind::constant, 0.0}, 40, 1);
  auto res = two_sided_limit_shadow(cat, po, 0.05);
  CHECK(cat.distance(res.p1, seed) <= 1e-9);
  CHECK(cat.distance(res.p2, seed) <= 1e-9);
  CHECK(cat.distance(res.certificate.shadow_point, seed) <= 1e-8);
  CHECK(res.certificate.max_deviation() <= 1e-8);
}

TEST_CASE("exact orbit input on the golden-mean shift") {
  auto sft = Sft::golden_mean();
  RngStream rng(17);
  SymbolicPoint seed = sft.random_point(10, rng);
  auto po = generate_pseudo_orbit(sft, seed, {ScheduleKind::constant, 0.0}, 32, 2);
  auto res = two_sided_limit_shadow(sft, po, 0.125);
  CHECK(sft.distance(res.certificate.shadow_point, seed) == 0.0);
  CHECK(res.certificate.max_deviation() == 0.0);
  CHECK(2 * res.report.N >= res.report.L);
}

TEST_CASE("toral splice: both sides tracked below eps beyond N") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0.9, 0.4}, TorusPoint{0.3, 0.7});
  auto res = two_sided_limit_shadow(cat, po, 0.05, 100);
  CHECK(res.certificate.verdict == Verdict::two_sided_limit_shadowed);
  CHECK(res.certificate.orbit_residual <= 1e-9);
  for (long long n = res.report.N; n <= 100; ++n) {
    CHECK(res.certificate.deviation_at(n) < 0.05);
    CHECK(res.certificate.deviation_at(-n) < 0.05);
  }
  CHECK(res.certificate.deviation_at(90) <= 1e-6);
  CHECK(res.certificate.deviation_at(-90) <= 1e-6);
}

TEST_CASE("non-decaying input is rejected up front") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = generate_pseudo_orbit(cat, TorusPoint{0.1, 0.2}, {ScheduleKind::constant, 0.1}, 30, 4);
  CHECK_THROWS_AS(two_sided_limit_shadow(cat, po, 0.05), Error);
}

TEST_CASE("sub-step failures carry the step number") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0.9, 0.4}, TorusPoint{0.3, 0.7});
  // eps so small that no admissible N fits inside the window
  try {
    two_sided_limit_shadow(cat, po, 1e-13, 20);
    FAIL("expected pipeline_failure");
  } catch (const Error& e) {
    CHECK(e.code() == errc::pipeline_failure);
    CHECK(std::string(e.what()).find("step 3") != std::string::npos);
  }
}

TEST_CASE("pipeline constants satisfy the recorded gates") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0.2, 0.6}, TorusPoint{0.8, 0.1});
  auto res = two_sided_limit_shadow(cat, po, 0.08, 80);
  CHECK(res.report.eps == 0.08);
  CHECK(res.report.delta > 0.0);
  CHECK(res.report.delta_spec == doctest::Approx(res.report.delta / cat.lipschitz()));
  CHECK(2 * res.report.N >= res.report.L);
  // the specification anchors really are delta_spec-tracked by z
  CHECK(cat.distance(cat.apply(res.z, -res.report.N), cat.apply(res.p1, -res.report.N)) <
        res.report.delta_spec);
  CHECK(cat.distance(cat.apply(res.z, res.report.N), cat.apply(res.p2, res.report.N)) <
        res.report.delta_spec);
}
