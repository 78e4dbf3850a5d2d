#include <doctest.h>

#include <variant>

#include "shadowing/certify.hpp"
#include "shadowing/shadow_linear.hpp"

using namespace shadowing;

TEST_CASE("sink/source splice is certified unshadowable") {
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  auto po = splice_orbits(ns, ns.sink(), ns.source());
  auto res = certify_unshadowable(ns, po, 0.1, 30, 1e-3);
  REQUIRE(std::holds_alternative<NonShadowCertificate>(res));
  const auto& cert = std::get<NonShadowCertificate>(res);
  CHECK(cert.candidate_count == 1000);
  CHECK(cert.violation_index.size() == cert.candidate_count);
  // violations are reproducible: recompute a sample of candidates
  for (std::size_t k : {0UL, 250UL, 777UL}) {
    CirclePoint c{double(k) / 1000.0};
    double d = ns.distance(ns.apply(c, cert.violation_index[k]),
                           po.point(cert.violation_index[k]));
    CHECK(d == doctest::Approx(cert.violation_magnitude[k]).epsilon(1e-12));
    CHECK(cert.violation_magnitude[k] >= cert.eps);
  }
}

TEST_CASE("exact orbit control: a survivor is found near the seed") {
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  auto po = generate_pseudo_orbit(ns, CirclePoint{0.25}, {ScheduleKind::constant, 0.0}, 30, 5);
  auto res = certify_unshadowable(ns, po, 0.1, 30, 1e-3);
  REQUIRE(std::holds_alternative<SurvivingCandidate<CirclePoint>>(res));
  const auto& s = std::get<SurvivingCandidate<CirclePoint>>(res);
  CHECK(ns.distance(s.point, CirclePoint{0.25}) <= 1e-3);
  CHECK(s.max_deviation < 0.1);
}

TEST_CASE("cat splice survivor sits near the series shadow") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0, 0}, TorusPoint{0.1, 0.2});
  // the splice's min-max deviation is ~0.19, so certification succeeds at
  // eps = 0.1 and a survivor exists at eps = 0.25
  auto refuted = certify_unshadowable(cat, po, 0.1, 20, 2e-3);
  CHECK(std::holds_alternative<NonShadowCertificate>(refuted));
  auto res = certify_unshadowable(cat, po, 0.25, 20, 2e-3);
  REQUIRE(std::holds_alternative<SurvivingCandidate<TorusPoint>>(res));
  const auto& s = std::get<SurvivingCandidate<TorusPoint>>(res);
  auto series = shadow_linear(cat, po, 20);
  CHECK(cat.distance(s.point, series.shadow_point) <= 5.0 * 2e-3);
}

TEST_CASE("grid slack guard") {
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  auto po = splice_orbits(ns, ns.sink(), ns.source());
  CHECK_THROWS_AS(certify_unshadowable(ns, po, 1e-5, 30, 1e-3), Error);
}

TEST_CASE("grid minimizer agrees with the series solver on a small window") {
  auto cat = HyperbolicToralMap::cat_map();
  auto po = splice_orbits(cat, TorusPoint{0.6, 0.1}, TorusPoint{0.35, 0.85});
  auto series = shadow_linear(cat, po, 8);
  auto grid = grid_min_max_deviation(cat, po, 8, 1e-3);
  CHECK(std::fabs(series.max_deviation() - grid.max_deviation) <= 5e-3);
}

TEST_CASE("circle grid minimizer finds the exact-orbit seed") {
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  auto po = generate_pseudo_orbit(ns, CirclePoint{0.25}, {ScheduleKind::constant, 0.0}, 20, 2);
  auto r = grid_min_max_deviation(ns, po, 20, 1e-3);
  CHECK(r.max_deviation <= 1e-6);
  CHECK(ns.distance(r.point, CirclePoint{0.25}) <= 1e-3);
}

TEST_CASE("self-shadow verification on the north-south map") {
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  auto po = generate_pseudo_orbit(ns, CirclePoint{0.25}, {ScheduleKind::constant, 0.0}, 50, 3);
  auto cert = verify_self_shadow(ns, po, 50);
  CHECK(cert.max_deviation() <= 1e-12);
  CHECK(cert.verdict == Verdict::two_sided_limit_shadowed);
  // perturbed orbits only earn the eps verdict
  auto noisy = generate_pseudo_orbit(ns, CirclePoint{0.25}, {ScheduleKind::constant, 0.01}, 50, 3);
  auto cert2 = verify_self_shadow(ns, noisy, 50);
  CHECK(cert2.verdict == Verdict::eps_shadowed);
  CHECK(cert2.eps == cert2.max_deviation());
}
