#include "shadowing/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "shadowing/analysis.hpp"
#include "shadowing/certify.hpp"
#include "shadowing/pipeline.hpp"
#include "shadowing/shadow_linear.hpp"
#include "shadowing/shadow_sft.hpp"

namespace shadowing {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult check(std::string name, bool pass, std::string detail = "") {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

CheckResult runtime_check(std::string name, double elapsed, double budget) {
  std::ostringstream os;
  os << elapsed << " s (budget " << budget << " s)";
  return check(std::move(name), elapsed < budget, os.str());
}

TorusPoint random_torus_point(RngStream& rng) { return {rng.next_unit(), rng.next_unit()}; }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// 1. exact-orbit identity
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_exact_orbit_identity() {
  std::vector<CheckResult> out;
  auto t0 = Clock::now();
  const ErrorSchedule zero{ScheduleKind::constant, 0.0};

  {
    auto cat = HyperbolicToralMap::cat_map();
    TorusPoint seed{0.1, 0.2};
    auto po = generate_pseudo_orbit(cat, seed, zero, 50, 1);
    auto cert = shadow_linear(cat, po, 50);
    out.push_back(check("cat: zero-schedule orbit shadowed by its seed",
                        cert.max_deviation() <= 1e-12 && cat.distance(cert.shadow_point, seed) <= 1e-12,
                        "max deviation " + fmt(cert.max_deviation())));
  }
  {
    auto sft = Sft::golden_mean();
    RngStream rng(2);
    SymbolicPoint seed = sft.random_point(16, rng);
    auto po = generate_pseudo_orbit(sft, seed, zero, 32, 2);
    auto cert = shadow_sft(sft, po, 32);
    out.push_back(check("golden mean: zero-schedule orbit shadowed exactly",
                        cert.max_deviation() == 0.0 && sft.distance(cert.shadow_point, seed) == 0.0,
                        "max deviation " + fmt(cert.max_deviation())));
  }
  {
    auto ns = NorthSouthCircleMap::from_parameter(0.1);
    auto po = generate_pseudo_orbit(ns, CirclePoint{0.25}, zero, 50, 3);
    auto cert = verify_self_shadow(ns, po, 50);
    out.push_back(check("north-south: zero-schedule orbit shadowed by its seed",
                        cert.max_deviation() <= 1e-12,
                        "max deviation " + fmt(cert.max_deviation())));
  }
  out.push_back(runtime_check("runtime", seconds_since(t0), 1.0));
  return out;
}

// ---------------------------------------------------------------------------
// 2. scheduled pseudo-orbits on the cat map
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_linear_scheduled() {
  std::vector<CheckResult> out;
  auto t0 = Clock::now();
  auto cat = HyperbolicToralMap::cat_map();
  const ErrorSchedule sched{ScheduleKind::inverse_linear, 0.3};

  bool residual_ok = true, edge_ok = true, envelope_ok = true, verdict_ok = true;
  double worst_residual = 0.0, worst_edge = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto po = generate_pseudo_orbit(cat, TorusPoint{0.1, 0.2}, sched, 200, seed);
    auto cert = shadow_linear(cat, po, 200);
    worst_residual = std::max(worst_residual, cert.orbit_residual);
    residual_ok = residual_ok && cert.orbit_residual <= 1e-9;
    double edge = std::max(cert.deviation_at(200), cert.deviation_at(-200));
    worst_edge = std::max(worst_edge, edge);
    edge_ok = edge_ok && edge < 1e-2;
    double e25 = cert.envelope(25), e50 = cert.envelope(50), e100 = cert.envelope(100),
           e200 = cert.envelope(200);
    envelope_ok = envelope_ok && e25 >= e50 && e50 >= e100 && e100 >= e200;
    verdict_ok = verdict_ok && cert.verdict == Verdict::two_sided_limit_shadowed;
  }
  out.push_back(check("orbit residual <= 1e-9 on 100 seeds", residual_ok,
                      "worst " + fmt(worst_residual)));
  out.push_back(check("deviation at |i| = 200 below 1e-2", edge_ok, "worst " + fmt(worst_edge)));
  out.push_back(check("dyadic envelope non-increasing over k in {25,50,100,200}", envelope_ok));
  out.push_back(check("verdict two_sided_limit_shadowed", verdict_ok));
  out.push_back(runtime_check("runtime", seconds_since(t0), 5.0));
  return out;
}

// ---------------------------------------------------------------------------
// 3. unrestricted error amplitudes
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_unrestricted_amplitude() {
  std::vector<CheckResult> out;
  auto cat = HyperbolicToralMap::cat_map();
  const ErrorSchedule sched{ScheduleKind::inverse_linear, 0.3};
  const long long spots[5] = {-60, -30, 0, 30, 60};

  bool verdict_ok = true, edge_ok = true, big_ok = true;
  double worst_edge = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto po = generate_pseudo_orbit(cat, TorusPoint{0.1, 0.2}, sched, 200, seed);
    RngStream rng(9000 + seed);
    for (long long j : spots) {
      TorusPoint p = po.point(j);
      double theta = rng.next_in(0.0, 2.0 * NorthSouthCircleMap::pi());
      po = po.with_point(
          j, TorusPoint::normalized(p.x + 0.5 * std::cos(theta), p.y + 0.5 * std::sin(theta)));
    }
    // the inserted defects really are half-diameter sized
    auto errs = po.errors(-61, 61);
    double big = 0.0;
    for (double e : errs) big = std::max(big, e);
    big_ok = big_ok && big >= 0.4;
    auto cert = shadow_linear(cat, po, 200);
    verdict_ok = verdict_ok && cert.verdict == Verdict::two_sided_limit_shadowed;
    double edge = std::max(cert.deviation_at(200), cert.deviation_at(-200));
    worst_edge = std::max(worst_edge, edge);
    edge_ok = edge_ok && edge < 1e-2;
  }
  out.push_back(check("mid-window errors of magnitude ~0.5 present", big_ok));
  out.push_back(check("verdict still two_sided_limit_shadowed", verdict_ok));
  out.push_back(
      check("edge deviation bound unchanged (< 1e-2 at |i| = 200)", edge_ok, "worst " + fmt(worst_edge)));
  return out;
}

// ---------------------------------------------------------------------------
// 4. series solver vs exhaustive grid minimizer
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_oracle_equivalence() {
  std::vector<CheckResult> out;
  auto t0 = Clock::now();
  auto cat = HyperbolicToralMap::cat_map();
  RngStream rng(404);
  bool ok = true;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    TorusPoint y = random_torus_point(rng), x = random_torus_point(rng);
    auto po = splice_orbits(cat, y, x);
    double solver = shadow_linear(cat, po, 8).max_deviation();
    double grid = grid_min_max_deviation(cat, po, 8, 1e-3).max_deviation;
    double gap = std::fabs(solver - grid);
    worst_gap = std::max(worst_gap, gap);
    ok = ok && gap <= 5e-3;
  }
  out.push_back(check("series max deviation matches grid minimizer within 5e-3 (10 splices)", ok,
                      "worst gap " + fmt(worst_gap)));
  out.push_back(runtime_check("runtime", seconds_since(t0), 60.0));
  return out;
}

// ---------------------------------------------------------------------------
// 5. orbit splices are two-sided limit shadowed
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_orbit_splices() {
  std::vector<CheckResult> out;
  auto cat = HyperbolicToralMap::cat_map();
  RngStream rng(505);
  bool ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    TorusPoint y = random_torus_point(rng), x = random_torus_point(rng);
    auto po = splice_orbits(cat, y, x);
    auto res = two_sided_limit_shadow(cat, po, 0.05, 160);
    double back = res.certificate.deviation_at(-150);  // vs f^n(y), n <= 0
    double fwd = res.certificate.deviation_at(150);    // vs f^n(x), n > 0
    worst = std::max({worst, back, fwd});
    ok = ok && back <= 1e-6 && fwd <= 1e-6 &&
         res.certificate.verdict == Verdict::two_sided_limit_shadowed;
  }
  out.push_back(check("20 random splices: deviations <= 1e-6 at |n| = 150", ok,
                      "worst " + fmt(worst)));
  return out;
}

// ---------------------------------------------------------------------------
// 6. splicing pipeline on the golden-mean shift
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_pipeline_sft() {
  std::vector<CheckResult> out;
  auto sft = Sft::golden_mean();
  RngStream rng(606);
  const long long W = 32;
  bool admissible_ok = true, agree_ok = true, spacing_ok = true, verdict_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    SymbolicPoint pl = sft.random_point(40, rng);
    SymbolicPoint pr = sft.random_point(40, rng);
    std::vector<SymbolicPoint> window((std::size_t)(2 * W + 1));
    for (long long i = -W; i <= W; ++i) {
      if (i <= -4)
        window[(std::size_t)(i + W)] = sft.apply(pl, i);
      else if (i >= 4)
        window[(std::size_t)(i + W)] = sft.apply(pr, i);
      else
        window[(std::size_t)(i + W)] = sft.random_point(8, rng);  // garbage center
    }
    PseudoOrbit<Sft> po(sft, std::move(window), TailSpec::exact_orbit(),
                        TailSpec::exact_orbit());

    auto direct = shadow_sft(sft, po, W);
    auto pipe = two_sided_limit_shadow(sft, po, 0.125, W);

    admissible_ok = admissible_ok && pipe.certificate.orbit_residual == 0.0 &&
                    sft.admissible(pipe.certificate.shadow_point);
    for (long long i = W / 2; i <= W + 16; ++i) {
      agree_ok = agree_ok &&
                 pipe.certificate.shadow_point.symbol(i) == direct.shadow_point.symbol(i) &&
                 pipe.certificate.shadow_point.symbol(-i) == direct.shadow_point.symbol(-i);
    }
    spacing_ok = spacing_ok &&
                 pipe.report.L == specification_spacing(sft, pipe.report.delta_spec) &&
                 2 * pipe.report.N >= pipe.report.L;
    verdict_ok = verdict_ok && pipe.certificate.verdict == Verdict::two_sided_limit_shadowed;
  }
  out.push_back(check("pipeline produces admissible exact orbits (50 trials)", admissible_ok));
  out.push_back(check("symbols agree with direct shadow for all |i| >= W/2", agree_ok));
  out.push_back(check("L = specification_spacing and 2N >= L", spacing_ok));
  out.push_back(check("verdict two_sided_limit_shadowed", verdict_ok));
  return out;
}

// ---------------------------------------------------------------------------
// 7. Morse-Smale negative certification
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_morse_smale_negative() {
  std::vector<CheckResult> out;
  auto t0 = Clock::now();
  auto ns = NorthSouthCircleMap::from_parameter(0.1);

  auto po = splice_orbits(ns, ns.sink(), ns.source());
  auto res = certify_unshadowable(ns, po, 0.1, 50, 1e-4);
  bool certified = std::holds_alternative<NonShadowCertificate>(res);
  std::string detail;
  if (certified) {
    const auto& cert = std::get<NonShadowCertificate>(res);
    detail = fmt((double)cert.candidate_count) + " candidates, all violate";
  }
  out.push_back(check("sink/source splice certified unshadowable at eps = 0.1", certified, detail));

  auto control = generate_pseudo_orbit(ns, CirclePoint{0.25}, {ScheduleKind::constant, 0.0}, 50, 7);
  auto res2 = certify_unshadowable(ns, control, 0.1, 50, 1e-4);
  bool survivor = std::holds_alternative<SurvivingCandidate<CirclePoint>>(res2);
  bool near = false;
  if (survivor) {
    const auto& s = std::get<SurvivingCandidate<CirclePoint>>(res2);
    near = ns.distance(s.point, CirclePoint{0.25}) <= 2e-4;
  }
  out.push_back(check("exact-orbit control finds a surviving candidate near the seed",
                      survivor && near));
  out.push_back(runtime_check("runtime", seconds_since(t0), 30.0));
  return out;
}

// ---------------------------------------------------------------------------
// 8. attracting / repelling sets
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_invariant_sets() {
  std::vector<CheckResult> out;
  auto ns = NorthSouthCircleMap::from_parameter(0.1);
  {
    auto reps = find_attracting_set(ns, {Arc{0.3, 0.7}, Arc{0.6, 0.9}}, 1e-3, 300);
    const auto& trap = reps[0];
    bool cloud_is_sink = !trap.attained.empty();
    for (const auto& p : trap.attained)
      cloud_is_sink = cloud_is_sink && ns.distance(p, ns.sink()) <= 1e-3;
    out.push_back(check("north-south: (0.3, 0.7) traps and attains {0.5}, proper",
                        trap.trapped && trap.proper && cloud_is_sink &&
                            trap.invariant_at_resolution,
                        fmt((double)trap.attained.size()) + " cloud points"));
    out.push_back(check("north-south: (0.6, 0.9) is not trapped", !reps[1].trapped));
  }
  {
    auto cat = HyperbolicToralMap::cat_map();
    RngStream rng(808);
    std::vector<Rect> rects;
    for (int k = 0; k < 50; ++k) {
      double x0 = rng.next_in(0.0, 0.45);
      double y0 = rng.next_in(0.0, 0.45);
      double w = rng.next_in(0.05, 0.5);
      double h = rng.next_in(0.05, 0.5);
      rects.push_back(Rect{x0, y0, std::min(1.0, x0 + w), std::min(1.0, y0 + h)});
    }
    auto reps = find_attracting_set(cat, rects, 0.01, 50);
    bool none = true;
    for (const auto& r : reps) none = none && !r.trapped;
    out.push_back(check("cat map: none of 50 random rectangles traps", none));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 9. periodic point exactness
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_periodic_exactness() {
  std::vector<CheckResult> out;
  {
    auto cat = HyperbolicToralMap::cat_map();
    auto recs = periodic_points(cat, 6);
    const long long expected[6] = {1, 5, 16, 45, 121, 320};
    bool ok = true;
    std::ostringstream counts;
    Mat2i pw = Mat2i::identity();
    for (long long n = 1; n <= 6; ++n) {
      pw = pw * cat.matrix();
      Mat2i M{pw.a - 1, pw.b, pw.c, pw.d - 1};
      long long oracle = std::llabs(M.det());  // integer determinant, the in-repo oracle
      long long got = 0;
      for (const auto& r : recs)
        if (n % r.period == 0) ++got;
      counts << got << " ";
      ok = ok && got == oracle && got == expected[n - 1];
    }
    out.push_back(check("cat map: counts match |det(A^n - I)| = 1,5,16,45,121,320", ok,
                        counts.str()));
  }
  {
    auto sft = Sft::golden_mean();
    auto recs = periodic_points(sft, 6);
    bool ok = true;
    std::ostringstream counts;
    Mat2i pw = Mat2i::identity();
    const Mat2i T{1, 1, 1, 0};
    for (long long n = 1; n <= 6; ++n) {
      pw = pw * T;
      long long oracle = pw.trace();
      long long got = 0;
      for (const auto& r : recs)
        if (n % r.period == 0) ++got;
      counts << got << " ";
      ok = ok && got == oracle;
    }
    out.push_back(check("golden mean: counts match trace(T^n) = 1,3,4,7,11,18", ok, counts.str()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. heteroclinic relations and indices
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_heteroclinic_indices() {
  std::vector<CheckResult> out;
  {
    auto cat = HyperbolicToralMap::cat_map();
    auto recs = periodic_points(cat, 2);
    bool five = recs.size() == 5;
    bool ok = five;
    for (std::size_t i = 0; i < recs.size() && ok; ++i)
      for (std::size_t j = 0; j < recs.size() && ok; ++j) {
        auto rel = heteroclinic_relate(cat, recs[i], recs[j]);
        ok = rel.related && rel.indices_equal;
      }
    out.push_back(check("cat map: all 5 points of period <= 2 pairwise related, equal index", ok,
                        fmt((double)recs.size()) + " records"));
  }
  {
    auto ns = NorthSouthCircleMap::from_parameter(0.1);
    PeriodicPointRecord<CirclePoint> source{ns.source(), 1, 0, true, std::nullopt};
    PeriodicPointRecord<CirclePoint> sink{ns.sink(), 1, 1, true, std::nullopt};
    auto rel = heteroclinic_relate(ns, source, sink);
    out.push_back(check("north-south: source/sink not related, unequal indices",
                        !rel.related && !rel.indices_equal, rel.empty_reason));
  }
  return out;
}

// ---------------------------------------------------------------------------
// suite lemma21: one-sided limit shadowing
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_one_sided_limit() {
  std::vector<CheckResult> out;
  {
    auto cat = HyperbolicToralMap::cat_map();
    auto po_f = generate_pseudo_orbit(cat, TorusPoint{0.3, 0.7},
                                      {ScheduleKind::forward_decay, 0.4}, 150, 21);
    auto cf = limit_shadow(cat, po_f, 150);
    double tail_dev = cf.envelope(100);
    out.push_back(check("cat: forward-decaying orbit is limit shadowed",
                        cf.verdict == Verdict::limit_shadowed && tail_dev <= 0.05,
                        "deviation envelope beyond 100: " + fmt(tail_dev)));
    auto cls = classify(po_f, 150, 0.01);
    out.push_back(check("cat: classification is limit but not negative-limit",
                        cls.limit && !cls.negative_limit && !cls.two_sided_limit));

    auto po_b = generate_pseudo_orbit(cat, TorusPoint{0.3, 0.7},
                                      {ScheduleKind::backward_decay, 0.4}, 150, 23);
    auto cb = negative_limit_shadow(cat, po_b, 150);
    double tail_dev_b = 0.0;
    for (long long i = 100; i <= 150; ++i) tail_dev_b = std::max(tail_dev_b, cb.deviation_at(-i));
    out.push_back(check("cat: backward-decaying orbit is negative limit shadowed",
                        cb.verdict == Verdict::negative_limit_shadowed && tail_dev_b <= 0.05,
                        "backward deviation envelope beyond 100: " + fmt(tail_dev_b)));
  }
  {
    auto sft = Sft::golden_mean();
    RngStream rng(25);
    auto po = generate_pseudo_orbit(sft, sft.random_point(16, rng),
                                    {ScheduleKind::forward_decay, 0.5}, 64, 25);
    auto c = limit_shadow(sft, po, 64);
    double fwd = 0.0;
    for (long long i = 48; i <= 64; ++i) fwd = std::max(fwd, c.deviation_at(i));
    out.push_back(check("golden mean: forward-decaying orbit is limit shadowed",
                        c.verdict == Verdict::limit_shadowed && fwd <= 0.05,
                        "forward deviation envelope beyond 48: " + fmt(fwd)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// suite lemma22, toral half
// ---------------------------------------------------------------------------

std::vector<CheckResult> checks_pipeline_toral() {
  std::vector<CheckResult> out;
  auto cat = HyperbolicToralMap::cat_map();
  auto po = generate_pseudo_orbit(cat, TorusPoint{0.1, 0.2},
                                  {ScheduleKind::inverse_linear, 0.3}, 200, 7);
  auto pipe = two_sided_limit_shadow(cat, po, 0.05, 200);
  auto lin = shadow_linear(cat, po, 200);

  bool below = true;
  for (long long i : {50LL, 100LL, 150LL, 200LL})
    below = below && pipe.certificate.deviation_at(i) < 0.05 &&
            pipe.certificate.deviation_at(-i) < 0.05 && lin.deviation_at(i) < 0.05 &&
            lin.deviation_at(-i) < 0.05;
  out.push_back(check("both shadows' deviations below eps = 0.05 for |i| >= 50", below));

  double agree = std::max(cat.distance(pipe.certificate.orbit_point(200), lin.orbit_point(200)),
                          cat.distance(pipe.certificate.orbit_point(-200), lin.orbit_point(-200)));
  out.push_back(check("pipeline and direct series shadows agree asymptotically", agree <= 0.02,
                      "distance at |i| = 200: " + fmt(agree)));
  out.push_back(check("constants recorded: L = spacing(delta_spec), 2N >= L",
                      pipe.report.L == specification_spacing(cat, pipe.report.delta_spec) &&
                          2 * pipe.report.N >= pipe.report.L,
                      "L = " + fmt((double)pipe.report.L) + ", N = " + fmt((double)pipe.report.N)));
  out.push_back(check("verdict two_sided_limit_shadowed",
                      pipe.certificate.verdict == Verdict::two_sided_limit_shadowed));
  return out;
}

// ---------------------------------------------------------------------------
// suite driver
// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"lemma21", "lemma22", "lemma24", "corollary25", "theoremB", "oracle"};
}

SuiteResult run_suite(const std::string& name) {
  SuiteResult result;
  result.suite = name;
  if (name == "lemma21") {
    result.checks = checks_one_sided_limit();
  } else if (name == "lemma22") {
    result.checks = checks_pipeline_toral();
    auto sft_checks = checks_pipeline_sft();
    result.checks.insert(result.checks.end(), sft_checks.begin(), sft_checks.end());
  } else if (name == "lemma24") {
    result.checks = checks_orbit_splices();
  } else if (name == "corollary25") {
    result.checks = checks_invariant_sets();
  } else if (name == "theoremB") {
    result.checks = checks_morse_smale_negative();
  } else if (name == "oracle") {
    result.checks = checks_oracle_equivalence();
  } else {
    fail(errc::unknown_suite, "unknown suite '" + name + "'; known: lemma21 lemma22 lemma24 "
                              "corollary25 theoremB oracle");
  }
  return result;
}

}  // namespace shadowing
