#include "shadowing/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shadowing/analysis.hpp"

namespace shadowing {

namespace {

[[noreturn]] void pipeline_fail(int step, const char* what, const std::string& cause) {
  std::ostringstream os;
  os << "step " << step << " (" << what << "): " << cause;
  throw Error(errc::pipeline_failure, os.str());
}

template <class Fn>
auto traced(int step, const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    pipeline_fail(step, what, e.what());
  }
}

// least N with 2N >= L whose tail deviations (from the one-sided
// certificates, extended by their tail bounds) are below delta
template <class Point>
long long choose_n(const ShadowCertificate<Point>& c1, const ShadowCertificate<Point>& c2,
                   long long L, double delta, long long W) {
  for (long long N = std::max(1LL, (L + 1) / 2); N <= W; ++N) {
    double worst = std::max(c1.backward_tail.coeff, c2.forward_tail.coeff);
    for (long long n = N; n <= W; ++n)
      worst = std::max({worst, c1.deviation_at(-n), c2.deviation_at(n)});
    if (worst < delta) return N;
  }
  std::ostringstream os;
  os << "no N within the window has tail deviations below " << delta;
  throw Error(errc::bad_window, os.str());
}

template <class S>
void require_two_sided_limit(const PseudoOrbit<S>& po) {
  Classification cls = classify(po, po.window_radius(), 0.0);
  require(cls.two_sided_limit, errc::bad_parameter,
          "pipeline input must be a certified two-sided limit pseudo-orbit");
}

}  // namespace

PipelineResult<TorusPoint> two_sided_limit_shadow(const HyperbolicToralMap& map,
                                                  const PseudoOrbit<HyperbolicToralMap>& po,
                                                  double eps, long long W) {
  require(eps > 0.0, errc::bad_parameter, "eps must be positive");
  require_two_sided_limit(po);
  if (W <= 0) W = std::max(po.window_radius(), 32LL);

  PipelineResult<TorusPoint> out;
  out.report.eps = eps;

  auto c2 = traced(1, "limit shadow of the forward tail",
                   [&] { return shadow_linear(map, po, W, 0, Side::forward); });
  auto c1 = traced(1, "negative limit shadow of the backward tail",
                   [&] { return shadow_linear(map, po, W, 0, Side::backward); });
  out.p1 = c1.shadow_point;
  out.p2 = c2.shadow_point;

  const double delta = traced(2, "shadowing constant", [&] { return shadowing_delta(map, eps); });
  const double delta_spec = delta / map.lipschitz();
  const long long L =
      traced(2, "specification spacing", [&] { return specification_spacing(map, delta_spec); });
  out.report.delta = delta;
  out.report.delta_spec = delta_spec;
  out.report.L = L;

  const long long N =
      traced(3, "choice of N", [&] { return choose_n(c1, c2, L, delta, W); });
  out.report.N = N;

  auto spec = Specification<TorusPoint>::two_point(-N, map.apply(out.p1, -N), N,
                                                   map.apply(out.p2, N));
  LeafSolveDetail leaf;
  out.z = traced(4, "specification shadow",
                 [&] { return shadow_specification(map, spec, delta_spec, &leaf); });

  // Assembled delta-pseudo-orbit: p1's orbit up to -N, z's orbit between,
  // p2's orbit from N on. The orbit points come from the one-sided
  // certificates (whose per-step residual is at roundoff), and z's orbit is
  // expressed through the leaf coordinates: f^n(z) = f^n(p1) + s lambda_u^n v_u
  // for n <= 0 and f^n(p2) + t lambda_s^n v_s for n >= 0. Naive iteration of
  // z would lose the tracking at the expansion rate.
  const long long Wp = W;
  const Vec2 vu = map.unstable_dir(), vs = map.stable_dir();
  std::vector<TorusPoint> window((std::size_t)(2 * Wp + 1));
  {
    double su = leaf.s;  // s lambda_u^n, walked down from n = 0
    for (long long n = 0; n > -N; --n) {
      TorusPoint base = c1.orbit_point(n);
      window[(std::size_t)(n + Wp)] =
          TorusPoint::normalized(base.x + su * vu.x, base.y + su * vu.y);
      su /= map.lambda_u();
    }
    double ts = leaf.t * map.lambda_s();  // t lambda_s^n, walked up from n = 1
    for (long long n = 1; n < N; ++n) {
      TorusPoint base = c2.orbit_point(n);
      window[(std::size_t)(n + Wp)] =
          TorusPoint::normalized(base.x + ts * vs.x, base.y + ts * vs.y);
      ts *= map.lambda_s();
    }
    for (long long n = -Wp; n <= -N; ++n) window[(std::size_t)(n + Wp)] = c1.orbit_point(n);
    for (long long n = N; n <= Wp; ++n) window[(std::size_t)(n + Wp)] = c2.orbit_point(n);
  }
  auto assembled = traced(5, "assembly of the delta-pseudo-orbit", [&] {
    return PseudoOrbit<HyperbolicToralMap>(map, std::move(window), TailSpec::exact_orbit(),
                                           TailSpec::exact_orbit());
  });

  auto final_cert =
      traced(6, "shadow of the assembled orbit", [&] { return shadow_linear(map, assembled, Wp); });

  // report deviations against the original pseudo-orbit
  out.certificate = final_cert;
  std::vector<TorusPoint> originals = po.points(-Wp, Wp);
  for (long long i = -Wp; i <= Wp; ++i)
    out.certificate.deviations[(std::size_t)(i + Wp)] =
        map.distance(final_cert.orbit_point(i), originals[(std::size_t)(i + Wp)]);
  out.certificate.errors = po.errors(-Wp, Wp);
  out.certificate.forward_tail = {final_cert.forward_tail.coeff + c2.forward_tail.coeff,
                                  std::max(final_cert.forward_tail.rate, c2.forward_tail.rate)};
  out.certificate.backward_tail = {final_cert.backward_tail.coeff + c1.backward_tail.coeff,
                                   std::max(final_cert.backward_tail.rate, c1.backward_tail.rate)};
  out.certificate.verdict = Verdict::two_sided_limit_shadowed;
  return out;
}

PipelineResult<SymbolicPoint> two_sided_limit_shadow(const Sft& sft, const PseudoOrbit<Sft>& po,
                                                     double eps, long long W) {
  require(eps > 0.0, errc::bad_parameter, "eps must be positive");
  require(sft.mixing_time().has_value(), errc::not_mixing,
          "the pipeline requires a mixing SFT");
  require_two_sided_limit(po);
  if (W <= 0) W = std::max(po.window_radius(), 32LL);

  PipelineResult<SymbolicPoint> out;
  out.report.eps = eps;

  auto c2 = traced(1, "limit shadow of the forward tail",
                   [&] { return shadow_sft(sft, po, W, Side::forward); });
  auto c1 = traced(1, "negative limit shadow of the backward tail",
                   [&] { return shadow_sft(sft, po, W, Side::backward); });
  out.p1 = c1.shadow_point;
  out.p2 = c2.shadow_point;

  const double delta = traced(2, "shadowing constant", [&] { return shadowing_delta(sft, eps); });
  const double delta_spec = delta / sft.lipschitz();
  const long long L =
      traced(2, "specification spacing", [&] { return specification_spacing(sft, delta_spec); });
  out.report.delta = delta;
  out.report.delta_spec = delta_spec;
  out.report.L = L;

  const long long N = traced(3, "choice of N", [&] { return choose_n(c1, c2, L, delta, W); });
  out.report.N = N;

  auto spec = Specification<SymbolicPoint>::two_point(-N, sft.apply(out.p1, -N), N,
                                                      sft.apply(out.p2, N));
  out.z = traced(4, "specification shadow",
                 [&] { return shadow_specification(sft, spec, delta_spec); });

  const long long Wp = std::max(W, N + 4);
  std::vector<SymbolicPoint> window((std::size_t)(2 * Wp + 1));
  for (long long n = -Wp; n <= Wp; ++n) {
    const SymbolicPoint& base = n <= -N ? out.p1 : (n >= N ? out.p2 : out.z);
    window[(std::size_t)(n + Wp)] = sft.apply(base, n);
  }
  auto assembled = traced(5, "assembly of the delta-pseudo-orbit", [&] {
    return PseudoOrbit<Sft>(sft, std::move(window), TailSpec::exact_orbit(),
                            TailSpec::exact_orbit());
  });

  auto final_cert =
      traced(6, "shadow of the assembled orbit", [&] { return shadow_sft(sft, assembled, Wp); });

  out.certificate = final_cert;
  std::vector<SymbolicPoint> originals = po.points(-Wp, Wp);
  for (long long i = -Wp; i <= Wp; ++i)
    out.certificate.deviations[(std::size_t)(i + Wp)] =
        sft.distance(final_cert.orbit_point(i), originals[(std::size_t)(i + Wp)]);
  out.certificate.errors = po.errors(-Wp, Wp);
  out.certificate.forward_tail = {final_cert.forward_tail.coeff + c2.forward_tail.coeff,
                                  std::max(final_cert.forward_tail.rate, c2.forward_tail.rate)};
  out.certificate.backward_tail = {final_cert.backward_tail.coeff + c1.backward_tail.coeff,
                                   std::max(final_cert.backward_tail.rate, c1.backward_tail.rate)};
  out.certificate.verdict = Verdict::two_sided_limit_shadowed;
  return out;
}

}  // namespace shadowing
