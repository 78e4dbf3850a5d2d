#pragma once

#include "shadowing/certificate.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/sft.hpp"
#include "shadowing/shadow_linear.hpp"
#include "shadowing/shadow_sft.hpp"
#include "shadowing/specification.hpp"

namespace shadowing {

// Constants chosen while splicing the one-sided shadows through a two-point
// specification, kept for inspection: every gate the construction passes is
// recorded.
struct PipelineReport {
  double eps = 0.0;
  double delta = 0.0;       // delta-pseudo-orbits are eps-shadowed
  double delta_spec = 0.0;  // specification shadowing target (delta / Lipschitz)
  long long L = 0;          // spacing for delta_spec
  long long N = 0;          // 2N >= L and tail deviations < delta beyond N
};

template <class Point>
struct PipelineResult {
  ShadowCertificate<Point> certificate;
  PipelineReport report;
  Point p1{};  // shadows the backward tail
  Point p2{};  // shadows the forward tail
  Point z{};   // shadow of the two-point specification at -+N
};

// Two-sided limit shadowing via the splicing argument:
//   (1) one-sided shadows p1, p2 of the tails,
//   (2) constants delta and L for the requested eps,
//   (3) least N with 2N >= L and tail deviations below delta,
//   (4) shadow of the specification {-N} -> f^-N(p1), {N} -> f^N(p2),
//   (5) assembly of the delta-pseudo-orbit (p1-orbit, z-orbit, p2-orbit),
//   (6) final shadow of the assembled orbit, measured against the input.
// Any sub-step failure is rethrown as pipeline_failure naming the step.
//
// W = 0 uses max(po.window_radius(), 32).
PipelineResult<TorusPoint> two_sided_limit_shadow(const HyperbolicToralMap& map,
                                                  const PseudoOrbit<HyperbolicToralMap>& po,
                                                  double eps, long long W = 0);

PipelineResult<SymbolicPoint> two_sided_limit_shadow(const Sft& sft, const PseudoOrbit<Sft>& po,
                                                     double eps, long long W = 0);

}  // namespace shadowing
