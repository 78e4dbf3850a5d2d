#pragma once

#include "shadowing/certificate.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// Which side of the pseudo-orbit the shadow must track. The one-sided modes
// realize limit / negative-limit shadowing by zeroing the opposite side's
// errors before solving.
enum class Side { both, forward, backward };

// Sequence-space shadow for a linear hyperbolic toral map. One-step errors
// are lifted to their minimal lattice representatives, split into stable and
// unstable components, and the correction series is summed: stable parts
// forward over past errors, unstable parts backward over future errors, with
// powers of the contracting blocks. The series converges for any bounded
// error sequence, so error amplitudes are unrestricted; the truncation after
// tail_terms terms is recorded in the certificate.
//
// tail_terms = 0 selects ceil(log(1e-14)/log(rate_s)).
ShadowCertificate<TorusPoint> shadow_linear(const HyperbolicToralMap& map,
                                            const PseudoOrbit<HyperbolicToralMap>& po,
                                            long long W, long long tail_terms = 0,
                                            Side side = Side::both);

// sup deviation / sup error gain of the series solution
double deviation_gain(const HyperbolicToralMap& map);

inline ShadowCertificate<TorusPoint> limit_shadow(const HyperbolicToralMap& map,
                                                  const PseudoOrbit<HyperbolicToralMap>& po,
                                                  long long W) {
  return shadow_linear(map, po, W, 0, Side::forward);
}

inline ShadowCertificate<TorusPoint> negative_limit_shadow(
    const HyperbolicToralMap& map, const PseudoOrbit<HyperbolicToralMap>& po, long long W) {
  return shadow_linear(map, po, W, 0, Side::backward);
}

}  // namespace shadowing
