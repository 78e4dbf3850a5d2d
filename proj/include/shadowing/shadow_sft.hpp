#pragma once

#include "shadowing/certificate.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/sft.hpp"
#include "shadowing/shadow_linear.hpp"

namespace shadowing {

// Shadow of a pseudo-orbit on a mixing SFT. Extracts the diagonal word
// y_i = (x_i)_0 over the window, extends it beyond the window with the
// symbols of the edge points, and repairs every forbidden transition with a
// connecting path of length mixing_time from the transition graph. The
// result is an admissible point (orbit_residual is exactly 0); deviations
// are exact powers of 2 from the agreement radii.
ShadowCertificate<SymbolicPoint> shadow_sft(const Sft& sft, const PseudoOrbit<Sft>& po,
                                            long long W, Side side = Side::both);

inline ShadowCertificate<SymbolicPoint> limit_shadow(const Sft& sft, const PseudoOrbit<Sft>& po,
                                                     long long W) {
  return shadow_sft(sft, po, W, Side::forward);
}

inline ShadowCertificate<SymbolicPoint> negative_limit_shadow(const Sft& sft,
                                                              const PseudoOrbit<Sft>& po,
                                                              long long W) {
  return shadow_sft(sft, po, W, Side::backward);
}

}  // namespace shadowing
