#pragma once

#include <vector>

#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/sft.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// L-spaced family of anchored orbit segments. Each part holds the anchor
// point P(a); P(t) = f^(t-a)(anchor) for t in [a, b], so orbit coherence
// within a part holds by construction.
template <class Point>
struct Specification {
  struct Part {
    long long a = 0, b = 0;
    Point anchor{};  // P(a)
  };
  std::vector<Part> parts;

  static Specification single(long long t, Point p) { return {{Part{t, t, std::move(p)}}}; }
  static Specification two_point(long long t1, Point p1, long long t2, Point p2) {
    return {{Part{t1, t1, std::move(p1)}, Part{t2, t2, std::move(p2)}}};
  }

  void validate() const {
    require(!parts.empty(), errc::bad_parameter, "specification needs at least one interval");
    for (std::size_t k = 0; k < parts.size(); ++k) {
      require(parts[k].a <= parts[k].b, errc::bad_parameter, "interval must be ordered");
      if (k > 0)
        require(parts[k].a > parts[k - 1].b, errc::bad_parameter,
                "intervals must be strictly increasing");
    }
  }

  // least gap a_{k+1} - b_k between consecutive intervals
  long long min_gap() const {
    long long g = 1LL << 60;
    for (std::size_t k = 1; k < parts.size(); ++k)
      g = std::min(g, parts[k].a - parts[k - 1].b);
    return g;
  }
};

// leaf coordinates of the two-interval toral solve: the shadow satisfies
// z = q1 + s v_u = q2 + t v_s (mod Z^2) with q1, q2 the anchors pulled to
// time 0, so f^n(z) = f^n(q1) + s lambda_u^n v_u = f^n(q2) + t lambda_s^n v_s
struct LeafSolveDetail {
  double s = 0.0, t = 0.0;
  TorusPoint q1{}, q2{};
};

// Point whose orbit delta-tracks every anchored segment.
//
// Toral case (two intervals at most, which is all the limit-shadowing
// pipeline needs): the shadow lies on the intersection of the unstable leaf
// through the first anchor's orbit and the stable leaf through the second
// anchor's orbit, solved as a 2x2 linear system over lattice offsets with
// |components| <= 10; the offset minimizing the worse anchor deviation wins.
// Throws no_lattice_offset if no offset meets delta (never widened).
TorusPoint shadow_specification(const HyperbolicToralMap& map,
                                const Specification<TorusPoint>& spec, double delta,
                                LeafSolveDetail* detail = nullptr);

// SFT case (any number of intervals): concatenates the anchored words padded
// to the agreement radius, joining consecutive blocks with connecting paths,
// which exist because gaps >= mixing_time + 2 * radius.
SymbolicPoint shadow_specification(const Sft& sft, const Specification<SymbolicPoint>& spec,
                                   double delta);

}  // namespace shadowing
