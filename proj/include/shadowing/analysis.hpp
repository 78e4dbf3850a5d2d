#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shadowing/sft.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// ---------------------------------------------------------------------------
// expansiveness and the shadowing/specification constants
// ---------------------------------------------------------------------------

struct NotExpansive {
  std::string reason;
};
using ExpansivityResult = std::variant<double, NotExpansive>;

// SFT: 1/2 (any distance below 1 at every shift pins every symbol).
// Toral: conservative closed form min(1/4, (rate_u - 1)/(4 cond)).
// North-south: NotExpansive; no circle homeomorphism is expansive.
ExpansivityResult expansivity_constant(const Sft& sft);
ExpansivityResult expansivity_constant(const HyperbolicToralMap& map);
ExpansivityResult expansivity_constant(const NorthSouthCircleMap& map);

// L such that every L-spaced specification is eps-shadowed.
// SFT: mixing_time + 2 ceil(log2(1/eps)), 0 < eps < 1.
long long specification_spacing(const Sft& sft, double eps);
// Toral: 2N with N large enough that the leaf-intersection coordinates,
// bounded a priori by the lattice search, contract below eps at time -+N.
long long specification_spacing(const HyperbolicToralMap& map, double eps);

// delta such that every delta-pseudo-orbit is eps-shadowed by the
// corresponding solver.
double shadowing_delta(const Sft& sft, double eps);
double shadowing_delta(const HyperbolicToralMap& map, double eps);

// ---------------------------------------------------------------------------
// stable/unstable sets and their intersections
// ---------------------------------------------------------------------------

struct EmptyWitness {
  std::string justification;
};

template <class Point>
using IntersectionResult = std::variant<Point, EmptyWitness>;

// A point of W^s(x) and W^u(y) simultaneously.
// Toral: affine 2x2 solve over lattice offsets (|components| <= 10),
// returning the solution with the smallest leaf coordinates.
IntersectionResult<TorusPoint> stable_unstable_intersection(const HyperbolicToralMap& map,
                                                            const TorusPoint& x,
                                                            const TorusPoint& y);
// SFT: splice taking y's symbols on i <= 0 and x's symbols on i >= mixing
// with a connecting path between.
IntersectionResult<SymbolicPoint> stable_unstable_intersection(const Sft& sft,
                                                               const SymbolicPoint& x,
                                                               const SymbolicPoint& y);
// North-south: monotone orbit classification; empty exactly when x is the
// source and y is the sink.
IntersectionResult<CirclePoint> stable_unstable_intersection(const NorthSouthCircleMap& map,
                                                             const CirclePoint& x,
                                                             const CirclePoint& y);

// ---------------------------------------------------------------------------
// periodic points
// ---------------------------------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;  // positive, reduced

  static Rational reduced(long long num, long long den);
  double value() const { return double(num) / double(den); }
  bool operator==(const Rational&) const = default;
};

template <class Point>
struct PeriodicPointRecord {
  Point point{};
  long long period = 1;       // minimal
  std::optional<int> index;   // stable dimension; empty for SFTs
  bool hyperbolic = true;
  std::optional<std::array<Rational, 2>> exact;  // toral points, exact
};

// Toral: solves (A^n - I) x in Z^2 in exact rational arithmetic for every
// n <= period_bound; counts match |det(A^n - I)|. Throws bound_too_large
// when the lattice enumeration exceeds the budget.
std::vector<PeriodicPointRecord<TorusPoint>> periodic_points(const HyperbolicToralMap& map,
                                                             long long period_bound,
                                                             long long budget = 4'000'000);
// SFT: enumerates closed words of length <= period_bound; counts match
// trace(T^n).
std::vector<PeriodicPointRecord<SymbolicPoint>> periodic_points(const Sft& sft,
                                                                long long period_bound,
                                                                long long budget = 4'000'000);

// ---------------------------------------------------------------------------
// heteroclinic relation
// ---------------------------------------------------------------------------

template <class Point>
struct HeteroclinicRelation {
  bool related = false;
  std::optional<int> index_p, index_q;
  bool indices_equal = false;  // vacuously true when indices are n/a
  std::optional<Point> witness_pq;  // W^s(O(p)) cap W^u(O(q))
  std::optional<Point> witness_qp;  // W^u(O(p)) cap W^s(O(q))
  std::string empty_reason;
};

template <DynamicalSystem S>
HeteroclinicRelation<typename S::Point> heteroclinic_relate(
    const S& sys, const PeriodicPointRecord<typename S::Point>& p,
    const PeriodicPointRecord<typename S::Point>& q) {
  HeteroclinicRelation<typename S::Point> rel;
  rel.index_p = p.index;
  rel.index_q = q.index;
  auto try_orbits = [&](const PeriodicPointRecord<typename S::Point>& a,
                        const PeriodicPointRecord<typename S::Point>& b)
      -> IntersectionResult<typename S::Point> {
    IntersectionResult<typename S::Point> last = EmptyWitness{"no orbit representatives"};
    for (long long i = 0; i < a.period; ++i)
      for (long long j = 0; j < b.period; ++j) {
        last = stable_unstable_intersection(sys, sys.apply(a.point, i), sys.apply(b.point, j));
        if (std::holds_alternative<typename S::Point>(last)) return last;
      }
    return last;
  };
  auto pq = try_orbits(p, q);
  auto qp = try_orbits(q, p);
  if (auto* w = std::get_if<typename S::Point>(&pq)) rel.witness_pq = *w;
  if (auto* w = std::get_if<typename S::Point>(&qp)) rel.witness_qp = *w;
  rel.related = rel.witness_pq.has_value() && rel.witness_qp.has_value();
  if (auto* e = std::get_if<EmptyWitness>(&pq)) rel.empty_reason = e->justification;
  if (auto* e = std::get_if<EmptyWitness>(&qp); e && rel.empty_reason.empty())
    rel.empty_reason = e->justification;
  rel.indices_equal = (!p.index && !q.index) || (p.index && q.index && *p.index == *q.index);
  return rel;
}

// ---------------------------------------------------------------------------
// attracting / repelling sets
// ---------------------------------------------------------------------------

struct Arc {
  double lo = 0, hi = 0;  // plain sub-interval of [0, 1), no wraparound
};
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

template <class Region, class Point>
struct InvariantSetReport {
  Region region{};
  bool trapped = false;
  double margin = 0.0;  // boundary clearance of the image, >= resolution when trapped
  std::vector<Point> attained;  // limit cloud at the declared resolution
  bool proper = false;          // provably a proper subset of the space
  bool invariant_at_resolution = false;
  double resolution = 0.0;
};

std::vector<InvariantSetReport<Arc, CirclePoint>> find_attracting_set(
    const NorthSouthCircleMap& map, const std::vector<Arc>& candidates, double resolution,
    long long max_iters, bool repelling = false);

std::vector<InvariantSetReport<Rect, TorusPoint>> find_attracting_set(
    const HyperbolicToralMap& map, const std::vector<Rect>& candidates, double resolution,
    long long max_iters, bool repelling = false);

}  // namespace shadowing
