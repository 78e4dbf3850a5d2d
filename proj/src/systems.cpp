#include "shadowing/systems.hpp"

#include <cmath>
#include <sstream>

namespace shadowing {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_unimodular: return "NotUnimodular";
    case errc::not_hyperbolic: return "NotHyperbolic";
    case errc::unsupported_dimension: return "UnsupportedDimension";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::dead_symbol: return "DeadSymbol";
    case errc::not_mixing: return "NotMixing";
    case errc::bad_parameter: return "BadParameter";
    case errc::bad_window: return "BadWindow";
    case errc::repair_overlap: return "RepairOverlap";
    case errc::spacing_too_small: return "SpacingTooSmall";
    case errc::no_lattice_offset: return "NoLatticeOffset";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::truncation_insufficient: return "TruncationInsufficient";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::bound_too_large: return "BoundTooLarge";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::pipeline_failure: return "PipelineFailure";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// HyperbolicToralMap
// ---------------------------------------------------------------------------

HyperbolicToralMap::HyperbolicToralMap(Mat2i m, Mat2i inv, HyperbolicEigen eig)
    : mat_(m), inv_(inv), eig_(eig) {
  lipschitz_ = spectral_norm(mat_.to_real());
  // conservative separation constant: pairs closer than this at all times
  // must coincide (validated by sampling in the analysis tests)
  margin_ = std::min(0.25, (rate_u() - 1.0) / (4.0 * eig_.condition));
}

HyperbolicToralMap HyperbolicToralMap::from_matrix(
    const std::vector<std::vector<long long>>& entries) {
  require(!entries.empty() && entries.size() == entries[0].size(), errc::bad_parameter,
          "matrix must be square");
  for (const auto& row : entries)
    require(row.size() == entries.size(), errc::bad_parameter, "matrix must be square");
  require(entries.size() == 2, errc::unsupported_dimension,
          "only 2x2 toral automorphisms are supported");
  return from_matrix(Mat2i{entries[0][0], entries[0][1], entries[1][0], entries[1][1]});
}

HyperbolicToralMap HyperbolicToralMap::from_matrix(const Mat2i& m) {
  std::int64_t dt = m.det();
  require(dt == 1 || dt == -1, errc::not_unimodular, "determinant must be +-1");
  HyperbolicEigen eig = hyperbolic_eigen(m);
  return HyperbolicToralMap(m, m.unimodular_inverse(), eig);
}

TorusPoint HyperbolicToralMap::apply(const Point& p, long long k) const {
  Vec2 v = p.lift();
  const Mat2i& step = k >= 0 ? mat_ : inv_;
  for (long long i = 0, n = k >= 0 ? k : -k; i < n; ++i) {
    v = step.apply(v);
    v = {wrap_unit(v.x), wrap_unit(v.y)};
  }
  return {v.x, v.y};
}

Vec2 HyperbolicToralMap::minimal_displacement(const Point& p, const Point& q) {
  Vec2 d = q.lift() - p.lift();
  return {d.x - std::nearbyint(d.x), d.y - std::nearbyint(d.y)};
}

double HyperbolicToralMap::distance(const Point& p, const Point& q) const {
  return minimal_displacement(p, q).norm();
}

TorusPoint HyperbolicToralMap::perturb(const Point& p, double magnitude, RngStream& rng) const {
  if (magnitude <= 0.0) return p;
  // radius slightly inside the budget so measured errors never exceed the
  // schedule even after rounding
  double radius = rng.next_in(0.0, magnitude * (1.0 - 1e-9));
  double theta = rng.next_in(0.0, 2.0 * NorthSouthCircleMap::pi());
  return TorusPoint::normalized(p.x + radius * std::cos(theta), p.y + radius * std::sin(theta));
}

long long HyperbolicToralMap::half_contraction_steps() const {
  return (long long)std::ceil(std::log(0.5) / std::log(rate_s()));
}

std::string HyperbolicToralMap::descriptor() const {
  if (mat_ == Mat2i{2, 1, 1, 1}) return "cat";
  std::ostringstream os;
  os << "toral:" << mat_.a << "," << mat_.b << "," << mat_.c << "," << mat_.d;
  return os.str();
}

// ---------------------------------------------------------------------------
// NorthSouthCircleMap
// ---------------------------------------------------------------------------

NorthSouthCircleMap NorthSouthCircleMap::from_parameter(double a) {
  require(a > 0.0 && a < 1.0 / (2.0 * pi()), errc::bad_parameter,
          "parameter must lie in (0, 1/(2 pi))");
  return NorthSouthCircleMap(a);
}

double NorthSouthCircleMap::step(double x) const { return x + a_ * std::sin(2.0 * pi() * x); }

double NorthSouthCircleMap::inverse_step(double t) const {
  // solve z + a sin(2 pi z) = t on the lift; the map is strictly increasing
  // so bisection on [t - a, t + a] is exact to roundoff and deterministic
  double lo = t - a_, hi = t + a_;
  for (int iter = 0; iter < 120 && hi - lo > 0.0; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (step(mid) < t)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  // two Newton polish steps; derivative is bounded away from 0
  for (int i = 0; i < 2; ++i) z -= (step(z) - t) / derivative(z);
  return z;
}

CirclePoint NorthSouthCircleMap::apply(const Point& p, long long k) const {
  double x = p.x;
  if (k >= 0) {
    for (long long i = 0; i < k; ++i) x = wrap_unit(step(x));
  } else {
    for (long long i = 0; i < -k; ++i) x = wrap_unit(inverse_step(x));
  }
  return {x};
}

double NorthSouthCircleMap::distance(const Point& p, const Point& q) const {
  return circle_distance(p.x, q.x);
}

CirclePoint NorthSouthCircleMap::perturb(const Point& p, double magnitude, RngStream& rng) const {
  if (magnitude <= 0.0) return p;
  double radius = rng.next_in(0.0, magnitude * (1.0 - 1e-9));
  double dir = rng.next_bool() ? 1.0 : -1.0;
  return CirclePoint::normalized(p.x + dir * radius);
}

std::string NorthSouthCircleMap::descriptor() const {
  std::ostringstream os;
  os << "northsouth:" << a_;
  return os.str();
}

}  // namespace shadowing
