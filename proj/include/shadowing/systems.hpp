#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "shadowing/linalg.hpp"
#include "shadowing/rng.hpp"

namespace shadowing {

// wraps into [0, 1)
inline double wrap_unit(double t) {
  double r = t - std::floor(t);
  return r < 1.0 ? r : 0.0;
}

// circle distance with wraparound, in [0, 1/2]
inline double circle_distance(double p, double q) {
  double d = std::fabs(wrap_unit(p) - wrap_unit(q));
  return d <= 0.5 ? d : 1.0 - d;
}

struct TorusPoint {
  double x = 0.0, y = 0.0;

  static TorusPoint normalized(double x, double y) { return {wrap_unit(x), wrap_unit(y)}; }
  Vec2 lift() const { return {x, y}; }
};

struct CirclePoint {
  double x = 0.0;

  static CirclePoint normalized(double x) { return {wrap_unit(x)}; }
};

// Invertible dynamics on a compact metric space with a computable metric
// and a deterministic perturbation rule (used by pseudo-orbit generators).
template <typename S>
concept DynamicalSystem = requires(const S& sys, const typename S::Point& p, long long k,
                                   double mag, RngStream& rng) {
  { sys.apply(p, k) } -> std::same_as<typename S::Point>;
  { sys.distance(p, p) } -> std::convertible_to<double>;
  { sys.perturb(p, mag, rng) } -> std::same_as<typename S::Point>;
  { sys.diameter() } -> std::convertible_to<double>;
  { sys.lipschitz() } -> std::convertible_to<double>;
  { sys.descriptor() } -> std::convertible_to<std::string>;
};

// Linear hyperbolic automorphism of the 2-torus given by an integer matrix
// with |det| = 1 and no eigenvalue on the unit circle. Iteration happens in
// the fundamental domain [0,1)^2; the matrix is integer so wrapping once per
// step is exact.
class HyperbolicToralMap {
 public:
  using Point = TorusPoint;

  // build_toral_system: validates unimodularity and hyperbolicity.
  // Only n = 2 is supported; larger matrices are rejected.
  static HyperbolicToralMap from_matrix(const std::vector<std::vector<long long>>& entries);
  static HyperbolicToralMap from_matrix(const Mat2i& m);
  static HyperbolicToralMap cat_map() { return from_matrix(Mat2i{2, 1, 1, 1}); }

  Point apply(const Point& p, long long k = 1) const;
  double distance(const Point& p, const Point& q) const;
  Point perturb(const Point& p, double magnitude, RngStream& rng) const;

  double diameter() const { return std::sqrt(0.5); }
  double lipschitz() const { return lipschitz_; }
  std::string descriptor() const;

  const Mat2i& matrix() const { return mat_; }
  const Mat2i& inverse_matrix() const { return inv_; }
  const HyperbolicEigen& eigen() const { return eig_; }
  double lambda_s() const { return eig_.lambda_s; }  // signed
  double lambda_u() const { return eig_.lambda_u; }  // signed
  double rate_s() const { return std::fabs(eig_.lambda_s); }
  double rate_u() const { return std::fabs(eig_.lambda_u); }
  Vec2 stable_dir() const { return eig_.v_s; }
  Vec2 unstable_dir() const { return eig_.v_u; }
  double expansivity_margin() const { return margin_; }

  // number of steps after which unit stable vectors have contracted below 1/2
  long long half_contraction_steps() const;

  // displacement from p to q, reduced to the minimal lattice representative
  static Vec2 minimal_displacement(const Point& p, const Point& q);

  bool operator==(const HyperbolicToralMap& o) const { return mat_ == o.mat_; }

 private:
  HyperbolicToralMap(Mat2i m, Mat2i inv, HyperbolicEigen eig);

  Mat2i mat_, inv_;
  HyperbolicEigen eig_;
  double lipschitz_ = 0, margin_ = 0;
};

// North-south diffeomorphism of the circle, f(x) = x + a sin(2 pi x) mod 1
// with 0 < a < 1/(2 pi): a repelling fixed point at 0 and an attracting one
// at 1/2. The canonical Morse-Smale example used by the negative results.
class NorthSouthCircleMap {
 public:
  using Point = CirclePoint;

  // build_north_south: rejects parameters outside (0, 1/(2 pi)).
  static NorthSouthCircleMap from_parameter(double a);

  Point apply(const Point& p, long long k = 1) const;
  double distance(const Point& p, const Point& q) const;
  Point perturb(const Point& p, double magnitude, RngStream& rng) const;

  double diameter() const { return 0.5; }
  double lipschitz() const { return 1.0 + 2.0 * pi() * a_; }
  std::string descriptor() const;

  double parameter() const { return a_; }
  double derivative(double x) const { return 1.0 + 2.0 * pi() * a_ * std::cos(2.0 * pi() * x); }
  Point source() const { return {0.0}; }
  Point sink() const { return {0.5}; }

  static constexpr double pi() { return 3.141592653589793238462643383279502884; }

 private:
  explicit NorthSouthCircleMap(double a) : a_(a) {}

  double step(double x) const;          // lift of f, one application
  double inverse_step(double t) const;  // monotone solve, deterministic

  double a_;
};

}  // namespace shadowing
