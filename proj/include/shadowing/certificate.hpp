#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "shadowing/errors.hpp"

namespace shadowing {

enum class Verdict {
  two_sided_limit_shadowed,
  limit_shadowed,
  negative_limit_shadowed,
  eps_shadowed,
};

const char* verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

// deviation(edge + k) <= coeff * rate^k, k >= 0
struct TailBound {
  double coeff = 0.0;
  double rate = 1.0;

  double at(long long k) const { return coeff * std::pow(rate, double(k)); }
};

// Witness that a pseudo-orbit is shadowed: a shadow point together with the
// reconstructed true orbit on the window, measured deviations, and bounds on
// the deviations beyond the window. The reconstructed orbit is validated by
// orbit_residual (max one-step defect), which solvers keep below 1e-9.
template <class Point>
struct ShadowCertificate {
  Point shadow_point{};
  long long window = 0;
  std::vector<Point> orbit;        // y_i for i in [-window, window]
  std::vector<double> deviations;  // d(y_i, x_i) for i in [-window, window]
  std::vector<double> errors;      // input errors e_i over the same range
  TailBound forward_tail, backward_tail;
  double orbit_residual = 0.0;
  double truncation_bound = 0.0;  // recorded series truncation (linear solver)
  Verdict verdict = Verdict::eps_shadowed;
  double eps = 0.0;                // bound claimed by eps_shadowed
  std::string note;                // e.g. verdict downgrade reason

  double deviation_at(long long i) const { return deviations[(std::size_t)(i + window)]; }
  const Point& orbit_point(long long i) const { return orbit[(std::size_t)(i + window)]; }

  double max_deviation() const {
    double m = 0.0;
    for (double d : deviations) m = std::max(m, d);
    return m;
  }

  // max deviation over k <= |i| <= window
  double envelope(long long k) const {
    double m = 0.0;
    for (long long i = k; i <= window; ++i)
      m = std::max({m, deviation_at(i), deviation_at(-i)});
    return m;
  }
};

// Exhaustive refutation: every candidate on a covering grid of the space
// violates eps-closeness somewhere in the window. The refutation is at grid
// resolution: a true point within grid_step/2 of candidate c satisfies
// d(f^n(z), x_n) >= violation(c) - slack at the recorded index, where slack
// accounts for one application of the derivative bound.
struct NonShadowCertificate {
  double eps = 0.0;
  long long window = 0;
  double grid_step = 0.0;
  double slack = 0.0;  // lipschitz * grid_step / 2
  std::size_t candidate_count = 0;
  std::vector<long long> violation_index;  // per candidate, grid order
  std::vector<double> violation_magnitude;
};

template <class Point>
struct SurvivingCandidate {
  Point point{};
  double max_deviation = 0.0;
};

template <class Point>
using CertifyResult = std::variant<NonShadowCertificate, SurvivingCandidate<Point>>;

}  // namespace shadowing
