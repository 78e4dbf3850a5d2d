#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "shadowing/errors.hpp"
#include "shadowing/rng.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// Per-step error budget for generated pseudo-orbits. The one-sided kinds
// decay in one time direction and stay at the full amplitude in the other.
enum class ScheduleKind {
  constant,         // C
  inverse_linear,   // C / (1 + |i|)
  inverse_square,   // C / (1 + i^2)
  forward_decay,    // C / (1 + max(0, i))
  backward_decay,   // C / (1 + max(0, -i))
};

const char* schedule_kind_name(ScheduleKind k);
ScheduleKind schedule_kind_from_name(const std::string& name);

struct ErrorSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double amplitude = 0.0;

  double at(long long i) const {
    switch (kind) {
      case ScheduleKind::constant: return amplitude;
      case ScheduleKind::inverse_linear: return amplitude / double(1 + std::llabs(i));
      case ScheduleKind::inverse_square: return amplitude / double(1 + i * i);
      case ScheduleKind::forward_decay: return amplitude / double(1 + std::max(0LL, i));
      case ScheduleKind::backward_decay: return amplitude / double(1 + std::max(0LL, -i));
    }
    return amplitude;
  }

  // sup of the schedule over i >= from (resp. i <= -from); the kinds above
  // are monotone on each side so this is an endpoint evaluation
  double sup_forward(long long from) const {
    return kind == ScheduleKind::backward_decay ? amplitude : at(std::max(from, 0LL));
  }
  double sup_backward(long long from) const {
    return kind == ScheduleKind::forward_decay ? amplitude : at(-std::max(from, 0LL));
  }

  bool vanishes_forward() const {
    return amplitude == 0.0 ||
           (kind != ScheduleKind::constant && kind != ScheduleKind::backward_decay);
  }
  bool vanishes_backward() const {
    return amplitude == 0.0 ||
           (kind != ScheduleKind::constant && kind != ScheduleKind::forward_decay);
  }
};

// How a pseudo-orbit continues beyond its materialized window: either the
// exact orbit of the window edge point (errors identically zero), or the
// deterministic scheduled-perturbation recipe keyed by (seed, index).
struct TailSpec {
  enum class Kind { exact_orbit, scheduled };
  Kind kind = Kind::exact_orbit;
  ErrorSchedule schedule;
  std::uint64_t seed = 0;

  bool exact() const { return kind == Kind::exact_orbit; }
  static TailSpec exact_orbit() { return {}; }
  static TailSpec scheduled(const ErrorSchedule& s, std::uint64_t seed) {
    return {Kind::scheduled, s, seed};
  }
};

// A two-sided pseudo-orbit: points x_i for every integer i, materialized on
// the window [-W, W] and extended deterministically by the tail specs.
// Immutable; retrieval is pure.
template <DynamicalSystem S>
class PseudoOrbit {
 public:
  using Point = typename S::Point;

  PseudoOrbit(S system, std::vector<Point> window, TailSpec left, TailSpec right)
      : system_(std::move(system)), window_(std::move(window)), left_(left), right_(right) {
    require(window_.size() % 2 == 1 && window_.size() >= 3, errc::bad_window,
            "window must hold points for [-W, W] with W >= 1");
    W_ = (long long)(window_.size() / 2);
  }

  const S& system() const { return system_; }
  long long window_radius() const { return W_; }
  const TailSpec& left_tail() const { return left_; }
  const TailSpec& right_tail() const { return right_; }

  Point point(long long i) const {
    if (i >= -W_ && i <= W_) return window_[(std::size_t)(i + W_)];
    std::vector<Point> pts = points(i, i);
    return pts.front();
  }

  // bulk retrieval of x_lo..x_hi; tails are walked once
  std::vector<Point> points(long long lo, long long hi) const {
    require(lo <= hi, errc::bad_parameter, "empty range");
    std::vector<Point> out;
    out.reserve((std::size_t)(hi - lo + 1));
    // left extension, built outward then reversed into place
    if (lo < -W_) {
      std::vector<Point> left_part;
      Point cur = window_.front();
      for (long long j = -W_; j > lo; --j) {
        cur = step_backward(cur, j);
        if (j - 1 <= hi) left_part.push_back(cur);
      }
      std::reverse(left_part.begin(), left_part.end());
      out.insert(out.end(), left_part.begin(), left_part.end());
    }
    for (long long i = std::max(lo, -W_); i <= std::min(hi, W_); ++i)
      out.push_back(window_[(std::size_t)(i + W_)]);
    if (hi > W_) {
      Point cur = window_.back();
      for (long long j = W_; j < hi; ++j) {
        cur = step_forward(cur, j);
        if (j + 1 >= lo) out.push_back(cur);
      }
    }
    return out;
  }

  // e_i = d(f(x_i), x_{i+1}) for i in [lo, hi]
  std::vector<double> errors(long long lo, long long hi) const {
    std::vector<Point> pts = points(lo, hi + 1);
    std::vector<double> out;
    out.reserve((std::size_t)(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) {
      const Point& a = pts[(std::size_t)(i - lo)];
      const Point& b = pts[(std::size_t)(i - lo + 1)];
      out.push_back(system_.distance(system_.apply(a, 1), b));
    }
    return out;
  }

  double error_at(long long i) const { return errors(i, i).front(); }

  // window mutation (used to inject large mid-window errors); tails keep
  // extending from the possibly-new edge points
  PseudoOrbit with_point(long long i, Point p) const {
    require(i >= -W_ && i <= W_, errc::bad_parameter, "index outside window");
    std::vector<Point> w = window_;
    w[(std::size_t)(i + W_)] = std::move(p);
    return PseudoOrbit(system_, std::move(w), left_, right_);
  }

 private:
  // x_{j+1} from x_j for j >= W
  Point step_forward(const Point& x, long long j) const {
    Point image = system_.apply(x, 1);
    if (right_.exact()) return image;
    RngStream rng = stream_for_index(right_.seed, j);
    return system_.perturb(image, right_.schedule.at(j), rng);
  }
  // x_{j-1} from x_j for j <= -W; the perturbation is applied before the
  // inverse step so the measured error lands exactly at index j-1
  Point step_backward(const Point& x, long long j) const {
    if (left_.exact()) return system_.apply(x, -1);
    RngStream rng = stream_for_index(left_.seed, j - 1);
    Point target = system_.perturb(x, left_.schedule.at(j - 1), rng);
    return system_.apply(target, -1);
  }

  S system_;
  std::vector<Point> window_;
  long long W_ = 0;
  TailSpec left_, right_;
};

// The orbit-splice construction: past orbit of `past`, future orbit of
// `future`, single defect at time 0 of size d(f(past), f(future)).
template <DynamicalSystem S>
PseudoOrbit<S> splice_orbits(const S& sys, const typename S::Point& past,
                             const typename S::Point& future) {
  std::vector<typename S::Point> window{sys.apply(past, -1), past, sys.apply(future, 1)};
  return PseudoOrbit<S>(sys, std::move(window), TailSpec::exact_orbit(), TailSpec::exact_orbit());
}

// Scheduled pseudo-orbit seeded at x_0 = seed_point. Perturbation draws are
// keyed by (rng_seed, index), so the same arguments reproduce the same
// orbit bitwise, and the tails continue the identical recipe beyond W.
template <DynamicalSystem S>
PseudoOrbit<S> generate_pseudo_orbit(const S& sys, const typename S::Point& seed_point,
                                     const ErrorSchedule& schedule, long long W,
                                     std::uint64_t rng_seed) {
  require(W >= 1, errc::bad_window, "window radius must be at least 1");
  std::vector<typename S::Point> window((std::size_t)(2 * W + 1));
  window[(std::size_t)W] = seed_point;
  for (long long i = 0; i < W; ++i) {
    RngStream rng = stream_for_index(rng_seed, i);
    window[(std::size_t)(W + i + 1)] =
        sys.perturb(sys.apply(window[(std::size_t)(W + i)], 1), schedule.at(i), rng);
  }
  for (long long i = 0; i > -W; --i) {
    RngStream rng = stream_for_index(rng_seed, i - 1);
    typename S::Point target =
        sys.perturb(window[(std::size_t)(W + i)], schedule.at(i - 1), rng);
    window[(std::size_t)(W + i - 1)] = sys.apply(target, -1);
  }
  TailSpec tail = TailSpec::scheduled(schedule, rng_seed);
  return PseudoOrbit<S>(sys, std::move(window), tail, tail);
}

template <DynamicalSystem S>
std::vector<double> error_sequence(const PseudoOrbit<S>& po, long long lo, long long hi) {
  require(lo <= hi, errc::bad_parameter, "lo must not exceed hi");
  return po.errors(lo, hi);
}

// Decay verdict for one tail direction. Membership in the limit classes is
// claimed only from tail descriptors (exact orbit, or a schedule bound that
// vanishes); sampled envelopes yield the empirical verdicts.
enum class TailVerdict { decays_certain, decays_empirical, no_decay };

struct Classification {
  double sup_error = 0.0;  // candidate delta: the orbit is a delta-PO for every delta > sup_error
  TailVerdict forward = TailVerdict::no_decay;
  TailVerdict backward = TailVerdict::no_decay;
  bool forward_conclusive = false;
  bool backward_conclusive = false;
  // proven memberships
  bool limit = false;
  bool negative_limit = false;
  bool two_sided_limit = false;
};

template <DynamicalSystem S>
Classification classify(const PseudoOrbit<S>& po, long long probe_depth, double tolerance_fit) {
  require(probe_depth >= po.window_radius(), errc::bad_parameter,
          "probe depth must cover the window");
  std::vector<double> errs = po.errors(-probe_depth, probe_depth);
  Classification out;
  for (double e : errs) out.sup_error = std::max(out.sup_error, e);

  auto side = [&](const TailSpec& tail, bool forward) {
    TailVerdict verdict;
    bool conclusive;
    if (tail.exact()) {
      verdict = TailVerdict::decays_certain;  // errors are identically 0 in the tail
      conclusive = true;
    } else {
      double beyond = forward ? tail.schedule.sup_forward(probe_depth)
                              : tail.schedule.sup_backward(probe_depth);
      out.sup_error = std::max(out.sup_error, beyond);
      bool vanishes = forward ? tail.schedule.vanishes_forward()
                              : tail.schedule.vanishes_backward();
      if (vanishes) {
        verdict = TailVerdict::decays_certain;
        conclusive = true;
      } else {
        // schedule bound does not vanish; report the sampled envelope only
        double outer = 0.0;
        long long from = std::max(probe_depth / 2, 1LL);
        for (long long i = from; i <= probe_depth; ++i)
          outer = std::max(outer, errs[(std::size_t)((forward ? i : -i) + probe_depth)]);
        verdict = outer <= tolerance_fit ? TailVerdict::decays_empirical : TailVerdict::no_decay;
        conclusive = false;
      }
    }
    return std::pair(verdict, conclusive);
  };

  std::tie(out.forward, out.forward_conclusive) = side(po.right_tail(), true);
  std::tie(out.backward, out.backward_conclusive) = side(po.left_tail(), false);
  out.limit = out.forward == TailVerdict::decays_certain && out.forward_conclusive;
  out.negative_limit = out.backward == TailVerdict::decays_certain && out.backward_conclusive;
  out.two_sided_limit = out.limit && out.negative_limit;
  return out;
}

}  // namespace shadowing
