#include "shadowing/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "shadowing/shadow_linear.hpp"

namespace shadowing {

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

ExpansivityResult expansivity_constant(const Sft&) { return 0.5; }

ExpansivityResult expansivity_constant(const HyperbolicToralMap& map) {
  return map.expansivity_margin();
}

ExpansivityResult expansivity_constant(const NorthSouthCircleMap&) {
  return NotExpansive{"no circle homeomorphism is expansive"};
}

long long specification_spacing(const Sft& sft, double eps) {
  require(eps > 0.0 && eps < 1.0, errc::bad_parameter, "eps must lie in (0, 1)");
  require(sft.mixing_time().has_value(), errc::not_mixing, "shift is not mixing");
  return *sft.mixing_time() + 2 * (long long)std::ceil(std::log2(1.0 / eps));
}

long long specification_spacing(const HyperbolicToralMap& map, double eps) {
  require(eps > 0.0, errc::bad_parameter, "eps must be positive");
  const HyperbolicEigen& eig = map.eigen();
  Mat2 leaf = Mat2::from_columns(eig.v_u, eig.v_s * -1.0);
  // a priori bound on the leaf coordinates produced by the lattice search:
  // the best offset keeps the right-hand side within half a lattice cell
  const double coord_bound = spectral_norm(leaf.inverse()) * std::sqrt(0.5) + 1.0;
  const double lam = std::max(map.rate_s(), 1.0 / map.rate_u());
  long long n = (long long)std::ceil(std::log(coord_bound / eps) / std::log(1.0 / lam));
  return 2 * std::max(n, 1LL);
}

double shadowing_delta(const Sft& sft, double eps) {
  require(eps > 0.0, errc::bad_parameter, "eps must be positive");
  require(sft.mixing_time().has_value(), errc::not_mixing, "shift is not mixing");
  double e = std::min(eps, 0.5);
  return std::ldexp(1.0, -(int)(std::ceil(std::log2(1.0 / e)) + 1.0));
}

double shadowing_delta(const HyperbolicToralMap& map, double eps) {
  require(eps > 0.0, errc::bad_parameter, "eps must be positive");
  return eps / (2.0 * deviation_gain(map));
}

// ---------------------------------------------------------------------------
// stable/unstable intersections
// ---------------------------------------------------------------------------

IntersectionResult<TorusPoint> stable_unstable_intersection(const HyperbolicToralMap& map,
                                                            const TorusPoint& x,
                                                            const TorusPoint& y) {
  // z = x + t v_s = y + s v_u (mod Z^2); minimize the leaf coordinates
  const HyperbolicEigen& eig = map.eigen();
  Mat2 leaf = Mat2::from_columns(eig.v_s, eig.v_u * -1.0);
  Mat2 leaf_inv = leaf.inverse();
  Vec2 rhs0 = y.lift() - x.lift();
  double best = 1e300;
  Vec2 best_ts{};
  bool found = false;
  for (int mx = -10; mx <= 10; ++mx) {
    for (int my = -10; my <= 10; ++my) {
      Vec2 ts = leaf_inv * (rhs0 + Vec2{double(mx), double(my)});
      double worst = std::max(std::fabs(ts.x), std::fabs(ts.y));
      if (worst < best) {
        best = worst;
        best_ts = ts;
        found = true;
      }
    }
  }
  if (!found) return EmptyWitness{"bounded lattice search exhausted"};
  Vec2 z = x.lift() + eig.v_s * best_ts.x;
  return TorusPoint::normalized(z.x, z.y);
}

IntersectionResult<SymbolicPoint> stable_unstable_intersection(const Sft& sft,
                                                               const SymbolicPoint& x,
                                                               const SymbolicPoint& y) {
  require(sft.mixing_time().has_value(), errc::not_mixing,
          "splice construction requires a mixing SFT");
  const long long m = *sft.mixing_time();
  // y's symbols for i <= 0, x's symbols for i >= m, connecting path between
  std::vector<std::uint8_t> word((std::size_t)(m + 1));
  word.front() = (std::uint8_t)y.symbol(0);
  word.back() = (std::uint8_t)x.symbol(m);
  auto path = sft.connecting_path(word.front(), word.back(), m);
  for (long long j = 1; j < m; ++j) word[(std::size_t)j] = path[(std::size_t)j];
  SymbolicPoint z(0, std::move(word),
                  SymbolicPoint::AnchorTail{std::make_shared<const SymbolicPoint>(y), 0},
                  SymbolicPoint::AnchorTail{std::make_shared<const SymbolicPoint>(x), 0});
  return z;
}

IntersectionResult<CirclePoint> stable_unstable_intersection(const NorthSouthCircleMap& map,
                                                             const CirclePoint& x,
                                                             const CirclePoint& y) {
  // Monotone orbit classification: every forward orbit except the source's
  // converges to the sink, every backward orbit except the sink's converges
  // to the source. Hence W^s(source) = {source}, W^u(sink) = {sink}, and
  // W^s(x), W^u(y) are the complements of source resp. sink otherwise.
  const double tol = 1e-12;
  const bool x_is_source = map.distance(x, map.source()) <= tol;
  const bool y_is_sink = map.distance(y, map.sink()) <= tol;
  if (x_is_source && y_is_sink)
    return EmptyWitness{
        "W^s(source) = {source} and W^u(sink) = {sink} are disjoint singletons"};
  if (x_is_source) return map.source();
  if (y_is_sink) return map.sink();
  if (map.distance(x, map.sink()) > tol) return x;  // x avoids both fixed points
  return CirclePoint{0.25};
}

// ---------------------------------------------------------------------------
// periodic points
// ---------------------------------------------------------------------------

Rational Rational::reduced(long long num, long long den) {
  require(den != 0, errc::bad_parameter, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

namespace {

long long positive_mod_ll(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

// exact image of a rational torus point under the integer matrix, mod 1
std::array<Rational, 2> apply_exact(const Mat2i& m, const std::array<Rational, 2>& p) {
  long long den = std::lcm(p[0].den, p[1].den);
  long long ax = p[0].num * (den / p[0].den);
  long long ay = p[1].num * (den / p[1].den);
  long long nx = positive_mod_ll(m.a * ax + m.b * ay, den);
  long long ny = positive_mod_ll(m.c * ax + m.d * ay, den);
  return {Rational::reduced(nx, den), Rational::reduced(ny, den)};
}

}  // namespace

std::vector<PeriodicPointRecord<TorusPoint>> periodic_points(const HyperbolicToralMap& map,
                                                             long long period_bound,
                                                             long long budget) {
  require(period_bound >= 1, errc::bad_parameter, "period bound must be at least 1");
  std::vector<PeriodicPointRecord<TorusPoint>> out;
  std::map<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>, bool>
      seen;
  long long work = 0;
  Mat2i pw = Mat2i::identity();
  for (long long n = 1; n <= period_bound; ++n) {
    pw = pw * map.matrix();
    require(std::max({std::llabs(pw.a), std::llabs(pw.b), std::llabs(pw.c), std::llabs(pw.d)}) <
                (1LL << 30),
            errc::bound_too_large, "matrix powers overflow the exact enumeration");
    Mat2i M{pw.a - 1, pw.b, pw.c, pw.d - 1};
    long long D = M.det();
    require(D != 0, errc::not_hyperbolic, "A^n has eigenvalue 1");
    // x = adj(M) m / D must land in [0,1)^2; enumerate the integer box
    Mat2i adj{M.d, -M.b, -M.c, M.a};
    long long bx = std::llabs(M.a) + std::llabs(M.b);
    long long by = std::llabs(M.c) + std::llabs(M.d);
    work += (2 * bx + 1) * (2 * by + 1);
    require(work <= budget, errc::bound_too_large, "lattice enumeration exceeds budget");
    for (long long mx = -bx; mx <= bx; ++mx) {
      for (long long my = -by; my <= by; ++my) {
        long long px = adj.a * mx + adj.b * my;
        long long py = adj.c * mx + adj.d * my;
        // inside [0,1)^2 iff 0 <= p/D < 1 componentwise
        long long Dp = D > 0 ? D : -D;
        long long sx = D > 0 ? px : -px;
        long long sy = D > 0 ? py : -py;
        if (sx < 0 || sx >= Dp || sy < 0 || sy >= Dp) continue;
        Rational rx = Rational::reduced(sx, Dp);
        Rational ry = Rational::reduced(sy, Dp);
        auto key = std::pair(std::pair(rx.num, rx.den), std::pair(ry.num, ry.den));
        if (seen.contains(key)) continue;
        seen[key] = true;
        // exact return check: n applications of the matrix fix the point
        std::array<Rational, 2> orbit{rx, ry};
        for (long long s = 0; s < n; ++s) orbit = apply_exact(map.matrix(), orbit);
        require(orbit[0] == rx && orbit[1] == ry, errc::bound_too_large,
                "internal: enumerated point fails the exact return check");
        PeriodicPointRecord<TorusPoint> rec;
        rec.point = TorusPoint{rx.value(), ry.value()};
        rec.period = n;  // first n at which the point appears is its minimal period
        rec.index = 1;   // one contracted direction for any hyperbolic A on T^2
        rec.hyperbolic = true;
        rec.exact = std::array<Rational, 2>{rx, ry};
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<PeriodicPointRecord<SymbolicPoint>> periodic_points(const Sft& sft,
                                                                long long period_bound,
                                                                long long budget) {
  require(period_bound >= 1, errc::bad_parameter, "period bound must be at least 1");
  std::vector<PeriodicPointRecord<SymbolicPoint>> out;
  std::map<std::vector<std::uint8_t>, bool> seen;  // minimal-period word, phase-sensitive
  long long work = 0;
  for (long long n = 1; n <= period_bound; ++n) {
    std::vector<std::uint8_t> word((std::size_t)n);
    // depth-first enumeration of closed admissible words of length n
    auto rec_enum = [&](auto&& self, long long depth) -> void {
      if (++work > budget) fail(errc::bound_too_large, "cycle enumeration exceeds budget");
      if (depth == n) {
        if (!sft.allowed(word[(std::size_t)(n - 1)], word[0])) return;
        // minimal period = least divisor d with word d-periodic
        long long minimal = n;
        for (long long d = 1; d < n; ++d) {
          if (n % d != 0) continue;
          bool periodic = true;
          for (long long i = d; i < n && periodic; ++i)
            periodic = word[(std::size_t)i] == word[(std::size_t)(i - d)];
          if (periodic) {
            minimal = d;
            break;
          }
        }
        if (minimal != n) return;  // already seen at its minimal length
        if (seen.contains(word)) return;
        seen[word] = true;
        PeriodicPointRecord<SymbolicPoint> rec;
        rec.point = SymbolicPoint::periodic(word);
        rec.period = minimal;
        rec.index = std::nullopt;  // index is a smooth-category notion
        rec.hyperbolic = true;
        out.push_back(std::move(rec));
        return;
      }
      for (int c = 0; c < sft.alphabet_size(); ++c) {
        if (depth > 0 && !sft.allowed(word[(std::size_t)(depth - 1)], c)) continue;
        word[(std::size_t)depth] = (std::uint8_t)c;
        self(self, depth + 1);
      }
    };
    rec_enum(rec_enum, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// attracting / repelling sets
// ---------------------------------------------------------------------------

namespace {

template <class Point, class System>
bool cloud_invariant(const System& sys, const std::vector<Point>& cloud, double resolution,
                     long long dir) {
  for (const Point& p : cloud) {
    Point image = sys.apply(p, dir);
    bool near = false;
    for (const Point& q : cloud)
      if (sys.distance(image, q) <= resolution) {
        near = true;
        break;
      }
    if (!near) return false;
  }
  return true;
}

}  // namespace

std::vector<InvariantSetReport<Arc, CirclePoint>> find_attracting_set(
    const NorthSouthCircleMap& map, const std::vector<Arc>& candidates, double resolution,
    long long max_iters, bool repelling) {
  require(resolution > 0.0, errc::bad_parameter, "resolution must be positive");
  const long long dir = repelling ? -1 : 1;
  std::vector<InvariantSetReport<Arc, CirclePoint>> reports;
  for (const Arc& arc : candidates) {
    InvariantSetReport<Arc, CirclePoint> rep;
    rep.region = arc;
    rep.resolution = resolution;
    if (!(arc.lo >= 0.0 && arc.lo < arc.hi && arc.hi <= 1.0)) {
      reports.push_back(std::move(rep));
      continue;
    }
    // monotone map: the image of the arc is the arc between the endpoint
    // images, so the trap test is an endpoint evaluation
    double fl = map.apply(CirclePoint{arc.lo}, dir).x;
    double fh = map.apply(CirclePoint{arc.hi}, dir).x;
    auto inside = [&](double v) { return v > arc.lo && v < arc.hi; };
    if (inside(fl) && inside(fh)) {
      rep.margin = std::min({fl - arc.lo, arc.hi - fl, fh - arc.lo, arc.hi - fh});
      rep.trapped = rep.margin >= resolution;
    }
    if (rep.trapped) {
      long long steps = std::max(1LL, (long long)std::floor((arc.hi - arc.lo) / resolution));
      std::vector<CirclePoint> cloud;
      for (long long k = 0; k <= steps; ++k) {
        CirclePoint p{arc.lo + (arc.hi - arc.lo) * double(k) / double(steps)};
        p = map.apply(p, dir * max_iters);
        bool dup = false;
        for (const CirclePoint& q : cloud)
          if (map.distance(p, q) <= resolution * 0.5) {
            dup = true;
            break;
          }
        if (!dup) cloud.push_back(p);
      }
      rep.attained = std::move(cloud);
      rep.proper = (double)rep.attained.size() * resolution < 0.5;
      rep.invariant_at_resolution = cloud_invariant(map, rep.attained, resolution, dir);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<InvariantSetReport<Rect, TorusPoint>> find_attracting_set(
    const HyperbolicToralMap& map, const std::vector<Rect>& candidates, double resolution,
    long long max_iters, bool repelling) {
  require(resolution > 0.0, errc::bad_parameter, "resolution must be positive");
  const long long dir = repelling ? -1 : 1;
  std::vector<InvariantSetReport<Rect, TorusPoint>> reports;
  for (const Rect& r : candidates) {
    InvariantSetReport<Rect, TorusPoint> rep;
    rep.region = r;
    rep.resolution = resolution;
    if (!(r.x0 >= 0.0 && r.x0 < r.x1 && r.x1 <= 1.0 && r.y0 >= 0.0 && r.y0 < r.y1 &&
          r.y1 <= 1.0)) {
      reports.push_back(std::move(rep));
      continue;
    }
    auto clearance = [&](const TorusPoint& p) {
      if (p.x <= r.x0 || p.x >= r.x1 || p.y <= r.y0 || p.y >= r.y1) return -1.0;
      return std::min({p.x - r.x0, r.x1 - p.x, p.y - r.y0, r.y1 - p.y});
    };
    // boundary sampling of f(closure U) subset U
    double margin = 1e300;
    bool inside_all = true;
    auto probe = [&](double x, double y) {
      double c = clearance(map.apply(TorusPoint{x, y}, dir));
      inside_all = inside_all && c >= 0.0;
      margin = std::min(margin, c);
    };
    long long nx = std::max(2LL, (long long)std::ceil((r.x1 - r.x0) / resolution));
    long long ny = std::max(2LL, (long long)std::ceil((r.y1 - r.y0) / resolution));
    for (long long k = 0; k <= nx; ++k) {
      double x = r.x0 + (r.x1 - r.x0) * double(k) / double(nx);
      probe(x, r.y0);
      probe(x, r.y1);
    }
    for (long long k = 0; k <= ny; ++k) {
      double y = r.y0 + (r.y1 - r.y0) * double(k) / double(ny);
      probe(r.x0, y);
      probe(r.x1, y);
    }
    rep.margin = inside_all ? margin : 0.0;
    rep.trapped = inside_all && margin >= resolution;
    if (rep.trapped) {
      std::vector<TorusPoint> cloud;
      for (long long i = 0; i <= nx; ++i)
        for (long long j = 0; j <= ny; ++j) {
          TorusPoint p{r.x0 + (r.x1 - r.x0) * double(i) / double(nx),
                       r.y0 + (r.y1 - r.y0) * double(j) / double(ny)};
          p = map.apply(p, dir * max_iters);
          bool dup = false;
          for (const TorusPoint& q : cloud)
            if (map.distance(p, q) <= resolution * 0.5) {
              dup = true;
              break;
            }
          if (!dup) cloud.push_back(p);
        }
      rep.attained = std::move(cloud);
      rep.proper =
          (double)rep.attained.size() * resolution * resolution < 0.5;  // cannot cover T^2
      rep.invariant_at_resolution = cloud_invariant(map, rep.attained, resolution, dir);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace shadowing
