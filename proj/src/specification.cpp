#include "shadowing/specification.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "shadowing/analysis.hpp"

namespace shadowing {

TorusPoint shadow_specification(const HyperbolicToralMap& map,
                                const Specification<TorusPoint>& spec, double delta,
                                LeafSolveDetail* detail) {
  spec.validate();
  require(delta > 0.0, errc::bad_parameter, "delta must be positive");
  require(spec.parts.size() <= 2, errc::bad_parameter,
          "the toral shadower supports at most two intervals");
  if (spec.parts.size() == 1) {
    // an orbit segment is its own shadow; pull the anchor to time 0
    return map.apply(spec.parts[0].anchor, -spec.parts[0].a);
  }
  require(spec.min_gap() >= specification_spacing(map, delta), errc::spacing_too_small,
          "interval gap below the spacing required for delta");

  const auto& first = spec.parts[0];
  const auto& second = spec.parts[1];
  TorusPoint q1 = map.apply(first.anchor, -first.a);
  TorusPoint q2 = map.apply(second.anchor, -second.a);

  // z = q1 + s v_u = q2 + t v_s + offset; deviations along the first
  // interval grow like |s| rate_u^n and along the second like |t| rate_s^n
  const HyperbolicEigen& eig = map.eigen();
  Mat2 leaf = Mat2::from_columns(eig.v_u, eig.v_s * -1.0);
  Mat2 leaf_inv = leaf.inverse();
  Vec2 rhs0 = q2.lift() - q1.lift();

  double best = 1e300;
  double best_s = 0.0, best_t = 0.0;
  for (int mx = -10; mx <= 10; ++mx) {
    for (int my = -10; my <= 10; ++my) {
      Vec2 st = leaf_inv * (rhs0 + Vec2{double(mx), double(my)});
      double dev1 = std::fabs(st.x) * std::pow(map.rate_u(), double(first.b));
      double dev2 = std::fabs(st.y) * std::pow(map.rate_s(), double(second.a));
      double worst = std::max(dev1, dev2);
      if (worst < best) {
        best = worst;
        best_s = st.x;
        best_t = st.y;
      }
    }
  }
  if (best >= delta) {
    std::ostringstream os;
    os << "no lattice offset meets delta " << delta << "; best achievable " << best;
    fail(errc::no_lattice_offset, os.str());
  }
  if (detail) *detail = LeafSolveDetail{best_s, best_t, q1, q2};
  Vec2 z = q1.lift() + eig.v_u * best_s;
  return TorusPoint::normalized(z.x, z.y);
}

SymbolicPoint shadow_specification(const Sft& sft, const Specification<SymbolicPoint>& spec,
                                   double delta) {
  spec.validate();
  require(delta > 0.0 && delta < 1.0, errc::bad_parameter, "delta must lie in (0, 1)");
  require(sft.mixing_time().has_value(), errc::not_mixing,
          "specification shadowing requires a mixing SFT");
  if (spec.parts.size() == 1)
    return spec.parts[0].anchor.shifted(-spec.parts[0].a);
  require(spec.min_gap() >= specification_spacing(sft, delta), errc::spacing_too_small,
          "interval gap below the spacing required for delta");

  const long long r = (long long)std::ceil(std::log2(1.0 / delta));
  const long long lo = spec.parts.front().a - r;
  const long long hi = spec.parts.back().b + r;
  std::vector<std::uint8_t> word((std::size_t)(hi - lo + 1));

  // anchored blocks padded by the agreement radius
  for (const auto& part : spec.parts)
    for (long long t = part.a - r; t <= part.b + r; ++t)
      word[(std::size_t)(t - lo)] = (std::uint8_t)part.anchor.symbol(t - part.a);
  // Connecting paths across the gaps (gap - 2r >= mixing_time by the
  // spacing check, and T^q is positive for every q >= mixing_time). When the
  // previous anchor's own continuation already lands on the next block the
  // gap keeps those symbols, so anchors cut from one orbit reproduce that
  // orbit exactly.
  for (std::size_t k = 1; k < spec.parts.size(); ++k) {
    const long long from = spec.parts[k - 1].b + r;
    const long long to = spec.parts[k].a - r;
    const auto& prev = spec.parts[k - 1];
    auto continuation = [&](long long t) -> int {
      if (t == from) return word[(std::size_t)(from - lo)];
      if (t == to) return word[(std::size_t)(to - lo)];
      return prev.anchor.symbol(t - prev.a);
    };
    bool continuation_ok = true;
    for (long long t = from; t < to && continuation_ok; ++t)
      continuation_ok = sft.allowed(continuation(t), continuation(t + 1));
    if (continuation_ok) {
      for (long long t = from + 1; t < to; ++t)
        word[(std::size_t)(t - lo)] = (std::uint8_t)continuation(t);
      continue;
    }
    auto path = sft.connecting_path(word[(std::size_t)(from - lo)], word[(std::size_t)(to - lo)],
                                    to - from);
    for (long long j = 1; j < to - from; ++j)
      word[(std::size_t)(from + j - lo)] = path[(std::size_t)j];
  }

  auto left_anchor = std::make_shared<const SymbolicPoint>(spec.parts.front().anchor);
  auto right_anchor = std::make_shared<const SymbolicPoint>(spec.parts.back().anchor);
  SymbolicPoint z(lo, std::move(word),
                  SymbolicPoint::AnchorTail{left_anchor, -spec.parts.front().a},
                  SymbolicPoint::AnchorTail{right_anchor, -spec.parts.back().a});
  require(sft.admissible(z), errc::spacing_too_small,
          "spliced specification shadow is not admissible");
  return z;
}

}  // namespace shadowing
