#include <doctest.h>

#include <memory>
#include <sstream>

#include "shadowing/sft.hpp"

using namespace shadowing;

TEST_CASE("mixing times of the stock shifts") {
  CHECK(*Sft::full_shift(2).mixing_time() == 1);
  CHECK(*Sft::golden_mean().mixing_time() == 2);
  // period-2 permutation: powers alternate, never positive
  auto swap = Sft::from_transitions({{0, 1}, {1, 0}});
  CHECK(!swap.mixing_time().has_value());
}

TEST_CASE("dead symbols are rejected") {
  CHECK_THROWS_AS(Sft::from_transitions({{1, 1}, {0, 0}}), Error);  // row of zeros
  CHECK_THROWS_AS(Sft::from_transitions({{1, 0}, {1, 0}}), Error);  // column of zeros
  CHECK_THROWS_AS(Sft::from_transitions({{1, 2}, {1, 0}}), Error);  // not 0/1
}

TEST_CASE("plain-text loading") {
  std::istringstream in("2\n1 1\n1 0\n");
  auto sft = Sft::parse(in);
  CHECK(sft == Sft::golden_mean());
  std::istringstream bad("2\n1 1\n1\n");
  CHECK_THROWS_AS(Sft::parse(bad), Error);
}

TEST_CASE("symbolic point windows, shifts and tails") {
  // ...000|111... with the seam at 0
  SymbolicPoint p(0, {1, 1, 1}, SymbolicPoint::PeriodicTail{{0}},
                  SymbolicPoint::PeriodicTail{{1}});
  CHECK(p.symbol(0) == 1);
  CHECK(p.symbol(2) == 1);
  CHECK(p.symbol(37) == 1);
  CHECK(p.symbol(-1) == 0);
  CHECK(p.symbol(-40) == 0);

  SymbolicPoint q = p.shifted(5);  // q_i = p_{i+5}
  CHECK(q.symbol(-5) == 1);
  CHECK(q.symbol(-6) == 0);
  CHECK(q.symbol(10) == 1);

  // alternating periodic word keeps its phase under shifts and windows
  SymbolicPoint alt = SymbolicPoint::periodic({0, 1});
  CHECK(alt.symbol(0) == 0);
  CHECK(alt.symbol(1) == 1);
  CHECK(alt.symbol(2) == 0);
  CHECK(alt.symbol(-1) == 1);
  CHECK(alt.symbol(-2) == 0);
  SymbolicPoint alt5 = alt.shifted(5);
  for (long long i = -8; i <= 8; ++i) CHECK(alt5.symbol(i) == alt.symbol(i + 5));
  SymbolicPoint wide = alt.materialized(-7, 9);
  for (long long i = -12; i <= 12; ++i) CHECK(wide.symbol(i) == alt.symbol(i));
}

TEST_CASE("anchored tails defer to the referenced point") {
  auto base = std::make_shared<const SymbolicPoint>(SymbolicPoint::periodic({0, 1}));
  SymbolicPoint p(0, {0, 0, 0}, SymbolicPoint::AnchorTail{base, 0},
                  SymbolicPoint::AnchorTail{base, 4});
  CHECK(p.symbol(-1) == base->symbol(-1));
  CHECK(p.symbol(-9) == base->symbol(-9));
  CHECK(p.symbol(3) == base->symbol(7));
  CHECK(p.symbol(10) == base->symbol(14));
  // canonical form resolves anchors into periodic continuations
  auto c = p.canonical();
  for (long long i = -15; i <= 15; ++i) CHECK(c.symbol(i) == p.symbol(i));
}

TEST_CASE("SFT metric: agreement radius, exact zero, ultrametric") {
  auto sft = Sft::full_shift(2);
  SymbolicPoint a(-6, std::vector<std::uint8_t>(13, 0), SymbolicPoint::PeriodicTail{{0}},
                  SymbolicPoint::PeriodicTail{{0}});
  std::vector<std::uint8_t> w(13, 0);
  w[4 + 6] = 1;  // differ first at +4
  SymbolicPoint b(-6, w, SymbolicPoint::PeriodicTail{{0}}, SymbolicPoint::PeriodicTail{{0}});
  CHECK(sft.distance(a, b) == 0.0625);  // 2^-4 exactly
  CHECK(sft.distance(a, a) == 0.0);
  CHECK(sft.distance(a, b) == sft.distance(b, a));
  // structurally different descriptions of the same sequence compare equal
  SymbolicPoint z1 = SymbolicPoint::periodic({0});
  SymbolicPoint z2(-3, std::vector<std::uint8_t>(7, 0), SymbolicPoint::PeriodicTail{{0, 0}},
                   SymbolicPoint::PeriodicTail{{0, 0, 0}});
  CHECK(sft.distance(z1, z2) == 0.0);
  // metric axioms on random triples; ultrametric strengthens the triangle
  auto golden = Sft::golden_mean();
  RngStream rng(5);
  for (int t = 0; t < 10000; ++t) {
    SymbolicPoint x = golden.random_point(6, rng);
    SymbolicPoint y = golden.random_point(6, rng);
    SymbolicPoint z = golden.random_point(6, rng);
    CHECK(golden.distance(x, y) == golden.distance(y, x));
    CHECK(golden.distance(x, z) <=
          std::max(golden.distance(x, y), golden.distance(y, z)) + 0.0);
  }
}

TEST_CASE("random points are admissible and the shift preserves admissibility") {
  auto golden = Sft::golden_mean();
  RngStream rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    SymbolicPoint p = golden.random_point(1 + (long long)rng.next_below(12), rng);
    CHECK(golden.admissible(p));
    long long k = (long long)rng.next_below(21) - 10;
    SymbolicPoint q = golden.apply(p, k);
    CHECK(golden.admissible(q));
    for (long long i = -5; i <= 5; ++i) CHECK(q.symbol(i) == p.symbol(i + k));
  }
}

TEST_CASE("perturbation respects the metric budget and admissibility") {
  auto golden = Sft::golden_mean();
  RngStream rng(77);
  SymbolicPoint p = golden.random_point(10, rng);
  for (double mag : {1.0, 0.5, 0.25, 0.0625, 1e-3}) {
    for (int trial = 0; trial < 20; ++trial) {
      SymbolicPoint q = golden.perturb(p, mag, rng);
      CHECK(golden.admissible(q));
      CHECK(golden.distance(p, q) <= mag);
    }
  }
  SymbolicPoint q0 = golden.perturb(p, 0.0, rng);
  CHECK(golden.distance(p, q0) == 0.0);
}

TEST_CASE("connecting paths have exact length and admissible steps") {
  auto golden = Sft::golden_mean();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (long long len = 2; len <= 8; ++len) {
        auto path = golden.connecting_path(a, b, len);
        REQUIRE(path.size() == (std::size_t)(len + 1));
        CHECK(path.front() == a);
        CHECK(path.back() == b);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          CHECK(golden.allowed(path[i], path[i + 1]));
      }
  // no length-1 path 1 -> 1 in the golden mean shift
  CHECK_THROWS_AS(golden.connecting_path(1, 1, 1), Error);
}

TEST_CASE("expansivity at 1/2: sampled distinct pairs separate within 64 shifts") {
  auto golden = Sft::golden_mean();
  RngStream rng(99);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    SymbolicPoint x = golden.random_point(8, rng);
    SymbolicPoint y = golden.random_point(8, rng);
    if (golden.distance(x, y) == 0.0) continue;
    ++checked;
    bool separated = false;
    for (long long i = -64; i <= 64 && !separated; ++i)
      separated = golden.distance(golden.apply(x, i), golden.apply(y, i)) >= 0.5;
    CHECK(separated);
  }
  CHECK(checked > 900);
}
