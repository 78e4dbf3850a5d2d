#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shadowing/errors.hpp"
#include "shadowing/rng.hpp"

namespace shadowing {

class Sft;

// One point of a subshift: a bi-infinite admissible symbol sequence with a
// finite description. A materialized window carries the symbols on [lo, hi];
// each side continues with either an infinitely repeated word or the symbols
// of another (shared, immutable) point read at a fixed index offset. Every
// construction in the library produces exactly these shapes, so symbol
// lookup and the metric are exact.
class SymbolicPoint {
 public:
  struct PeriodicTail {
    // repeats away from the window; phase is tied to the window edge, i.e.
    // on the right symbol(hi + k) = word[(k - 1) mod n]
    std::vector<std::uint8_t> word;
  };
  struct AnchorTail {
    std::shared_ptr<const SymbolicPoint> ref;
    long long offset = 0;  // symbol(i) = ref->symbol(i + offset)
  };
  using Tail = std::variant<PeriodicTail, AnchorTail>;

  SymbolicPoint() : lo_(0), word_{0}, left_(PeriodicTail{{0}}), right_(PeriodicTail{{0}}) {}
  SymbolicPoint(long long lo, std::vector<std::uint8_t> word, Tail left, Tail right);

  // periodic orbit of the given word, aligned so symbol(0) = word[0]
  static SymbolicPoint periodic(const std::vector<std::uint8_t>& word);

  long long lo() const { return lo_; }
  long long hi() const { return lo_ + (long long)word_.size() - 1; }
  int symbol(long long i) const;

  // sigma^k: (shifted(k)).symbol(i) == symbol(i + k)
  SymbolicPoint shifted(long long k) const;

  // window extended to cover [new_lo, new_hi] (no-op directions are kept)
  SymbolicPoint materialized(long long new_lo, long long new_hi) const;

  const std::vector<std::uint8_t>& word() const { return word_; }
  const Tail& left_tail() const { return left_; }
  const Tail& right_tail() const { return right_; }

  // fully resolved description: window word plus periodic continuations on
  // both sides (anchor chains are chased and flattened)
  struct Canonical {
    long long lo = 0;
    std::vector<std::uint8_t> word;
    std::vector<std::uint8_t> left_period;   // phase tied to lo
    std::vector<std::uint8_t> right_period;  // phase tied to hi
    long long hi() const { return lo + (long long)word.size() - 1; }
    int symbol(long long i) const;
  };
  Canonical canonical() const;

 private:
  long long lo_;
  std::vector<std::uint8_t> word_;  // symbols on [lo_, lo_ + size - 1]
  Tail left_, right_;
};

// Subshift of finite type over {0, ..., n-1} with a 0/1 transition matrix,
// under the left shift. Metric: d(x, y) = 2^(-min{|i| : x_i != y_i}).
class Sft {
 public:
  using Point = SymbolicPoint;

  // build_sft: rejects matrices with an all-zero row or column. The mixing
  // time (least m with T^m strictly positive) is searched up to 4 n^2 and
  // left empty if the shift is not mixing.
  static Sft from_transitions(const std::vector<std::vector<int>>& transitions);
  static Sft full_shift(int alphabet_size);
  static Sft golden_mean();  // transitions {{1,1},{1,0}}

  // plain-text format: first line alphabet_size, then rows of 0/1
  static Sft load(const std::string& path);
  static Sft parse(std::istream& in);

  int alphabet_size() const { return n_; }
  bool allowed(int a, int b) const { return transitions_[(std::size_t)(a * n_ + b)] != 0; }
  std::optional<long long> mixing_time() const { return mixing_time_; }
  const std::vector<std::uint8_t>& transitions() const { return transitions_; }

  Point apply(const Point& p, long long k = 1) const { return p.shifted(k); }
  double distance(const Point& p, const Point& q) const;

  // agreement radius: least |i| with p_i != q_i; empty if the sequences are
  // provably equal
  std::optional<long long> disagreement_radius(const Point& p, const Point& q) const;

  // suffix rewrite at distance <= magnitude: keeps all symbols at positions
  // < r where 2^-r <= magnitude, splices a random connecting path, and
  // reattaches the original suffix. Identity when magnitude <= 0 or the
  // shift is not mixing.
  Point perturb(const Point& p, double magnitude, RngStream& rng) const;

  double diameter() const { return 1.0; }
  double lipschitz() const { return 2.0; }
  std::string descriptor() const;

  // true orbit check over a finite span plus both tail structures
  bool admissible(const Point& p) const;

  // existence of a path a -> b using exactly len transitions
  bool reachable_in(int a, int b, long long len) const;

  // symbols of a path a -> b with exactly len transitions (len+1 symbols,
  // including endpoints); lexicographically least, or rng-driven when given.
  // Throws not_mixing when no such path exists.
  std::vector<std::uint8_t> connecting_path(int a, int b, long long len,
                                            RngStream* rng = nullptr) const;

  // random admissible point: random walk window on [-radius, radius] closed
  // off into periodic tails on both sides
  Point random_point(long long radius, RngStream& rng) const;

  bool operator==(const Sft& o) const {
    return n_ == o.n_ && transitions_ == o.transitions_;
  }

 private:
  Sft(int n, std::vector<std::uint8_t> transitions);

  int successor_count(int a) const;
  int predecessor_count(int b) const;
  const std::vector<std::uint8_t>& bool_power(long long k) const;  // k >= 1, capped

  int n_ = 0;
  std::vector<std::uint8_t> transitions_;
  std::optional<long long> mixing_time_;
  std::shared_ptr<std::vector<std::vector<std::uint8_t>>> powers_;  // shared cache
};

}  // namespace shadowing
