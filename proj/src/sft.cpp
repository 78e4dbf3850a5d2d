#include "shadowing/sft.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace shadowing {

namespace {

long long positive_mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::uint8_t> rotate_left(const std::vector<std::uint8_t>& w, long long k) {
  const long long n = (long long)w.size();
  std::vector<std::uint8_t> out(w.size());
  for (long long j = 0; j < n; ++j) out[(std::size_t)j] = w[(std::size_t)positive_mod(j + k, n)];
  return out;
}

constexpr int kMaxAnchorDepth = 64;

}  // namespace

// ---------------------------------------------------------------------------
// SymbolicPoint
// ---------------------------------------------------------------------------

SymbolicPoint::SymbolicPoint(long long lo, std::vector<std::uint8_t> word, Tail left, Tail right)
    : lo_(lo), word_(std::move(word)), left_(std::move(left)), right_(std::move(right)) {
  require(!word_.empty(), errc::bad_parameter, "symbolic window must be nonempty");
  if (auto* t = std::get_if<PeriodicTail>(&left_))
    require(!t->word.empty(), errc::bad_parameter, "empty periodic tail");
  if (auto* t = std::get_if<PeriodicTail>(&right_))
    require(!t->word.empty(), errc::bad_parameter, "empty periodic tail");
}

SymbolicPoint SymbolicPoint::periodic(const std::vector<std::uint8_t>& word) {
  return SymbolicPoint(0, word, PeriodicTail{word}, PeriodicTail{word});
}

int SymbolicPoint::symbol(long long i) const {
  if (i >= lo_ && i <= hi()) return word_[(std::size_t)(i - lo_)];
  if (i > hi()) {
    if (const auto* p = std::get_if<PeriodicTail>(&right_)) {
      const long long n = (long long)p->word.size();
      return p->word[(std::size_t)positive_mod(i - hi() - 1, n)];
    }
    const auto& a = std::get<AnchorTail>(right_);
    return a.ref->symbol(i + a.offset);
  }
  if (const auto* p = std::get_if<PeriodicTail>(&left_)) {
    const long long n = (long long)p->word.size();
    return p->word[(std::size_t)positive_mod(-(lo_ - i), n)];
  }
  const auto& a = std::get<AnchorTail>(left_);
  return a.ref->symbol(i + a.offset);
}

SymbolicPoint SymbolicPoint::shifted(long long k) const {
  Tail left = left_, right = right_;
  if (auto* a = std::get_if<AnchorTail>(&left)) a->offset += k;
  if (auto* a = std::get_if<AnchorTail>(&right)) a->offset += k;
  return SymbolicPoint(lo_ - k, word_, std::move(left), std::move(right));
}

SymbolicPoint SymbolicPoint::materialized(long long new_lo, long long new_hi) const {
  new_lo = std::min(new_lo, lo_);
  new_hi = std::max(new_hi, hi());
  if (new_lo == lo_ && new_hi == hi()) return *this;

  std::vector<std::uint8_t> word((std::size_t)(new_hi - new_lo + 1));
  for (long long i = new_lo; i <= new_hi; ++i)
    word[(std::size_t)(i - new_lo)] = (std::uint8_t)symbol(i);

  // periodic tails keep their phase relative to the (moved) window edge
  Tail left = left_, right = right_;
  if (auto* p = std::get_if<PeriodicTail>(&left))
    p->word = rotate_left(p->word, -(lo_ - new_lo));
  if (auto* p = std::get_if<PeriodicTail>(&right))
    p->word = rotate_left(p->word, new_hi - hi());
  return SymbolicPoint(new_lo, std::move(word), std::move(left), std::move(right));
}

int SymbolicPoint::Canonical::symbol(long long i) const {
  if (i >= lo && i <= hi()) return word[(std::size_t)(i - lo)];
  if (i > hi()) {
    const long long n = (long long)right_period.size();
    return right_period[(std::size_t)positive_mod(i - hi() - 1, n)];
  }
  const long long n = (long long)left_period.size();
  return left_period[(std::size_t)positive_mod(-(lo - i), n)];
}

namespace {

// flattens an anchor chain on one side into (extra window symbols, period)
struct SideResolver {
  static void resolve_right(const SymbolicPoint& p, SymbolicPoint::Canonical& out, int depth) {
    require(depth < kMaxAnchorDepth, errc::bad_parameter, "anchor chain too deep");
    if (const auto* per = std::get_if<SymbolicPoint::PeriodicTail>(&p.right_tail())) {
      out.right_period = per->word;
      return;
    }
    const auto& a = std::get<SymbolicPoint::AnchorTail>(p.right_tail());
    SymbolicPoint::Canonical rc = a.ref->canonical();
    const long long first = out.hi() + 1 + a.offset;  // in ref coordinates
    if (first <= rc.hi()) {
      for (long long j = first; j <= rc.hi(); ++j)
        out.word.push_back((std::uint8_t)rc.symbol(j));
      out.right_period = rc.right_period;
    } else {
      out.right_period =
          rotate_left(rc.right_period, positive_mod(first - rc.hi() - 1, (long long)rc.right_period.size()));
    }
  }

  static void resolve_left(const SymbolicPoint& p, SymbolicPoint::Canonical& out, int depth) {
    require(depth < kMaxAnchorDepth, errc::bad_parameter, "anchor chain too deep");
    if (const auto* per = std::get_if<SymbolicPoint::PeriodicTail>(&p.left_tail())) {
      out.left_period = per->word;
      return;
    }
    const auto& a = std::get<SymbolicPoint::AnchorTail>(p.left_tail());
    SymbolicPoint::Canonical rc = a.ref->canonical();
    const long long first = out.lo - 1 + a.offset;  // in ref coordinates
    if (first >= rc.lo) {
      std::vector<std::uint8_t> prefix;
      for (long long j = rc.lo; j <= first; ++j) prefix.push_back((std::uint8_t)rc.symbol(j));
      out.word.insert(out.word.begin(), prefix.begin(), prefix.end());
      out.lo -= (long long)prefix.size();
      out.left_period = rc.left_period;
    } else {
      out.left_period = rotate_left(
          rc.left_period, -positive_mod(rc.lo - first - 1, (long long)rc.left_period.size()));
    }
  }
};

}  // namespace

SymbolicPoint::Canonical SymbolicPoint::canonical() const {
  Canonical out;
  out.lo = lo_;
  out.word = word_;
  SideResolver::resolve_right(*this, out, 0);
  SideResolver::resolve_left(*this, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Sft
// ---------------------------------------------------------------------------

Sft::Sft(int n, std::vector<std::uint8_t> transitions)
    : n_(n),
      transitions_(std::move(transitions)),
      powers_(std::make_shared<std::vector<std::vector<std::uint8_t>>>()) {
  for (int a = 0; a < n_; ++a) {
    require(successor_count(a) > 0, errc::dead_symbol,
            "symbol " + std::to_string(a) + " has no outgoing transition");
    require(predecessor_count(a) > 0, errc::dead_symbol,
            "symbol " + std::to_string(a) + " has no incoming transition");
  }
  // Least m with T^m strictly positive; 4 n^2 exceeds the Wielandt bound.
  // The boolean powers computed along the way are kept: path queries on a
  // mixing shift never look past the mixing time, and the shared cache is
  // read-only after construction.
  const long long bound = std::min(4LL * n_ * n_, (long long)(1 << 22) / (n_ * n_) + 1);
  std::vector<std::uint8_t> power = transitions_;
  auto& cache = *powers_;
  for (long long m = 1; m <= bound; ++m) {
    if (m > 1) {
      std::vector<std::uint8_t> next((std::size_t)(n_ * n_), 0);
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k)
          if (power[(std::size_t)(i * n_ + k)])
            for (int j = 0; j < n_; ++j)
              next[(std::size_t)(i * n_ + j)] |= transitions_[(std::size_t)(k * n_ + j)];
      power = std::move(next);
    }
    cache.push_back(power);
    if (std::all_of(power.begin(), power.end(), [](std::uint8_t v) { return v != 0; })) {
      mixing_time_ = m;
      break;
    }
  }
}

Sft Sft::from_transitions(const std::vector<std::vector<int>>& transitions) {
  const int n = (int)transitions.size();
  require(n > 0, errc::bad_parameter, "empty transition matrix");
  std::vector<std::uint8_t> flat;
  flat.reserve((std::size_t)(n * n));
  for (const auto& row : transitions) {
    require((int)row.size() == n, errc::bad_parameter, "transition matrix must be square");
    for (int v : row) {
      require(v == 0 || v == 1, errc::bad_parameter, "transition entries must be 0/1");
      flat.push_back((std::uint8_t)v);
    }
  }
  return Sft(n, std::move(flat));
}

Sft Sft::full_shift(int alphabet_size) {
  require(alphabet_size >= 1, errc::bad_parameter, "alphabet must be nonempty");
  std::vector<std::vector<int>> t((std::size_t)alphabet_size,
                                  std::vector<int>((std::size_t)alphabet_size, 1));
  return from_transitions(t);
}

Sft Sft::golden_mean() { return from_transitions({{1, 1}, {1, 0}}); }

Sft Sft::parse(std::istream& in) {
  int n = 0;
  require(bool(in >> n), errc::parse_error, "missing alphabet size");
  require(n >= 1 && n <= 4096, errc::parse_error, "alphabet size out of range");
  std::vector<std::vector<int>> rows((std::size_t)n, std::vector<int>((std::size_t)n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      require(bool(in >> rows[(std::size_t)i][(std::size_t)j]), errc::parse_error,
              "truncated transition matrix");
  return from_transitions(rows);
}

Sft Sft::load(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), errc::io_error, "cannot open " + path);
  return parse(in);
}

int Sft::successor_count(int a) const {
  int c = 0;
  for (int b = 0; b < n_; ++b) c += transitions_[(std::size_t)(a * n_ + b)];
  return c;
}

int Sft::predecessor_count(int b) const {
  int c = 0;
  for (int a = 0; a < n_; ++a) c += transitions_[(std::size_t)(a * n_ + b)];
  return c;
}

const std::vector<std::uint8_t>& Sft::bool_power(long long k) const {
  require(k >= 1, errc::bad_parameter, "power must be positive");
  const auto& cache = *powers_;
  require(k <= (long long)cache.size(), errc::bound_too_large,
          "transition power beyond the precomputed range");
  return cache[(std::size_t)(k - 1)];
}

bool Sft::reachable_in(int a, int b, long long len) const {
  if (len == 0) return a == b;
  if (len < 0) return false;
  if (mixing_time_ && len >= *mixing_time_) return true;
  return bool_power(len)[(std::size_t)(a * n_ + b)] != 0;
}

std::vector<std::uint8_t> Sft::connecting_path(int a, int b, long long len, RngStream* rng) const {
  require(len >= 0, errc::bad_parameter, "path length must be nonnegative");
  require(reachable_in(a, b, len), errc::not_mixing,
          "no path of length " + std::to_string(len) + " between symbols");
  std::vector<std::uint8_t> path;
  path.reserve((std::size_t)len + 1);
  path.push_back((std::uint8_t)a);
  int cur = a;
  for (long long t = 1; t <= len; ++t) {
    std::vector<int> candidates;
    for (int c = 0; c < n_; ++c)
      if (allowed(cur, c) && reachable_in(c, b, len - t)) candidates.push_back(c);
    require(!candidates.empty(), errc::not_mixing, "path construction dead end");
    cur = rng ? candidates[(std::size_t)rng->next_below(candidates.size())] : candidates.front();
    path.push_back((std::uint8_t)cur);
  }
  return path;
}

double Sft::distance(const Point& p, const Point& q) const {
  auto r = disagreement_radius(p, q);
  if (!r) return 0.0;
  return std::ldexp(1.0, (int)std::max(-1060LL, -*r));
}

std::optional<long long> Sft::disagreement_radius(const Point& p, const Point& q) const {
  const auto a = p.canonical();
  const auto b = q.canonical();
  auto period_span = [](std::size_t pa, std::size_t pb) {
    long long l = std::lcm((long long)pa, (long long)pb);
    return std::min(l, 1LL << 14);
  };
  const long long right_edge = std::max(a.hi(), b.hi()) +
                               period_span(a.right_period.size(), b.right_period.size());
  const long long left_edge =
      std::min(a.lo, b.lo) - period_span(a.left_period.size(), b.left_period.size());
  const long long radius = std::max(right_edge, -left_edge);
  for (long long r = 0; r <= radius; ++r) {
    if (a.symbol(r) != b.symbol(r)) return r;
    if (r > 0 && a.symbol(-r) != b.symbol(-r)) return r;
  }
  return std::nullopt;  // periodic continuations verified over a full lcm span
}

SymbolicPoint Sft::perturb(const Point& p, double magnitude, RngStream& rng) const {
  if (magnitude <= 0.0 || !mixing_time_) return p;
  const long long r =
      magnitude >= 1.0 ? 0 : (long long)std::ceil(std::log2(1.0 / magnitude) - 1e-12);
  const long long m = *mixing_time_;
  SymbolicPoint q = p.materialized(std::min(p.lo(), -1LL), std::max(p.hi(), r + m));
  // rewrite positions [r, r+m-1] with a random admissible bridge; everything
  // at |i| < r is untouched so d(p, q) <= 2^-r <= magnitude
  auto path = connecting_path(q.symbol(r - 1), q.symbol(r + m), m + 1, &rng);
  std::vector<std::uint8_t> word = q.word();
  for (long long j = 0; j < m; ++j)
    word[(std::size_t)(r + j - q.lo())] = path[(std::size_t)(j + 1)];
  return SymbolicPoint(q.lo(), std::move(word), q.left_tail(), q.right_tail());
}

bool Sft::admissible(const Point& p) const {
  const auto c = p.canonical();
  const long long lp = (long long)c.left_period.size();
  const long long rp = (long long)c.right_period.size();
  const long long from = c.lo - 2 * lp - 1;
  const long long to = c.hi() + 2 * rp + 1;
  for (long long i = from; i < to; ++i)
    if (!allowed(c.symbol(i), c.symbol(i + 1))) return false;
  return true;
}

SymbolicPoint Sft::random_point(long long radius, RngStream& rng) const {
  require(radius >= 0, errc::bad_parameter, "radius must be nonnegative");
  auto random_successor = [&](int a) {
    std::vector<int> cands;
    for (int b = 0; b < n_; ++b)
      if (allowed(a, b)) cands.push_back(b);
    return cands[(std::size_t)rng.next_below(cands.size())];
  };
  auto random_predecessor = [&](int b) {
    std::vector<int> cands;
    for (int a = 0; a < n_; ++a)
      if (allowed(a, b)) cands.push_back(a);
    return cands[(std::size_t)rng.next_below(cands.size())];
  };

  std::vector<std::uint8_t> word;
  word.push_back((std::uint8_t)rng.next_below((std::uint64_t)n_));
  for (long long i = 0; i < radius; ++i) word.push_back((std::uint8_t)random_successor(word.back()));
  std::vector<std::uint8_t> prefix;
  int front = word.front();
  for (long long i = 0; i < radius; ++i) {
    front = random_predecessor(front);
    prefix.push_back((std::uint8_t)front);
  }
  std::reverse(prefix.begin(), prefix.end());
  word.insert(word.begin(), prefix.begin(), prefix.end());
  long long lo = -radius;

  // Close each side into a cycle: extend the walk until a symbol repeats,
  // absorb the pre-period into the window, keep the cycle as the tail.
  std::vector<std::uint8_t> right_cycle;
  {
    std::vector<int> cont{word.back()};
    std::unordered_map<int, std::size_t> seen{{word.back(), 0}};
    for (;;) {
      int nxt = random_successor(cont.back());
      auto it = seen.find(nxt);
      if (it == seen.end()) {
        seen.emplace(nxt, cont.size());
        cont.push_back(nxt);
        continue;
      }
      const std::size_t s = it->second;
      // walk c_0..c_t with c_{t+1} == c_s; absorb c_1..c_s, tail repeats
      // (c_{s+1}, ..., c_t, c_s)
      for (std::size_t j = 1; j <= s; ++j) word.push_back((std::uint8_t)cont[j]);
      for (std::size_t j = s + 1; j < cont.size(); ++j) right_cycle.push_back((std::uint8_t)cont[j]);
      right_cycle.push_back((std::uint8_t)cont[s]);
      break;
    }
  }
  std::vector<std::uint8_t> left_cycle;
  {
    std::vector<int> cont{word.front()};
    std::unordered_map<int, std::size_t> seen{{word.front(), 0}};
    for (;;) {
      int prv = random_predecessor(cont.back());
      auto it = seen.find(prv);
      if (it == seen.end()) {
        seen.emplace(prv, cont.size());
        cont.push_back(prv);
        continue;
      }
      const std::size_t s = it->second;
      // predecessor walk b_0..b_t with b_{t+1} == b_s; absorb b_1..b_s,
      // tail word left-to-right is (b_s, b_t, b_{t-1}, ..., b_{s+1})
      std::vector<std::uint8_t> absorbed;
      for (std::size_t j = 1; j <= s; ++j) absorbed.push_back((std::uint8_t)cont[j]);
      std::reverse(absorbed.begin(), absorbed.end());
      word.insert(word.begin(), absorbed.begin(), absorbed.end());
      lo -= (long long)absorbed.size();
      left_cycle.push_back((std::uint8_t)cont[s]);
      for (std::size_t j = cont.size() - 1; j > s; --j) left_cycle.push_back((std::uint8_t)cont[j]);
      break;
    }
  }
  return SymbolicPoint(lo, std::move(word), SymbolicPoint::PeriodicTail{std::move(left_cycle)},
                       SymbolicPoint::PeriodicTail{std::move(right_cycle)});
}

std::string Sft::descriptor() const {
  std::ostringstream os;
  os << "sft:" << n_ << ":";
  for (int i = 0; i < n_; ++i) {
    if (i) os << "/";
    for (int j = 0; j < n_; ++j) os << int(transitions_[(std::size_t)(i * n_ + j)]);
  }
  return os.str();
}

}  // namespace shadowing
