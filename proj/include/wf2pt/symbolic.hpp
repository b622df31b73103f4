#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wf2pt::detail {

// Reduced ordered binary decision diagrams over variables 0..n-1, used to
// hold sets of safe markings (one variable per place). Nodes are never
// freed; `max_nodes` bounds memory.
class Bdd {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0, kTrue = 1;

  struct NodeLimit : std::runtime_error {
    NodeLimit() : std::runtime_error("decision diagram node limit reached") {}
  };

  // A conjunction of literals, sorted by variable.
  using Cube = std::vector<std::pair<std::uint32_t, bool>>;

  Bdd(std::uint32_t vars, std::size_t max_nodes) : vars_(vars), max_nodes_(max_nodes) {
    nodes_.push_back({vars, kFalse, kFalse});
    nodes_.push_back({vars, kTrue, kTrue});
    buckets_.assign(1u << 16, kEmpty);
    cache_.resize(1u << 18);
  }

  std::uint32_t var(Ref f) const { return nodes_[f].var; }
  Ref low(Ref f) const { return nodes_[f].lo; }
  Ref high(Ref f) const { return nodes_[f].hi; }
  std::size_t node_count() const { return nodes_.size(); }

  Ref cube(const Cube& c) {
    Ref r = kTrue;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      r = it->second ? make(it->first, kFalse, r) : make(it->first, r, kFalse);
    return r;
  }

  Ref conj(Ref f, Ref g) { return apply(Op::And, f, g); }
  Ref disj(Ref f, Ref g) { return apply(Op::Or, f, g); }
  Ref diff(Ref f, Ref g) { return apply(Op::Diff, f, g); }

  /// f with the cube's variables fixed to the cube's values.
  Ref cofactor(Ref f, const Cube& c) {
    const std::uint32_t tag = ++cofactor_epoch_;
    return cofactor_rec(f, c, 0, tag);
  }

  /// Number of satisfying assignments over all variables.
  long double count(Ref f) {
    std::vector<long double> memo(nodes_.size(), -1.0L);
    return count_rec(f, memo) * std::pow(2.0L, static_cast<long double>(var(f)));
  }

  /// The satisfying assignment that is smallest when read as a bit string
  /// in variable order (0 preferred). Requires f != kFalse.
  std::vector<std::uint32_t> pick_one(Ref f) const {
    std::vector<std::uint32_t> ones;
    while (f != kTrue) {
      if (nodes_[f].lo != kFalse) {
        f = nodes_[f].lo;
      } else {
        ones.push_back(nodes_[f].var);
        f = nodes_[f].hi;
      }
    }
    return ones;
  }

 private:
  enum class Op : std::uint32_t { And = 1, Or, Diff };
  static constexpr Ref kEmpty = 0xffffffffu;

  struct Node {
    std::uint32_t var;
    Ref lo, hi;
  };
  struct CacheEntry {
    std::uint32_t op = 0;
    Ref f = 0, g = 0, r = 0;
  };

  static std::size_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = a * 0x9e3779b97f4a7c15ull ^ (b + 0x632be59bd9b4e019ull) * 0xc2b2ae3d27d4eb4full;
    h ^= c * 0x165667b19e3779f9ull;
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ull);
  }

  Ref make(std::uint32_t v, Ref lo, Ref hi) {
    if (lo == hi) return lo;
    std::size_t mask = buckets_.size() - 1;
    for (std::size_t i = mix(v, lo, hi) & mask;; i = (i + 1) & mask) {
      Ref r = buckets_[i];
      if (r == kEmpty) break;
      const Node& n = nodes_[r];
      if (n.var == v && n.lo == lo && n.hi == hi) return r;
    }
    if (nodes_.size() >= max_nodes_) throw NodeLimit();
    const Ref r = static_cast<Ref>(nodes_.size());
    nodes_.push_back({v, lo, hi});
    if (2 * nodes_.size() > buckets_.size()) {
      rehash();
    } else {
      insert_bucket(r);
    }
    return r;
  }

  void insert_bucket(Ref r) {
    std::size_t mask = buckets_.size() - 1;
    const Node& n = nodes_[r];
    std::size_t i = mix(n.var, n.lo, n.hi) & mask;
    while (buckets_[i] != kEmpty) i = (i + 1) & mask;
    buckets_[i] = r;
  }

  void rehash() {
    buckets_.assign(buckets_.size() * 2, kEmpty);
    for (Ref r = 2; r < nodes_.size(); ++r) insert_bucket(r);
    if (cache_.size() < buckets_.size() / 2) cache_.assign(buckets_.size() / 2, CacheEntry{});
  }

  CacheEntry& slot(std::uint32_t op, Ref f, Ref g) { return cache_[mix(op, f, g) & (cache_.size() - 1)]; }

  Ref apply(Op op, Ref f, Ref g) {
    switch (op) {
      case Op::And:
        if (f == kFalse || g == kFalse) return kFalse;
        if (f == kTrue) return g;
        if (g == kTrue || f == g) return f;
        if (f > g) std::swap(f, g);
        break;
      case Op::Or:
        if (f == kTrue || g == kTrue) return kTrue;
        if (f == kFalse) return g;
        if (g == kFalse || f == g) return f;
        if (f > g) std::swap(f, g);
        break;
      case Op::Diff:
        if (f == kFalse || g == kTrue || f == g) return kFalse;
        if (g == kFalse) return f;
        break;
    }
    const auto code = static_cast<std::uint32_t>(op);
    {
      const CacheEntry& e = slot(code, f, g);
      if (e.op == code && e.f == f && e.g == g) return e.r;
    }
    const std::uint32_t v = std::min(var(f), var(g));
    const Ref f0 = var(f) == v ? low(f) : f, f1 = var(f) == v ? high(f) : f;
    const Ref g0 = var(g) == v ? low(g) : g, g1 = var(g) == v ? high(g) : g;
    const Ref lo = apply(op, f0, g0);
    const Ref hi = apply(op, f1, g1);
    const Ref r = make(v, lo, hi);
    slot(code, f, g) = CacheEntry{code, f, g, r};
    return r;
  }

  Ref cofactor_rec(Ref f, const Cube& c, std::size_t i, std::uint32_t tag) {
    while (i < c.size() && c[i].first < var(f)) ++i;
    if (i == c.size() || f <= kTrue) return f;
    // Op codes above the apply range identify one cofactor call; the cube
    // position is implied by var(f).
    const std::uint32_t code = 16 + tag;
    {
      const CacheEntry& e = slot(code, f, 0);
      if (e.op == code && e.f == f) return e.r;
    }
    Ref r;
    if (c[i].first == var(f)) {
      r = cofactor_rec(c[i].second ? high(f) : low(f), c, i + 1, tag);
    } else {
      const Ref lo = cofactor_rec(low(f), c, i, tag);
      const Ref hi = cofactor_rec(high(f), c, i, tag);
      r = make(var(f), lo, hi);
    }
    slot(code, f, 0) = CacheEntry{code, f, 0, r};
    return r;
  }

  long double count_rec(Ref f, std::vector<long double>& memo) {
    if (f == kFalse) return 0;
    if (f == kTrue) return 1;
    if (memo[f] >= 0) return memo[f];
    auto part = [&](Ref c) {
      return count_rec(c, memo) * std::pow(2.0L, static_cast<long double>(var(c) - var(f) - 1));
    };
    return memo[f] = part(low(f)) + part(high(f));
  }

  std::uint32_t vars_;
  std::size_t max_nodes_;
  std::vector<Node> nodes_;
  std::vector<Ref> buckets_;
  std::vector<CacheEntry> cache_;
  std::uint32_t cofactor_epoch_ = 0;
};

}  // namespace wf2pt::detail
