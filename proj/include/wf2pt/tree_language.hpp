#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/process_tree.hpp"
#include "wf2pt/trace.hpp"

namespace wf2pt {

namespace detail {

inline void check_cap(const TraceSet& s, std::size_t cap) {
  if (s.size() > cap) throw ResultSetCapExceeded(cap);
}

inline void interleave(const Trace& x, const Trace& y, std::size_t i, std::size_t j,
                       Trace& cur, TraceSet& out, std::size_t cap) {
  if (i == x.size() && j == y.size()) {
    out.insert(cur);
    check_cap(out, cap);
    return;
  }
  if (i < x.size()) {
    cur.push_back(x[i]);
    interleave(x, y, i + 1, j, cur, out, cap);
    cur.pop_back();
  }
  if (j < y.size()) {
    cur.push_back(y[j]);
    interleave(x, y, i, j + 1, cur, out, cap);
    cur.pop_back();
  }
}

// Shuffle of two sets, keeping only results of length <= max_len.
inline TraceSet shuffle_pair(const TraceSet& a, const TraceSet& b, std::size_t max_len,
                             std::size_t cap) {
  TraceSet out;
  Trace cur;
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.size() + y.size() <= max_len) interleave(x, y, 0, 0, cur, out, cap);
  return out;
}

inline TraceSet concat(const TraceSet& a, const TraceSet& b, std::size_t max_len,
                       std::size_t cap) {
  TraceSet out;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (x.size() + y.size() > max_len) continue;
      Trace t = x;
      t.insert(t.end(), y.begin(), y.end());
      out.insert(std::move(t));
      check_cap(out, cap);
    }
  return out;
}

}  // namespace detail

/// All order-preserving interleavings of one trace from each operand.
inline TraceSet shuffle(const std::vector<TraceSet>& sets,
                        std::size_t cap = kDefaultTraceCap) {
  TraceSet acc{Trace{}};
  for (const auto& s : sets)
    acc = detail::shuffle_pair(acc, s, std::numeric_limits<std::size_t>::max(), cap);
  return acc;
}

/// Traces of the tree's language with at most `max_visible_length` events.
inline TraceSet enumerate_tree_language(const ProcessTree& tree,
                                        std::size_t max_visible_length,
                                        std::size_t cap = kDefaultTraceCap) {
  const std::size_t k = max_visible_length;
  if (tree.is_leaf()) {
    if (tree.is_silent()) return {Trace{}};
    if (k == 0) return {};
    return {Trace{tree.label().name()}};
  }
  const auto& kids = tree.children();
  switch (tree.op()) {
    case Operator::Seq: {
      TraceSet acc{Trace{}};
      for (const auto& c : kids) {
        acc = detail::concat(acc, enumerate_tree_language(c, k, cap), k, cap);
        if (acc.empty()) break;
      }
      return acc;
    }
    case Operator::Xor: {
      TraceSet acc;
      for (const auto& c : kids) {
        auto s = enumerate_tree_language(c, k, cap);
        acc.insert(s.begin(), s.end());
        detail::check_cap(acc, cap);
      }
      return acc;
    }
    case Operator::And: {
      TraceSet acc{Trace{}};
      for (const auto& c : kids) {
        acc = detail::shuffle_pair(acc, enumerate_tree_language(c, k, cap), k, cap);
        if (acc.empty()) break;
      }
      return acc;
    }
    case Operator::Loop: {
      // do (redo do)*: grow only from the traces added in the previous round.
      const TraceSet body = enumerate_tree_language(kids[0], k, cap);
      const TraceSet redo = enumerate_tree_language(kids[1], k, cap);
      TraceSet result = body;
      TraceSet frontier = body;
      while (!frontier.empty()) {
        TraceSet grown =
            detail::concat(detail::concat(frontier, redo, k, cap), body, k, cap);
        TraceSet fresh;
        for (auto& t : grown)
          if (!result.contains(t)) fresh.insert(t);
        result.insert(fresh.begin(), fresh.end());
        detail::check_cap(result, cap);
        frontier = std::move(fresh);
      }
      return result;
    }
  }
  return {};
}

}  // namespace wf2pt
