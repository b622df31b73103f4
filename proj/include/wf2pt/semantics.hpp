#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/petri_net.hpp"

namespace wf2pt {

/// Bounds for every state-space traversal.
struct ExplorationCaps {
  std::size_t max_states = 1'000'000;
  unsigned max_token_per_place = 8;
  // Soundness checking switches to decision diagrams once this many
  // markings have been stored explicitly.
  std::size_t symbolic_after = 100'000;
  std::size_t max_bdd_nodes = std::size_t{1} << 22;
};

template <class L>
TransitionSet enabled(const LabeledNet<L>& net, const Marking& marking) {
  TransitionSet out;
  for (const auto& t : net.transitions()) {
    bool ok = true;
    for (const auto& p : net.preset(t)) {
      if (marking.count(p) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(t);
  }
  return out;
}

template <class L>
bool is_enabled(const LabeledNet<L>& net, const Marking& marking,
                const TransitionId& t) {
  for (const auto& p : net.preset(t))
    if (marking.count(p) == 0) return false;
  return true;
}

/// (marking \ pre(t)) + post(t). Throws FiringNotEnabled.
template <class L>
Marking fire(const LabeledNet<L>& net, const Marking& marking,
             const TransitionId& t) {
  if (!is_enabled(net, marking, t)) throw FiringNotEnabled(t.str());
  Marking next = marking;
  for (const auto& p : net.preset(t)) next.remove(p);
  for (const auto& p : net.postset(t)) next.add(p);
  return next;
}

struct ReachabilityGraph {
  struct Edge {
    std::size_t from;
    TransitionId transition;
    std::size_t to;
  };
  std::vector<Marking> markings;  // BFS discovery order; [0] is the initial one
  std::vector<Edge> edges;
};

namespace detail {

// Index-based copy of a net for the hot exploration loops. A marking is a
// byte string of per-place counts, which gives hashing and equality for free.
struct CompiledNet {
  std::vector<PlaceId> places;
  std::vector<TransitionId> transitions;
  std::vector<std::vector<std::uint32_t>> pre;
  std::vector<std::vector<std::uint32_t>> post;
  std::unordered_map<PlaceId, std::uint32_t> place_index;

  template <class L>
  explicit CompiledNet(const LabeledNet<L>& net)
      : places(net.places()), transitions(net.transitions()) {
    for (std::uint32_t i = 0; i < places.size(); ++i) place_index[places[i]] = i;
    pre.reserve(transitions.size());
    post.reserve(transitions.size());
    for (const auto& t : transitions) {
      auto& in = pre.emplace_back();
      for (const auto& p : net.preset(t)) in.push_back(place_index.at(p));
      auto& out = post.emplace_back();
      for (const auto& p : net.postset(t)) out.push_back(place_index.at(p));
    }
  }

  std::string encode(const Marking& m) const {
    std::string bytes(places.size(), '\0');
    for (const auto& [p, c] : m.counts()) {
      auto it = place_index.find(p);
      if (it == place_index.end()) throw UnknownNode(p.str());
      if (c > std::numeric_limits<unsigned char>::max())
        throw StateSpaceExhausted(StateSpaceExhausted::Cause::Tokens, p.str());
      bytes[it->second] = static_cast<char>(c);
    }
    return bytes;
  }

  Marking decode(const std::string& bytes) const {
    Marking m;
    for (std::size_t i = 0; i < bytes.size(); ++i)
      m.add(places[i], static_cast<unsigned char>(bytes[i]));
    return m;
  }

  bool enabled(const std::string& m, std::size_t t) const {
    for (auto p : pre[t])
      if (m[p] == 0) return false;
    return true;
  }

  // Fires t on a copy of m. Returns the index of a place exceeding
  // `token_cap`, or -1.
  long fire(const std::string& m, std::size_t t, std::string& out,
            unsigned token_cap) const {
    out = m;
    for (auto p : pre[t]) --out[p];
    long over = -1;
    for (auto p : post[t]) {
      auto c = static_cast<unsigned char>(out[p]);
      if (c >= token_cap && over < 0) over = p;
      if (c < std::numeric_limits<unsigned char>::max())
        out[p] = static_cast<char>(c + 1);
    }
    return over;
  }
};

inline void check_caps(const ExplorationCaps& caps) {
  if (caps.max_states == 0 || caps.max_token_per_place == 0)
    throw std::invalid_argument("exploration caps must be positive");
}

}  // namespace detail

/// Breadth-first reachability graph from `initial`. Throws
/// StateSpaceExhausted when more than caps.max_states markings are found or
/// a place would exceed caps.max_token_per_place tokens.
template <class L>
ReachabilityGraph explore_state_space(const LabeledNet<L>& net,
                                      const Marking& initial,
                                      const ExplorationCaps& caps = {}) {
  detail::check_caps(caps);
  const detail::CompiledNet cn(net);
  unsigned token_cap =
      std::min<unsigned>(caps.max_token_per_place,
                         std::numeric_limits<unsigned char>::max() - 1);

  std::vector<std::string> states;
  std::unordered_map<std::string, std::size_t> index;
  ReachabilityGraph graph;

  auto start = cn.encode(initial);
  for (std::size_t i = 0; i < start.size(); ++i)
    if (static_cast<unsigned char>(start[i]) > token_cap)
      throw StateSpaceExhausted(StateSpaceExhausted::Cause::Tokens,
                                cn.places[i].str());
  index.emplace(start, 0);
  states.push_back(std::move(start));

  std::string next;
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    for (std::size_t t = 0; t < cn.transitions.size(); ++t) {
      if (!cn.enabled(states[cur], t)) continue;
      long over = cn.fire(states[cur], t, next, token_cap);
      if (over >= 0)
        throw StateSpaceExhausted(StateSpaceExhausted::Cause::Tokens,
                                  cn.places[static_cast<std::size_t>(over)].str());
      auto [it, inserted] = index.emplace(next, states.size());
      if (inserted) {
        if (states.size() >= caps.max_states)
          throw StateSpaceExhausted(StateSpaceExhausted::Cause::States);
        states.push_back(next);
      }
      graph.edges.push_back({cur, cn.transitions[t], it->second});
    }
  }
  graph.markings.reserve(states.size());
  for (const auto& s : states) graph.markings.push_back(cn.decode(s));
  return graph;
}

}  // namespace wf2pt
