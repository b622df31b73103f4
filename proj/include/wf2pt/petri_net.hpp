#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wf2pt/errors.hpp"

namespace wf2pt {

/// String-backed node identifier. The tag keeps place and transition ids
/// from being mixed up.
template <class Tag>
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

 private:
  std::string value_;
};

struct PlaceTag {};
struct TransitionTag {};
using PlaceId = NodeId<PlaceTag>;
using TransitionId = NodeId<TransitionTag>;
using PlaceSet = std::set<PlaceId>;
using TransitionSet = std::set<TransitionId>;

}  // namespace wf2pt

template <class Tag>
struct std::hash<wf2pt::NodeId<Tag>> {
  std::size_t operator()(const wf2pt::NodeId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

namespace wf2pt {

/// Petri net (P, T, F, l) over an arbitrary label domain L. Arcs have
/// multiplicity one; iteration over places and transitions follows
/// insertion order.
template <class L>
class LabeledNet {
 public:
  using label_type = L;

  void add_place(PlaceId id) {
    if (places_.contains(id))
      throw std::invalid_argument("duplicate place id: " + id.str());
    if (transitions_.contains(TransitionId(id.str())))
      throw std::invalid_argument("id used by a transition: " + id.str());
    place_order_.push_back(id);
    places_.emplace(std::move(id), PlaceNode{});
  }

  void add_transition(TransitionId id, L label) {
    if (transitions_.contains(id))
      throw std::invalid_argument("duplicate transition id: " + id.str());
    if (places_.contains(PlaceId(id.str())))
      throw std::invalid_argument("id used by a place: " + id.str());
    transition_order_.push_back(id);
    transitions_.emplace(std::move(id),
                         TransitionNode{std::move(label), {}, {}, next_seq_++});
  }

  // Adding an existing arc is a no-op.
  void add_arc(const PlaceId& p, const TransitionId& t) {
    place_node(p).post.insert(t);
    transition_node(t).pre.insert(p);
  }

  void add_arc(const TransitionId& t, const PlaceId& p) {
    transition_node(t).post.insert(p);
    place_node(p).pre.insert(t);
  }

  void remove_arc(const PlaceId& p, const TransitionId& t) {
    place_node(p).post.erase(t);
    transition_node(t).pre.erase(p);
  }

  void remove_arc(const TransitionId& t, const PlaceId& p) {
    transition_node(t).post.erase(p);
    place_node(p).pre.erase(t);
  }

  void remove_place(const PlaceId& p) {
    auto& node = place_node(p);
    for (const auto& t : node.pre) transitions_.at(t).post.erase(p);
    for (const auto& t : node.post) transitions_.at(t).pre.erase(p);
    places_.erase(p);
    place_order_.erase(std::find(place_order_.begin(), place_order_.end(), p));
  }

  void remove_transition(const TransitionId& t) {
    auto& node = transition_node(t);
    for (const auto& p : node.pre) places_.at(p).post.erase(t);
    for (const auto& p : node.post) places_.at(p).pre.erase(t);
    transitions_.erase(t);
    transition_order_.erase(
        std::find(transition_order_.begin(), transition_order_.end(), t));
  }

  void set_label(const TransitionId& t, L label) {
    transition_node(t).label = std::move(label);
  }

  bool contains(const PlaceId& p) const { return places_.contains(p); }
  bool contains(const TransitionId& t) const { return transitions_.contains(t); }

  const std::vector<PlaceId>& places() const noexcept { return place_order_; }
  const std::vector<TransitionId>& transitions() const noexcept {
    return transition_order_;
  }

  const L& label(const TransitionId& t) const { return transition_node(t).label; }

  const PlaceSet& preset(const TransitionId& t) const {
    return transition_node(t).pre;
  }
  const PlaceSet& postset(const TransitionId& t) const {
    return transition_node(t).post;
  }
  const TransitionSet& preset(const PlaceId& p) const { return place_node(p).pre; }
  const TransitionSet& postset(const PlaceId& p) const {
    return place_node(p).post;
  }

  // Monotone insertion counter; later-added transitions compare greater.
  std::uint64_t sequence(const TransitionId& t) const {
    return transition_node(t).seq;
  }

  std::size_t arc_count() const {
    std::size_t n = 0;
    for (const auto& [id, node] : transitions_) n += node.pre.size() + node.post.size();
    return n;
  }

  std::size_t size() const noexcept {
    return place_order_.size() + transition_order_.size();
  }

  // Fresh transition id of the form <prefix><n>, n counting up from 1.
  TransitionId fresh_transition_id(const std::string& prefix) const {
    for (std::uint64_t n = 1;; ++n) {
      TransitionId id(prefix + std::to_string(n));
      if (!transitions_.contains(id) && !places_.contains(PlaceId(id.str())))
        return id;
    }
  }

  // Structural equality: same ordered node lists, labels and arcs.
  friend bool operator==(const LabeledNet& a, const LabeledNet& b) {
    if (a.place_order_ != b.place_order_ ||
        a.transition_order_ != b.transition_order_)
      return false;
    for (const auto& t : a.transition_order_) {
      const auto& x = a.transitions_.at(t);
      const auto& y = b.transitions_.at(t);
      if (!(x.label == y.label) || x.pre != y.pre || x.post != y.post)
        return false;
    }
    return true;
  }

 private:
  struct PlaceNode {
    TransitionSet pre;
    TransitionSet post;
  };
  struct TransitionNode {
    L label;
    PlaceSet pre;
    PlaceSet post;
    std::uint64_t seq;
  };

  PlaceNode& place_node(const PlaceId& p) {
    auto it = places_.find(p);
    if (it == places_.end()) throw UnknownNode(p.str());
    return it->second;
  }
  const PlaceNode& place_node(const PlaceId& p) const {
    auto it = places_.find(p);
    if (it == places_.end()) throw UnknownNode(p.str());
    return it->second;
  }
  TransitionNode& transition_node(const TransitionId& t) {
    auto it = transitions_.find(t);
    if (it == transitions_.end()) throw UnknownNode(t.str());
    return it->second;
  }
  const TransitionNode& transition_node(const TransitionId& t) const {
    auto it = transitions_.find(t);
    if (it == transitions_.end()) throw UnknownNode(t.str());
    return it->second;
  }

  std::unordered_map<PlaceId, PlaceNode> places_;
  std::unordered_map<TransitionId, TransitionNode> transitions_;
  std::vector<PlaceId> place_order_;
  std::vector<TransitionId> transition_order_;
  std::uint64_t next_seq_ = 0;
};

// Pre-/post-set accessors, including the lifted forms over node sets.

template <class L>
const PlaceSet& preset(const LabeledNet<L>& net, const TransitionId& t) {
  return net.preset(t);
}
template <class L>
const PlaceSet& postset(const LabeledNet<L>& net, const TransitionId& t) {
  return net.postset(t);
}
template <class L>
const TransitionSet& preset(const LabeledNet<L>& net, const PlaceId& p) {
  return net.preset(p);
}
template <class L>
const TransitionSet& postset(const LabeledNet<L>& net, const PlaceId& p) {
  return net.postset(p);
}

template <class L>
PlaceSet preset(const LabeledNet<L>& net, const TransitionSet& ts) {
  PlaceSet out;
  for (const auto& t : ts) out.insert(net.preset(t).begin(), net.preset(t).end());
  return out;
}
template <class L>
PlaceSet postset(const LabeledNet<L>& net, const TransitionSet& ts) {
  PlaceSet out;
  for (const auto& t : ts) out.insert(net.postset(t).begin(), net.postset(t).end());
  return out;
}
template <class L>
TransitionSet preset(const LabeledNet<L>& net, const PlaceSet& ps) {
  TransitionSet out;
  for (const auto& p : ps) out.insert(net.preset(p).begin(), net.preset(p).end());
  return out;
}
template <class L>
TransitionSet postset(const LabeledNet<L>& net, const PlaceSet& ps) {
  TransitionSet out;
  for (const auto& p : ps) out.insert(net.postset(p).begin(), net.postset(p).end());
  return out;
}

/// Multiset of places. Zero counts are never stored.
class Marking {
 public:
  Marking() = default;
  Marking(std::initializer_list<PlaceId> places) {
    for (const auto& p : places) add(p);
  }

  void add(const PlaceId& p, unsigned n = 1) {
    if (n != 0) counts_[p] += n;
  }

  // Precondition: count(p) >= n.
  void remove(const PlaceId& p, unsigned n = 1) {
    auto it = counts_.find(p);
    if (it == counts_.end() || it->second < n)
      throw std::logic_error("marking underflow on " + p.str());
    it->second -= n;
    if (it->second == 0) counts_.erase(it);
  }

  unsigned count(const PlaceId& p) const {
    auto it = counts_.find(p);
    return it == counts_.end() ? 0 : it->second;
  }

  bool empty() const noexcept { return counts_.empty(); }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [p, c] : counts_) n += c;
    return n;
  }

  const std::map<PlaceId, unsigned>& counts() const noexcept { return counts_; }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;

  // Renders as [p1,p2^2].
  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const auto& [p, c] : counts_) {
      if (!first) os << ',';
      first = false;
      os << p.str();
      if (c > 1) os << '^' << c;
    }
    os << ']';
    return os.str();
  }

 private:
  std::map<PlaceId, unsigned> counts_;
};

}  // namespace wf2pt
