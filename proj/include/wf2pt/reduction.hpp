#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wf2pt/canonical.hpp"
#include "wf2pt/errors.hpp"
#include "wf2pt/label.hpp"
#include "wf2pt/petri_net.hpp"
#include "wf2pt/process_tree.hpp"
#include "wf2pt/workflow.hpp"

namespace wf2pt {

using PTreeNet = LabeledNet<ProcessTree>;

/// A detected binary pattern. `members` is ordered: (first, second) for Seq,
/// (do, redo) for Loop, scan order for Xor and And.
struct PatternMatch {
  Operator kind;
  std::vector<TransitionId> members;
  PlaceSet fragment_places;
  Marking initial;  // M_i of the fragment system net
  Marking final;    // M_f of the fragment system net
};

struct ReductionStep {
  PatternMatch match;
  TransitionId new_transition;
  ProcessTree new_label;
  PlaceSet removed_places;
};

struct ReductionOptions {
  // Also require equal pre-sets of all enablers and equal post-sets of all
  // followers for the And pattern.
  bool strict_and = false;
};

namespace detail {

inline bool disjoint(const PlaceSet& a, const PlaceSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

inline bool is_singleton(const TransitionSet& s, const TransitionId& t) {
  return s.size() == 1 && *s.begin() == t;
}

inline bool is_seq(const PTreeNet& n, const TransitionId& a, const TransitionId& b) {
  if (a == b) return false;
  const auto& mid = n.postset(a);
  if (mid.empty() || mid != n.preset(b)) return false;
  for (const auto& p : mid)
    if (!is_singleton(n.preset(p), a) || !is_singleton(n.postset(p), b)) return false;
  return disjoint(mid, n.postset(b));
}

inline bool is_xor(const PTreeNet& n, const TransitionId& a, const TransitionId& b) {
  if (a == b) return false;
  return n.preset(a) == n.preset(b) && n.postset(a) == n.postset(b) &&
         n.preset(a) != n.postset(a);
}

inline bool is_and(const PTreeNet& n, const TransitionId& a, const TransitionId& b,
                   bool strict) {
  if (a == b) return false;
  const auto& pre_a = n.preset(a);
  const auto& pre_b = n.preset(b);
  const auto& post_a = n.postset(a);
  const auto& post_b = n.postset(b);
  if (pre_a.empty() || pre_b.empty() || post_a.empty() || post_b.empty()) return false;
  if (!disjoint(pre_a, pre_b) || !disjoint(post_a, post_b)) return false;
  auto owned_by = [](const TransitionSet& s, const TransitionId& t) {
    return is_singleton(s, t);
  };
  for (const auto& p : pre_a) if (!owned_by(n.postset(p), a)) return false;
  for (const auto& p : pre_b) if (!owned_by(n.postset(p), b)) return false;
  for (const auto& p : post_a) if (!owned_by(n.preset(p), a)) return false;
  for (const auto& p : post_b) if (!owned_by(n.preset(p), b)) return false;

  // All pre-set places share one producer set, which excludes the members;
  // likewise for the consumers of the post-set places.
  const TransitionSet& enablers = n.preset(*pre_a.begin());
  if (enablers.contains(a) || enablers.contains(b)) return false;
  for (const auto* pre : {&pre_a, &pre_b})
    for (const auto& p : *pre)
      if (n.preset(p) != enablers) return false;
  const TransitionSet& followers = n.postset(*post_a.begin());
  if (followers.contains(a) || followers.contains(b)) return false;
  for (const auto* post : {&post_a, &post_b})
    for (const auto& p : *post)
      if (n.postset(p) != followers) return false;

  if (strict) {
    for (const auto& t : enablers)
      if (n.preset(t) != n.preset(*enablers.begin())) return false;
    for (const auto& t : followers)
      if (n.postset(t) != n.postset(*followers.begin())) return false;
  }
  return true;
}

// do/redo orientation: the do-part owns its pre-set places as their only
// consumer and its post-set places as their only producer.
inline bool is_loop(const PTreeNet& n, const TransitionId& body, const TransitionId& redo) {
  if (body == redo) return false;
  const auto& pre = n.preset(body);
  const auto& post = n.postset(body);
  if (pre.empty() || post.empty()) return false;
  if (pre != n.postset(redo) || post != n.preset(redo)) return false;
  if (!disjoint(pre, n.preset(redo)) || !disjoint(post, n.postset(redo))) return false;
  for (const auto& p : pre) if (!is_singleton(n.postset(p), body)) return false;
  for (const auto& p : post) if (!is_singleton(n.preset(p), body)) return false;
  return true;
}

inline bool pattern_holds(const PTreeNet& n, Operator kind, const TransitionId& a,
                          const TransitionId& b, const ReductionOptions& opts) {
  switch (kind) {
    case Operator::Seq: return is_seq(n, a, b);
    case Operator::Xor: return is_xor(n, a, b);
    case Operator::And: return is_and(n, a, b, opts.strict_and);
    case Operator::Loop: return is_loop(n, a, b);
  }
  return false;
}

inline Marking as_marking(const PlaceSet& ps) {
  Marking m;
  for (const auto& p : ps) m.add(p);
  return m;
}

inline PatternMatch make_match(const PTreeNet& n, Operator kind, const TransitionId& a,
                               const TransitionId& b) {
  PatternMatch m{kind, {a, b}, {}, {}, {}};
  PlaceSet pre = n.preset(a);
  PlaceSet post = n.postset(a);
  if (kind == Operator::Seq) {
    post = n.postset(b);
  } else if (kind == Operator::Xor || kind == Operator::And) {
    pre.insert(n.preset(b).begin(), n.preset(b).end());
    post.insert(n.postset(b).begin(), n.postset(b).end());
  }
  m.fragment_places = pre;
  m.fragment_places.insert(post.begin(), post.end());
  if (kind == Operator::Seq)
    m.fragment_places.insert(n.preset(b).begin(), n.preset(b).end());
  m.initial = as_marking(pre);
  m.final = as_marking(post);
  return m;
}

inline std::vector<TransitionId> by_sequence(const PTreeNet& n, TransitionSet cands,
                                             const TransitionId& after) {
  std::vector<TransitionId> out;
  const auto floor = n.sequence(after);
  for (auto& t : cands)
    if (n.sequence(t) > floor) out.push_back(t);
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    return n.sequence(x) < n.sequence(y);
  });
  return out;
}

}  // namespace detail

/// First (t1, t2) in scan order where t1's post-set is exactly t2's pre-set
/// and every place in between links only t1 to t2.
inline std::optional<PatternMatch> find_seq_pattern(const PTreeNet& net) {
  for (const auto& a : net.transitions()) {
    const auto& post = net.postset(a);
    if (post.empty()) continue;
    const auto& consumers = net.postset(*post.begin());
    if (consumers.size() != 1) continue;
    const auto& b = *consumers.begin();
    if (detail::is_seq(net, a, b)) return detail::make_match(net, Operator::Seq, a, b);
  }
  return std::nullopt;
}

/// First pair sharing both pre-set and post-set.
inline std::optional<PatternMatch> find_xor_pattern(const PTreeNet& net) {
  for (const auto& a : net.transitions()) {
    const auto& pre = net.preset(a);
    if (pre.empty()) continue;
    for (const auto& b : detail::by_sequence(net, net.postset(*pre.begin()), a))
      if (detail::is_xor(net, a, b)) return detail::make_match(net, Operator::Xor, a, b);
  }
  return std::nullopt;
}

/// First pair of concurrent transitions: disjoint, exclusively owned pre-
/// and post-sets, common enablers and common followers.
inline std::optional<PatternMatch> find_and_pattern(const PTreeNet& net,
                                                    const ReductionOptions& opts = {}) {
  for (const auto& a : net.transitions()) {
    const auto& pre = net.preset(a);
    if (pre.empty()) continue;
    const auto& enablers = net.preset(*pre.begin());
    if (enablers.empty()) continue;
    TransitionSet cands;
    for (const auto& e : enablers)
      for (const auto& p : net.postset(e))
        cands.insert(net.postset(p).begin(), net.postset(p).end());
    for (const auto& b : detail::by_sequence(net, std::move(cands), a))
      if (detail::is_and(net, a, b, opts.strict_and))
        return detail::make_match(net, Operator::And, a, b);
  }
  return std::nullopt;
}

/// First (do, redo) pair where each one's post-set is the other's pre-set.
inline std::optional<PatternMatch> find_loop_pattern(const PTreeNet& net) {
  for (const auto& a : net.transitions()) {
    const auto& post = net.postset(a);
    if (post.empty()) continue;
    TransitionSet cands = net.postset(*post.begin());
    cands.erase(a);
    std::vector<TransitionId> ordered(cands.begin(), cands.end());
    std::sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
      return net.sequence(x) < net.sequence(y);
    });
    for (const auto& b : ordered)
      if (detail::is_loop(net, a, b)) return detail::make_match(net, Operator::Loop, a, b);
  }
  return std::nullopt;
}

namespace detail {

// Replaces the members by `id` carrying `label`; arcs follow the pattern kind.
inline ReductionStep rewrite(PTreeNet& net, const PatternMatch& match, TransitionId id,
                             ProcessTree label) {
  const auto& a = match.members.at(0);
  const auto& b = match.members.at(1);
  PlaceSet pre = net.preset(a);
  PlaceSet post = net.postset(a);
  PlaceSet removed;
  switch (match.kind) {
    case Operator::Seq:
      removed = net.postset(a);
      post = net.postset(b);
      break;
    case Operator::Xor:
    case Operator::And:
      pre.insert(net.preset(b).begin(), net.preset(b).end());
      post.insert(net.postset(b).begin(), net.postset(b).end());
      break;
    case Operator::Loop:
      break;
  }
  net.remove_transition(a);
  net.remove_transition(b);
  for (const auto& p : removed) net.remove_place(p);
  net.add_transition(id, label);
  for (const auto& p : pre) net.add_arc(p, id);
  for (const auto& p : post) net.add_arc(id, p);
  return ReductionStep{match, std::move(id), std::move(label), std::move(removed)};
}

inline void ensure_current(const PTreeNet& net, const PatternMatch& match,
                           const ReductionOptions& opts) {
  if (match.members.size() != 2) throw StaleMatch("binary patterns only");
  for (const auto& t : match.members)
    if (!net.contains(t)) throw StaleMatch("transition " + t.str() + " is gone");
  if (!pattern_holds(net, match.kind, match.members[0], match.members[1], opts))
    throw StaleMatch(std::string(operator_name(match.kind)) + " pattern no longer holds");
}

inline ProcessTree combined_label(const PTreeNet& net, const PatternMatch& match) {
  return ProcessTree(match.kind,
                     {net.label(match.members[0]), net.label(match.members[1])});
}

}  // namespace detail

/// Applies the reduction for `match` to a copy of `net`. Throws StaleMatch
/// when the pattern does not hold on `net`.
inline std::pair<PTreeNet, ReductionStep> apply_reduction(const PTreeNet& net,
                                                          const PatternMatch& match,
                                                          const ReductionOptions& opts = {}) {
  detail::ensure_current(net, match, opts);
  PTreeNet out = net;
  auto label = detail::combined_label(out, match);
  auto step = detail::rewrite(out, match, out.fresh_transition_id("r"), std::move(label));
  return {std::move(out), std::move(step)};
}

inline PTreeNet lift_labels(const LabeledNet<Label>& net) {
  PTreeNet out;
  for (const auto& p : net.places()) out.add_place(p);
  for (const auto& t : net.transitions()) {
    out.add_transition(t, ProcessTree(net.label(t)));
    for (const auto& p : net.preset(t)) out.add_arc(p, t);
    for (const auto& p : net.postset(t)) out.add_arc(t, p);
  }
  return out;
}

inline WorkflowNet<ProcessTree> lift_labels(const WorkflowNet<Label>& wf) {
  return WorkflowNet<ProcessTree>(lift_labels(wf.net()), wf.source(), wf.sink());
}

/// Detectors in fixed order Xor, Seq, And, Loop.
inline std::optional<PatternMatch> find_any_pattern(const PTreeNet& net,
                                                    const ReductionOptions& opts = {}) {
  if (auto m = find_xor_pattern(net)) return m;
  if (auto m = find_seq_pattern(net)) return m;
  if (auto m = find_and_pattern(net, opts)) return m;
  return find_loop_pattern(net);
}

struct ReductionOutcome {
  std::optional<ProcessTree> tree;  // canonical tree on success
  WorkflowNet<ProcessTree> residual;
  std::vector<ReductionStep> steps;

  bool success() const noexcept { return tree.has_value(); }
};

/// Reduces until no pattern applies. Succeeds when exactly one transition
/// remains, consuming from the source and producing on the sink.
inline ReductionOutcome reduce_to_tree(const WorkflowNet<Label>& wf,
                                       const ReductionOptions& opts = {}) {
  PTreeNet net = lift_labels(wf.net());
  std::vector<ReductionStep> steps;
  std::uint64_t counter = 1;
  auto fresh = [&] {
    while (true) {
      TransitionId id("r" + std::to_string(counter++));
      if (!net.contains(id) && !net.contains(PlaceId(id.str()))) return id;
    }
  };
  const std::size_t initial_transitions = net.transitions().size();
  while (auto match = find_any_pattern(net, opts)) {
    const std::size_t before = net.transitions().size();
    auto label = detail::combined_label(net, *match);
    steps.push_back(detail::rewrite(net, *match, fresh(), std::move(label)));
    if (net.transitions().size() + 1 != before)
      throw std::logic_error("reduction did not remove exactly one transition");
  }
  if (initial_transitions > 0 && steps.size() > initial_transitions - 1)
    throw std::logic_error("more reductions than transitions");

  std::optional<ProcessTree> tree;
  if (net.transitions().size() == 1 && net.places().size() == 2) {
    const auto& t = net.transitions().front();
    if (net.preset(t) == PlaceSet{wf.source()} && net.postset(t) == PlaceSet{wf.sink()})
      tree = canonicalize(net.label(t));
  }
  return ReductionOutcome{std::move(tree),
                          WorkflowNet<ProcessTree>(std::move(net), wf.source(), wf.sink()),
                          std::move(steps)};
}

}  // namespace wf2pt
