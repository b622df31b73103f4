#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/label.hpp"
#include "wf2pt/petri_net.hpp"
#include "wf2pt/semantics.hpp"
#include "wf2pt/symbolic.hpp"
#include "wf2pt/trace.hpp"

namespace wf2pt {

/// Outcome of the structural workflow-net check, one entry per failed item.
struct WorkflowValidation {
  std::vector<std::string> problems;
  std::vector<PlaceId> source_candidates;  // places with an empty pre-set
  std::vector<PlaceId> sink_candidates;    // places with an empty post-set
  std::vector<std::string> off_path;       // nodes not on a source-sink path

  bool valid() const noexcept { return problems.empty(); }
};

namespace detail {

template <class L>
void collect_boundary(const LabeledNet<L>& net, WorkflowValidation& v) {
  for (const auto& p : net.places()) {
    if (net.preset(p).empty()) v.source_candidates.push_back(p);
    if (net.postset(p).empty()) v.sink_candidates.push_back(p);
  }
}

inline std::string join_ids(const std::vector<PlaceId>& ids) {
  std::string out;
  for (const auto& p : ids) out += (out.empty() ? "" : ",") + p.str();
  return out;
}

}  // namespace detail

/// Checks the three workflow-net conditions for the given source and sink.
/// The path condition is evaluated as forward reachability from the source
/// plus backward reachability from the sink.
template <class L>
WorkflowValidation validate_workflow_net(const LabeledNet<L>& net,
                                         const PlaceId& source,
                                         const PlaceId& sink) {
  WorkflowValidation v;
  detail::collect_boundary(net, v);
  if (!net.contains(source)) v.problems.push_back("unknown source " + source.str());
  if (!net.contains(sink)) v.problems.push_back("unknown sink " + sink.str());
  if (!v.problems.empty()) return v;
  if (source == sink) v.problems.push_back("source and sink coincide");

  if (!net.preset(source).empty())
    v.problems.push_back("source " + source.str() + " has a non-empty pre-set");
  if (v.source_candidates.size() != 1 || v.source_candidates.front() != source)
    v.problems.push_back("non-unique source: places with empty pre-set [" +
                         detail::join_ids(v.source_candidates) + "]");
  if (!net.postset(sink).empty())
    v.problems.push_back("sink " + sink.str() + " has a non-empty post-set");
  if (v.sink_candidates.size() != 1 || v.sink_candidates.front() != sink)
    v.problems.push_back("non-unique sink: places with empty post-set [" +
                         detail::join_ids(v.sink_candidates) + "]");

  // Two searches over the arc graph.
  std::unordered_set<PlaceId> fwd_p{source}, bwd_p{sink};
  std::unordered_set<TransitionId> fwd_t, bwd_t;
  std::vector<PlaceId> stack{source};
  while (!stack.empty()) {
    auto p = stack.back();
    stack.pop_back();
    for (const auto& t : net.postset(p)) {
      if (!fwd_t.insert(t).second) continue;
      for (const auto& q : net.postset(t))
        if (fwd_p.insert(q).second) stack.push_back(q);
    }
  }
  stack = {sink};
  while (!stack.empty()) {
    auto p = stack.back();
    stack.pop_back();
    for (const auto& t : net.preset(p)) {
      if (!bwd_t.insert(t).second) continue;
      for (const auto& q : net.preset(t))
        if (bwd_p.insert(q).second) stack.push_back(q);
    }
  }
  for (const auto& p : net.places())
    if (!fwd_p.contains(p) || !bwd_p.contains(p)) v.off_path.push_back(p.str());
  for (const auto& t : net.transitions())
    if (!fwd_t.contains(t) || !bwd_t.contains(t)) v.off_path.push_back(t.str());
  for (const auto& n : v.off_path)
    v.problems.push_back(n + " is not on any path from source to sink");
  return v;
}

/// Workflow net: a labeled net with a validated unique source and sink.
template <class L>
class WorkflowNet {
 public:
  // Throws NotAWorkflowNet when the structural conditions fail.
  WorkflowNet(LabeledNet<L> net, PlaceId source, PlaceId sink)
      : net_(std::move(net)), source_(std::move(source)), sink_(std::move(sink)) {
    auto v = validate_workflow_net(net_, source_, sink_);
    if (!v.valid()) throw NotAWorkflowNet(v.problems);
  }

  const LabeledNet<L>& net() const noexcept { return net_; }
  const PlaceId& source() const noexcept { return source_; }
  const PlaceId& sink() const noexcept { return sink_; }

  Marking initial_marking() const { return Marking{source_}; }
  Marking final_marking() const { return Marking{sink_}; }

  friend bool operator==(const WorkflowNet&, const WorkflowNet&) = default;

 private:
  LabeledNet<L> net_;
  PlaceId source_;
  PlaceId sink_;
};

/// Infers source and sink as the unique empty-pre-set / empty-post-set
/// places. Throws NotAWorkflowNet naming the offending places.
template <class L>
WorkflowNet<L> infer_workflow_net(LabeledNet<L> net) {
  WorkflowValidation v;
  detail::collect_boundary(net, v);
  std::vector<std::string> problems;
  if (v.source_candidates.size() != 1)
    problems.push_back("expected one place with empty pre-set, found [" +
                       detail::join_ids(v.source_candidates) + "]");
  if (v.sink_candidates.size() != 1)
    problems.push_back("expected one place with empty post-set, found [" +
                       detail::join_ids(v.sink_candidates) + "]");
  if (!problems.empty()) throw NotAWorkflowNet(problems);
  auto source = v.source_candidates.front();
  auto sink = v.sink_candidates.front();
  return WorkflowNet<L>(std::move(net), std::move(source), std::move(sink));
}

struct SoundnessVerdict {
  struct NotSafe {
    Marking marking;
  };
  struct CannotComplete {
    Marking marking;
  };
  struct DeadTransition {
    TransitionId transition;
  };
  struct Exhausted {};
  using Violation = std::variant<NotSafe, CannotComplete, DeadTransition, Exhausted>;

  bool sound = false;
  std::optional<Violation> violation;
  std::size_t states_explored = 0;

  bool inconclusive() const {
    return violation && std::holds_alternative<Exhausted>(*violation);
  }

  std::string describe() const {
    if (sound) return "sound";
    if (!violation) return "unsound";
    return std::visit(
        [](const auto& v) -> std::string {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, NotSafe>)
            return "unsound: not safe, reached " + v.marking.to_string();
          else if constexpr (std::is_same_v<V, CannotComplete>)
            return "unsound: final marking unreachable from " +
                   v.marking.to_string();
          else if constexpr (std::is_same_v<V, DeadTransition>)
            return "unsound: dead transition " + v.transition.str();
          else
            return "inconclusive: state space cap exhausted";
        },
        *violation);
  }
};

namespace detail {

// Soundness over sets of safe markings held as decision diagrams, one
// variable per place in insertion order. Forward images, applied one
// transition at a time until nothing changes, give the reachable set;
// backward images from the final marking give the coreachable one. Unsafe
// firings are caught before the image is taken.
template <class L>
SoundnessVerdict symbolic_soundness(const WorkflowNet<L>& wf, const CompiledNet& cn,
                                    const ExplorationCaps& caps) {
  using Cube = Bdd::Cube;
  const auto np = static_cast<std::uint32_t>(cn.places.size());
  const std::size_t nt = cn.transitions.size();
  Bdd bdd(np, caps.max_bdd_nodes);
  SoundnessVerdict verdict;

  auto only = [&](std::uint32_t on) {
    Cube c;
    for (std::uint32_t p = 0; p < np; ++p) c.emplace_back(p, p == on);
    return bdd.cube(c);
  };
  auto sorted = [](Cube c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  auto contains = [](const std::vector<std::uint32_t>& v, std::uint32_t p) {
    return std::find(v.begin(), v.end(), p) != v.end();
  };
  auto decode = [&](const std::vector<std::uint32_t>& ones) {
    Marking m;
    for (auto p : ones) m.add(cn.places[p]);
    return m;
  };

  // Per transition: pre=1; pre=1 with post\pre=0 (enabled, safe firing);
  // pre\post=0 with post=1 (result); post=1 with pre\post=0 (backward).
  std::vector<Cube> enabled(nt), fire_in(nt), fire_out(nt), back_in(nt);
  std::vector<std::vector<std::uint32_t>> fresh(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& pre = cn.pre[t];
    const auto& post = cn.post[t];
    for (auto p : pre) {
      enabled[t].emplace_back(p, true);
      fire_in[t].emplace_back(p, true);
      if (!contains(post, p)) {
        fire_out[t].emplace_back(p, false);
        back_in[t].emplace_back(p, false);
      }
    }
    for (auto p : post) {
      fire_out[t].emplace_back(p, true);
      back_in[t].emplace_back(p, true);
      if (!contains(pre, p)) {
        fire_in[t].emplace_back(p, false);
        fresh[t].push_back(p);
      }
    }
    enabled[t] = sorted(enabled[t]);
    fire_in[t] = sorted(fire_in[t]);
    fire_out[t] = sorted(fire_out[t]);
    back_in[t] = sorted(back_in[t]);
  }

  try {
    Bdd::Ref reach = only(cn.place_index.at(wf.source()));
    std::vector<bool> ever_enabled(nt, false);
    for (Bdd::Ref before = Bdd::kFalse; before != reach;) {
      before = reach;
      for (std::size_t t = 0; t < nt; ++t) {
        if (bdd.cofactor(reach, enabled[t]) == Bdd::kFalse) continue;
        ever_enabled[t] = true;
        for (auto q : fresh[t]) {
          Cube bad = enabled[t];
          bad.emplace_back(q, true);
          const Bdd::Ref hit = bdd.conj(reach, bdd.cube(sorted(std::move(bad))));
          if (hit == Bdd::kFalse) continue;
          Marking unsafe = decode(bdd.pick_one(hit));
          for (auto p : cn.pre[t]) unsafe.remove(cn.places[p]);
          for (auto p : cn.post[t]) unsafe.add(cn.places[p]);
          verdict.violation = SoundnessVerdict::NotSafe{std::move(unsafe)};
          verdict.states_explored = static_cast<std::size_t>(
              std::min(bdd.count(reach), static_cast<long double>(caps.max_states)));
          return verdict;
        }
        reach = bdd.disj(reach, bdd.conj(bdd.cofactor(reach, fire_in[t]), bdd.cube(fire_out[t])));
      }
      const long double n = bdd.count(reach);
      if (n > static_cast<long double>(caps.max_states)) {
        verdict.violation = SoundnessVerdict::Exhausted{};
        verdict.states_explored = caps.max_states;
        return verdict;
      }
      verdict.states_explored = static_cast<std::size_t>(n);
    }

    Bdd::Ref co = bdd.conj(only(cn.place_index.at(wf.sink())), reach);
    for (Bdd::Ref before = Bdd::kFalse; before != co;) {
      before = co;
      for (std::size_t t = nt; t-- > 0;)
        co = bdd.disj(co, bdd.conj(reach, bdd.conj(bdd.cofactor(co, back_in[t]), bdd.cube(fire_in[t]))));
    }
    if (const Bdd::Ref stuck = bdd.diff(reach, co); stuck != Bdd::kFalse) {
      verdict.violation = SoundnessVerdict::CannotComplete{decode(bdd.pick_one(stuck))};
      return verdict;
    }
    for (std::size_t t = 0; t < nt; ++t)
      if (!ever_enabled[t]) {
        verdict.violation = SoundnessVerdict::DeadTransition{cn.transitions[t]};
        return verdict;
      }
  } catch (const Bdd::NodeLimit&) {
    verdict.violation = SoundnessVerdict::Exhausted{};
    return verdict;
  }
  verdict.sound = true;
  return verdict;
}

}  // namespace detail

/// State-space soundness check: safety, option to complete, no dead
/// transitions. Exploration stops at the first marking with two tokens in a
/// place. Past `caps.symbolic_after` stored markings the check restarts on
/// decision diagrams; `caps.max_states` still bounds the reachable count.
template <class L>
SoundnessVerdict check_soundness(const WorkflowNet<L>& wf,
                                 const ExplorationCaps& caps = {}) {
  detail::check_caps(caps);
  const auto& net = wf.net();
  const detail::CompiledNet cn(net);
  const std::size_t np = cn.places.size();
  const std::size_t nt = cn.transitions.size();

  // Markings are safe while stored, so one bit per place suffices.
  auto bit = [](const std::string& m, std::uint32_t p) {
    return (static_cast<unsigned char>(m[p >> 3]) >> (p & 7)) & 1u;
  };
  auto flip = [](std::string& m, std::uint32_t p) {
    m[p >> 3] = static_cast<char>(static_cast<unsigned char>(m[p >> 3]) ^ (1u << (p & 7)));
  };
  auto decode = [&](const std::string& m) {
    Marking out;
    for (std::uint32_t p = 0; p < np; ++p)
      if (bit(m, p)) out.add(cn.places[p]);
    return out;
  };

  const std::string empty((np + 7) / 8, '\0');
  std::string start = empty, final_m = empty;
  flip(start, cn.place_index.at(wf.source()));
  flip(final_m, cn.place_index.at(wf.sink()));

  SoundnessVerdict verdict;
  std::vector<std::string> states{start};
  std::unordered_map<std::string, std::uint32_t> index{{start, 0}};
  std::vector<std::vector<std::uint32_t>> preds(1);
  std::vector<bool> ever_enabled(nt, false);

  std::string next;
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    for (std::size_t t = 0; t < nt; ++t) {
      const auto& m = states[cur];
      bool en = true;
      for (auto p : cn.pre[t])
        if (!bit(m, p)) {
          en = false;
          break;
        }
      if (!en) continue;
      ever_enabled[t] = true;
      next = m;
      for (auto p : cn.pre[t]) flip(next, p);
      for (auto p : cn.post[t]) {
        if (bit(next, p)) {
          Marking unsafe = decode(m);
          for (auto q : cn.pre[t]) unsafe.remove(cn.places[q]);
          for (auto q : cn.post[t]) unsafe.add(cn.places[q]);
          verdict.violation = SoundnessVerdict::NotSafe{std::move(unsafe)};
          verdict.states_explored = states.size();
          return verdict;
        }
        flip(next, p);
      }
      auto [it, inserted] = index.emplace(next, static_cast<std::uint32_t>(states.size()));
      if (inserted) {
        if (states.size() >= caps.symbolic_after && caps.max_states > caps.symbolic_after)
          return detail::symbolic_soundness(wf, cn, caps);
        if (states.size() >= caps.max_states) {
          verdict.violation = SoundnessVerdict::Exhausted{};
          verdict.states_explored = states.size();
          return verdict;
        }
        states.push_back(next);
        preds.emplace_back();
      }
      preds[it->second].push_back(static_cast<std::uint32_t>(cur));
    }
  }
  verdict.states_explored = states.size();

  std::vector<bool> coreach(states.size(), false);
  if (auto f = index.find(final_m); f != index.end()) {
    std::vector<std::uint32_t> stack{f->second};
    coreach[f->second] = true;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (auto q : preds[s])
        if (!coreach[q]) {
          coreach[q] = true;
          stack.push_back(q);
        }
    }
  }
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!coreach[s]) {
      verdict.violation = SoundnessVerdict::CannotComplete{decode(states[s])};
      return verdict;
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!ever_enabled[t]) {
      verdict.violation = SoundnessVerdict::DeadTransition{cn.transitions[t]};
      return verdict;
    }
  }
  verdict.sound = true;
  return verdict;
}

/// Visible language of complete runs ([source] to [sink]) whose projection
/// onto activities has length <= max_visible_length. States are
/// (marking, visible prefix) pairs, so silent cycles terminate.
inline TraceSet enumerate_net_language(const WorkflowNet<Label>& wf,
                                       std::size_t max_visible_length,
                                       const ExplorationCaps& caps = {},
                                       std::size_t result_cap = kDefaultTraceCap) {
  detail::check_caps(caps);
  const auto& net = wf.net();
  const detail::CompiledNet cn(net);
  unsigned token_cap =
      std::min<unsigned>(caps.max_token_per_place,
                         std::numeric_limits<unsigned char>::max() - 1);

  // Activity interning; -1 marks a silent transition.
  std::vector<std::string> names;
  std::unordered_map<std::string, std::int32_t> name_index;
  std::vector<std::int32_t> label_of(cn.transitions.size(), -1);
  for (std::size_t t = 0; t < cn.transitions.size(); ++t) {
    const auto& l = net.label(cn.transitions[t]);
    if (l.is_silent()) continue;
    auto [it, ins] = name_index.emplace(l.name(), static_cast<std::int32_t>(names.size()));
    if (ins) names.push_back(l.name());
    label_of[t] = it->second;
  }

  // Prefix trie: node 0 is the empty prefix.
  struct PrefixNode {
    std::uint32_t parent;
    std::int32_t label;
    std::uint32_t depth;
  };
  std::vector<PrefixNode> prefixes{{0, -1, 0}};
  std::unordered_map<std::uint64_t, std::uint32_t> children;
  auto child = [&](std::uint32_t parent, std::int32_t label) {
    std::uint64_t key = (std::uint64_t{parent} << 32) | static_cast<std::uint32_t>(label);
    auto [it, ins] = children.emplace(key, static_cast<std::uint32_t>(prefixes.size()));
    if (ins) prefixes.push_back({parent, label, prefixes[parent].depth + 1});
    return it->second;
  };
  auto trace_of = [&](std::uint32_t node) {
    Trace out(prefixes[node].depth);
    for (auto i = out.size(); i > 0; --i) {
      out[i - 1] = names[static_cast<std::size_t>(prefixes[node].label)];
      node = prefixes[node].parent;
    }
    return out;
  };
  auto key_of = [](const std::string& m, std::uint32_t prefix) {
    std::string k = m;
    k.append(reinterpret_cast<const char*>(&prefix), sizeof prefix);
    return k;
  };

  const std::string start = cn.encode(wf.initial_marking());
  const std::string final_m = cn.encode(wf.final_marking());
  std::unordered_set<std::string> seen{key_of(start, 0)};
  std::deque<std::pair<std::string, std::uint32_t>> queue{{start, 0}};
  TraceSet result;
  std::string next;
  while (!queue.empty()) {
    auto [m, prefix] = std::move(queue.front());
    queue.pop_front();
    if (m == final_m) {
      result.insert(trace_of(prefix));
      if (result.size() > result_cap) throw ResultSetCapExceeded(result_cap);
    }
    for (std::size_t t = 0; t < cn.transitions.size(); ++t) {
      if (!cn.enabled(m, t)) continue;
      std::uint32_t np = prefix;
      if (label_of[t] >= 0) {
        if (prefixes[prefix].depth >= max_visible_length) continue;
        np = child(prefix, label_of[t]);
      }
      long over = cn.fire(m, t, next, token_cap);
      if (over >= 0)
        throw StateSpaceExhausted(StateSpaceExhausted::Cause::Tokens,
                                  cn.places[static_cast<std::size_t>(over)].str());
      if (seen.insert(key_of(next, np)).second) {
        if (seen.size() > caps.max_states)
          throw StateSpaceExhausted(StateSpaceExhausted::Cause::States);
        queue.emplace_back(next, np);
      }
    }
  }
  return result;
}

}  // namespace wf2pt
