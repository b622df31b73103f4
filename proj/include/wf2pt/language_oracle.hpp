#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/reduction.hpp"
#include "wf2pt/tree_language.hpp"
#include "wf2pt/tree_to_net.hpp"
#include "wf2pt/workflow.hpp"

namespace wf2pt {

using NetOrTree = std::variant<WorkflowNet<Label>, ProcessTree>;

struct OracleLimits {
  ExplorationCaps caps{};
  std::size_t trace_cap = kDefaultTraceCap;
};

/// Three-valued result: Inconclusive whenever an enumeration hit a cap.
struct EquivalenceVerdict {
  enum class Result { Equal, Unequal, Inconclusive };
  Result result = Result::Inconclusive;
  std::optional<Trace> witness;  // smallest trace in exactly one language
  bool witness_in_first = false;
  std::string reason;

  bool equal() const noexcept { return result == Result::Equal; }
  bool unequal() const noexcept { return result == Result::Unequal; }
  bool inconclusive() const noexcept { return result == Result::Inconclusive; }
};

inline TraceSet bounded_language(const NetOrTree& model, std::size_t k,
                                 const OracleLimits& limits = {}) {
  if (const auto* net = std::get_if<WorkflowNet<Label>>(&model))
    return enumerate_net_language(*net, k, limits.caps, limits.trace_cap);
  return enumerate_tree_language(std::get<ProcessTree>(model), k, limits.trace_cap);
}

inline EquivalenceVerdict compare_trace_sets(const TraceSet& a, const TraceSet& b) {
  EquivalenceVerdict v;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
      v.witness = *ia;
      v.witness_in_first = true;
      break;
    }
    if (ia == a.end() || *ib < *ia) {
      v.witness = *ib;
      v.witness_in_first = false;
      break;
    }
    ++ia;
    ++ib;
  }
  v.result = v.witness ? EquivalenceVerdict::Result::Unequal : EquivalenceVerdict::Result::Equal;
  return v;
}

inline EquivalenceVerdict bounded_language_equal(const NetOrTree& a, const NetOrTree& b,
                                                 std::size_t k,
                                                 const OracleLimits& limits = {}) {
  try {
    return compare_trace_sets(bounded_language(a, k, limits), bounded_language(b, k, limits));
  } catch (const StateSpaceExhausted& e) {
    return {EquivalenceVerdict::Result::Inconclusive, std::nullopt, false, e.what()};
  } catch (const ResultSetCapExceeded& e) {
    return {EquivalenceVerdict::Result::Inconclusive, std::nullopt, false, e.what()};
  }
}

struct StepLogVerdict {
  enum class Result { Verified, Violation, Inconclusive };
  Result result = Result::Verified;
  std::optional<std::size_t> step;  // index of the offending step
  std::string detail;

  bool verified() const noexcept { return result == Result::Verified; }
};

/// Replays `steps` on `input`. For every step the unfoldings before and
/// after must have equal bounded languages and equal soundness verdicts.
inline StepLogVerdict verify_step_log(const WorkflowNet<Label>& input,
                                      const std::vector<ReductionStep>& steps,
                                      std::size_t k, const OracleLimits& limits = {},
                                      const ReductionOptions& opts = {}) {
  using R = StepLogVerdict::Result;
  PTreeNet current = lift_labels(input.net());
  auto observe = [&](const PTreeNet& n) {
    WorkflowNet<Label> unfolded(unfold(n), input.source(), input.sink());
    return std::make_pair(enumerate_net_language(unfolded, k, limits.caps, limits.trace_cap),
                          check_soundness(unfolded, limits.caps));
  };
  try {
    auto [lang_before, sound_before] = observe(current);
    if (sound_before.inconclusive())
      return {R::Inconclusive, std::nullopt, "soundness check exhausted its cap"};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& step = steps[i];
      try {
        detail::ensure_current(current, step.match, opts);
        if (current.contains(step.new_transition))
          throw StaleMatch("new id " + step.new_transition.str() + " is not fresh");
      } catch (const StaleMatch& e) {
        return {R::Violation, i, e.what()};
      }
      detail::rewrite(current, step.match, step.new_transition, step.new_label);
      auto [lang_after, sound_after] = observe(current);
      if (sound_after.inconclusive())
        return {R::Inconclusive, i, "soundness check exhausted its cap"};
      auto cmp = compare_trace_sets(lang_before, lang_after);
      if (cmp.unequal())
        return {R::Violation, i,
                "language differs on " + format_trace(*cmp.witness) +
                    (cmp.witness_in_first ? " (lost)" : " (gained)")};
      if (sound_before.sound != sound_after.sound)
        return {R::Violation, i,
                "soundness changed: " + sound_before.describe() + " -> " +
                    sound_after.describe()};
      lang_before = std::move(lang_after);
      sound_before = std::move(sound_after);
    }
  } catch (const StateSpaceExhausted& e) {
    return {R::Inconclusive, std::nullopt, e.what()};
  } catch (const ResultSetCapExceeded& e) {
    return {R::Inconclusive, std::nullopt, e.what()};
  }
  return {R::Verified, std::nullopt, {}};
}

}  // namespace wf2pt
