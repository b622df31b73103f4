#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wf2pt/process_tree.hpp"
#include "wf2pt/tree_text.hpp"

namespace wf2pt {

/// Normal form used to compare trees:
///  - nested Seq/Xor/And of the same kind are flattened into the parent,
///  - silent children of Seq and And are dropped (silent children of Xor and
///    Loop are kept, they change the language),
///  - Seq/Xor/And with one child collapse to that child, with none to tau,
///  - Xor and And children are sorted by their canonical text,
///  - a loop in the do position is merged: *(*(a,b),c) becomes *(a,X(b,c)).
/// Children are normalized first, so a single bottom-up pass is a fixpoint.
inline ProcessTree canonicalize(const ProcessTree& tree) {
  if (tree.is_leaf()) return tree;
  const Operator op = tree.op();
  if (op == Operator::Loop) {
    ProcessTree body = canonicalize(tree.children()[0]);
    ProcessTree redo = canonicalize(tree.children()[1]);
    if (body.is_operator() && body.op() == Operator::Loop)
      return ProcessTree(op, {body.children()[0],
                              canonicalize(ProcessTree(Operator::Xor, {body.children()[1], redo}))});
    return ProcessTree(op, {std::move(body), std::move(redo)});
  }

  std::vector<ProcessTree> kids;
  for (const auto& c : tree.children()) {
    ProcessTree cc = canonicalize(c);
    if (cc.is_operator() && cc.op() == op) {
      kids.insert(kids.end(), cc.children().begin(), cc.children().end());
    } else if (cc.is_silent() && op != Operator::Xor) {
      continue;
    } else {
      kids.push_back(std::move(cc));
    }
  }
  if (kids.empty()) return ProcessTree::tau();
  if (kids.size() == 1) return kids.front();
  if (op == Operator::Xor || op == Operator::And) {
    std::vector<std::pair<std::string, ProcessTree>> keyed;
    keyed.reserve(kids.size());
    for (auto& k : kids) keyed.emplace_back(write_tree_text(k), std::move(k));
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    kids.clear();
    for (auto& [text, k] : keyed) kids.push_back(std::move(k));
  }
  return ProcessTree(op, std::move(kids));
}

inline bool trees_language_equal_canonical(const ProcessTree& a, const ProcessTree& b) {
  return canonicalize(a) == canonicalize(b);
}

}  // namespace wf2pt
