#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wf2pt/label.hpp"

namespace wf2pt {

enum class Operator { Seq, Xor, And, Loop };

// Symbols shared by the tree grammar and the step log.
inline const char* operator_symbol(Operator op) {
  switch (op) {
    case Operator::Seq: return "->";
    case Operator::Xor: return "X";
    case Operator::And: return "+";
    case Operator::Loop: return "*";
  }
  return "?";
}

inline const char* operator_name(Operator op) {
  switch (op) {
    case Operator::Seq: return "seq";
    case Operator::Xor: return "xor";
    case Operator::And: return "and";
    case Operator::Loop: return "loop";
  }
  return "?";
}

/// Immutable process tree. Copies share structure, so building larger trees
/// out of existing ones is cheap.
class ProcessTree {
 public:
  // Silent leaf.
  ProcessTree() : ProcessTree(Label::silent()) {}

  explicit ProcessTree(Label leaf)
      : node_(std::make_shared<const Node>(Node{false, Operator::Seq, std::move(leaf), {}})) {}

  ProcessTree(Operator op, std::vector<ProcessTree> children)
      : node_(std::make_shared<const Node>(
            Node{true, op, Label::silent(), std::move(children)})) {
    const auto& kids = node_->children;
    if (kids.empty()) throw std::invalid_argument("operator without children");
    if (op == Operator::Loop && kids.size() != 2)
      throw std::invalid_argument("loop operator takes exactly 2 children");
  }

  static ProcessTree activity(std::string name) {
    return ProcessTree(Label::activity(std::move(name)));
  }
  static ProcessTree tau() { return ProcessTree(); }

  bool is_leaf() const noexcept { return !node_->is_operator; }
  bool is_operator() const noexcept { return node_->is_operator; }
  bool is_silent() const noexcept { return is_leaf() && node_->label.is_silent(); }

  // Preconditions: is_leaf() / is_operator().
  const Label& label() const { return node_->label; }
  Operator op() const { return node_->op; }
  const std::vector<ProcessTree>& children() const noexcept { return node_->children; }

  std::size_t leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& c : children()) n += c.leaf_count();
    return n;
  }

  std::size_t activity_count() const {
    if (is_leaf()) return is_silent() ? 0 : 1;
    std::size_t n = 0;
    for (const auto& c : children()) n += c.activity_count();
    return n;
  }

  std::size_t depth() const {
    std::size_t d = 0;
    if (is_operator())
      for (const auto& c : children()) d = std::max(d, c.depth());
    return d + 1;
  }

  friend bool operator==(const ProcessTree& a, const ProcessTree& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_operator() != b.is_operator()) return false;
    if (a.is_leaf()) return a.label() == b.label();
    return a.op() == b.op() && a.children() == b.children();
  }

 private:
  struct Node {
    bool is_operator;
    Operator op;
    Label label;
    std::vector<ProcessTree> children;
  };
  std::shared_ptr<const Node> node_;
};

}  // namespace wf2pt
