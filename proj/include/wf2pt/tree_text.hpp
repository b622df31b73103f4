#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/process_tree.hpp"

namespace wf2pt {

// Textual tree grammar:
//   Tree     := Activity | "tau" | Op "(" Tree ("," Tree)* ")"
//   Op       := "->" | "X" | "+" | "*"
//   Activity := [A-Za-z0-9_]+ | '...' with '' escaping a quote

namespace detail {

inline bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_bare_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_bare_char(c)) return false;
  return true;
}

inline void write_tree(const ProcessTree& tree, std::string& out) {
  if (tree.is_leaf()) {
    if (tree.is_silent()) {
      out += kSilentToken;
      return;
    }
    const auto& name = tree.label().name();
    if (is_bare_name(name)) {
      out += name;
      return;
    }
    out += '\'';
    for (char c : name) {
      if (c == '\'') out += '\'';
      out += c;
    }
    out += '\'';
    return;
  }
  out += operator_symbol(tree.op());
  out += '(';
  bool first = true;
  for (const auto& child : tree.children()) {
    if (!first) out += ',';
    first = false;
    write_tree(child, out);
  }
  out += ')';
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  ProcessTree parse() {
    auto tree = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return tree;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  ProcessTree parse_tree() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t start = pos_;
    char c = text_[pos_];
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return parse_operator(Operator::Seq, start);
    }
    if (c == '+') {
      ++pos_;
      return parse_operator(Operator::And, start);
    }
    if (c == '*') {
      ++pos_;
      return parse_operator(Operator::Loop, start);
    }
    if (c == '\'') return make_activity(parse_quoted(), start);
    if (is_bare_char(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_bare_char(text_[end])) ++end;
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "X" && peek('(')) return parse_operator(Operator::Xor, start);
      if (word == kSilentToken) return ProcessTree::tau();
      return make_activity(std::move(word), start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ProcessTree make_activity(std::string name, std::size_t at) {
    if (name.empty()) throw ParseError("empty activity name", at);
    if (name == kSilentToken)
      throw ParseError("activity name collides with reserved silent token", at);
    return ProcessTree::activity(std::move(name));
  }

  std::string parse_quoted() {
    const std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", start);
      char c = text_[pos_++];
      if (c == '\'') {
        if (pos_ < text_.size() && text_[pos_] == '\'') {
          out += '\'';
          ++pos_;
          continue;
        }
        return out;
      }
      out += c;
    }
  }

  ProcessTree parse_operator(Operator op, std::size_t at) {
    expect('(');
    std::vector<ProcessTree> children;
    children.push_back(parse_tree());
    while (peek(',')) {
      ++pos_;
      children.push_back(parse_tree());
    }
    expect(')');
    if (op == Operator::Loop && children.size() != 2)
      throw LoopArityError(children.size(), at);
    return ProcessTree(op, std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string write_tree_text(const ProcessTree& tree) {
  std::string out;
  detail::write_tree(tree, out);
  return out;
}

/// Throws ParseError (with byte offset) or LoopArityError.
inline ProcessTree read_tree_text(std::string_view text) {
  return detail::TreeParser(text).parse();
}

}  // namespace wf2pt
