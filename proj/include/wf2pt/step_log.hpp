#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wf2pt/errors.hpp"
#include "wf2pt/reduction.hpp"
#include "wf2pt/tree_text.hpp"

namespace wf2pt {

// One line per step:
//   <op-symbol> members=[t1,t2] new=<id> label=<tree-text>

inline std::string format_step(const ReductionStep& step) {
  std::string out = operator_symbol(step.match.kind);
  out += " members=[";
  for (std::size_t i = 0; i < step.match.members.size(); ++i) {
    if (i) out += ',';
    out += step.match.members[i].str();
  }
  out += "] new=" + step.new_transition.str();
  out += " label=" + write_tree_text(step.new_label);
  return out;
}

inline std::string write_step_log(const std::vector<ReductionStep>& steps) {
  std::string out;
  for (const auto& s : steps) out += format_step(s) + "\n";
  return out;
}

/// Parses the line format back. Only kind, members, new id and label are
/// recovered; fragment places and markings are left empty.
inline std::vector<ReductionStep> read_step_log(std::string_view text) {
  std::vector<ReductionStep> steps;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError("step log: " + what, line_start);
    };
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw fail("missing fields");
    const std::string sym = line.substr(0, sp);
    Operator kind;
    if (sym == "->") kind = Operator::Seq;
    else if (sym == "X") kind = Operator::Xor;
    else if (sym == "+") kind = Operator::And;
    else if (sym == "*") kind = Operator::Loop;
    else throw fail("unknown operator " + sym);

    auto m = line.find(" members=[", sp);
    auto close = line.find(']', m);
    auto n = line.find(" new=", close);
    auto l = line.find(" label=", n);
    if (m != sp || close == std::string::npos || n == std::string::npos ||
        l == std::string::npos)
      throw fail("malformed line");
    std::vector<TransitionId> members;
    std::string list = line.substr(m + 10, close - (m + 10));
    std::size_t start = 0;
    while (start <= list.size()) {
      auto comma = list.find(',', start);
      if (comma == std::string::npos) comma = list.size();
      if (comma > start) members.emplace_back(list.substr(start, comma - start));
      start = comma + 1;
    }
    PatternMatch match{kind, std::move(members), {}, {}, {}};
    TransitionId id(line.substr(n + 5, l - (n + 5)));
    ProcessTree label = read_tree_text(line.substr(l + 7));
    steps.push_back(ReductionStep{std::move(match), std::move(id), std::move(label), {}});
  }
  return steps;
}

}  // namespace wf2pt
