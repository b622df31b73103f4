#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wf2pt/wf2pt.hpp"

namespace testing_support {

using namespace wf2pt;

#ifndef WF2PT_DATA_DIR
#define WF2PT_DATA_DIR "data"
#endif

inline std::string data_path(const std::string& name) { return std::string(WF2PT_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TraceSet traces(std::initializer_list<std::initializer_list<const char*>> ts) {
  TraceSet out;
  for (auto t : ts) out.insert(Trace(t.begin(), t.end()));
  return out;
}

struct NetBuilder {
  LabeledNet<Label> net;

  NetBuilder& places(std::initializer_list<const char*> ps) {
    for (auto p : ps) net.add_place(PlaceId(p));
    return *this;
  }
  // label "" means silent
  NetBuilder& transition(const char* id, const char* label, std::initializer_list<const char*> pre,
                         std::initializer_list<const char*> post) {
    TransitionId t(id);
    net.add_transition(t, *label ? Label::activity(label) : Label::silent());
    for (auto p : pre) net.add_arc(PlaceId(p), t);
    for (auto p : post) net.add_arc(t, PlaceId(p));
    return *this;
  }
  WorkflowNet<Label> wf(const char* source = "pi", const char* sink = "po") const {
    return WorkflowNet<Label>(net, PlaceId(source), PlaceId(sink));
  }
};

// The running example: a; loop of ((b|c) || d; e) with redo f; then g|h.
inline WorkflowNet<Label> running_example_net() {
  NetBuilder b;
  b.places({"pi", "p1", "p2", "p3", "p4", "p5", "po"})
      .transition("t1", "a", {"pi"}, {"p1", "p2"})
      .transition("t2", "b", {"p1"}, {"p3"})
      .transition("t3", "c", {"p1"}, {"p3"})
      .transition("t4", "d", {"p2"}, {"p4"})
      .transition("t5", "e", {"p3", "p4"}, {"p5"})
      .transition("t6", "f", {"p5"}, {"p1", "p2"})
      .transition("t7", "g", {"p5"}, {"po"})
      .transition("t8", "h", {"p5"}, {"po"});
  return b.wf();
}

inline const char* kRunningExampleTree = "->(a,*(->(+(X(b,c),d),e),f),X(g,h))";

inline ProcessTree tree(const std::string& text) { return read_tree_text(text); }

// Brute-force net language: depth-first over firing sequences, markings as
// plain multisets. Silent runs are cut by remembering (marking, trace) pairs
// already expanded.
inline TraceSet brute_force_net_language(const WorkflowNet<Label>& wf, std::size_t k) {
  using M = std::map<std::string, int>;
  const auto& net = wf.net();
  TraceSet out;
  std::set<std::pair<M, Trace>> seen;
  M final_m{{wf.sink().str(), 1}};
  std::function<void(const M&, Trace&)> dfs = [&](const M& m, Trace& tr) {
    if (!seen.insert({m, tr}).second) return;
    if (m == final_m) out.insert(tr);
    for (const auto& t : net.transitions()) {
      bool ok = true;
      for (const auto& p : net.preset(t)) {
        auto it = m.find(p.str());
        if (it == m.end() || it->second == 0) ok = false;
      }
      if (!ok) continue;
      const auto& l = net.label(t);
      if (l.is_activity() && tr.size() == k) continue;
      M next = m;
      for (const auto& p : net.preset(t))
        if (--next[p.str()] == 0) next.erase(p.str());
      for (const auto& p : net.postset(t)) ++next[p.str()];
      if (l.is_activity()) tr.push_back(l.name());
      dfs(next, tr);
      if (l.is_activity()) tr.pop_back();
    }
  };
  Trace empty;
  dfs(M{{wf.source().str(), 1}}, empty);
  return out;
}

// Tree language by unrolling loops into explicit choices and shuffling by
// choosing interleaving positions.
inline std::set<Trace> shuffle_by_positions(const Trace& a, const Trace& b) {
  std::set<Trace> out;
  const std::size_t n = a.size() + b.size();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + a.size(), true);
  std::sort(mask.begin(), mask.end());
  do {
    Trace t;
    std::size_t i = 0, j = 0;
    for (bool from_a : mask) t.push_back(from_a ? a[i++] : b[j++]);
    out.insert(t);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

inline TraceSet brute_force_tree_language(const ProcessTree& t, std::size_t k) {
  auto cut = [k](TraceSet s) {
    for (auto it = s.begin(); it != s.end();) it = it->size() > k ? s.erase(it) : std::next(it);
    return s;
  };
  if (t.is_silent()) return TraceSet{Trace{}};
  if (t.is_leaf()) return k == 0 ? TraceSet{} : TraceSet{Trace{t.label().name()}};
  const auto& kids = t.children();
  auto concat = [&](const TraceSet& x, const TraceSet& y) {
    TraceSet out;
    for (const auto& a : x)
      for (const auto& b : y)
        if (a.size() + b.size() <= k) {
          Trace c = a;
          c.insert(c.end(), b.begin(), b.end());
          out.insert(c);
        }
    return out;
  };
  switch (t.op()) {
    case Operator::Seq: {
      TraceSet acc{Trace{}};
      for (const auto& c : kids) acc = concat(acc, brute_force_tree_language(c, k));
      return acc;
    }
    case Operator::Xor: {
      TraceSet acc;
      for (const auto& c : kids) {
        auto s = brute_force_tree_language(c, k);
        acc.insert(s.begin(), s.end());
      }
      return acc;
    }
    case Operator::And: {
      TraceSet acc{Trace{}};
      for (const auto& c : kids) {
        TraceSet next;
        for (const auto& a : acc)
          for (const auto& b : brute_force_tree_language(c, k))
            if (a.size() + b.size() <= k)
              for (auto& s : shuffle_by_positions(a, b)) next.insert(s);
        acc = next;
      }
      return acc;
    }
    case Operator::Loop: {
      // do (redo do)^n for n = 0..k+1; longer unrollings only repeat silent
      // iterations, which add no new traces.
      const auto body = brute_force_tree_language(kids[0], k);
      const auto redo = brute_force_tree_language(kids[1], k);
      TraceSet acc = body, layer = body;
      for (std::size_t n = 0; n <= k + 1; ++n) {
        layer = concat(concat(layer, redo), body);
        acc.insert(layer.begin(), layer.end());
      }
      return cut(acc);
    }
  }
  return {};
}

inline ProcessTree random_tree(std::uint64_t seed, unsigned low, unsigned mode, unsigned high) {
  GeneratorConfig cfg;
  cfg.activities = {low, mode, high};
  cfg.seed = seed;
  return sample_tree(cfg);
}

}  // namespace testing_support
