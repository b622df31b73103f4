#pragma once

#include <string>
#include <vector>

#include "wf2pt/label.hpp"
#include "wf2pt/petri_net.hpp"
#include "wf2pt/process_tree.hpp"
#include "wf2pt/workflow.hpp"

namespace wf2pt {

/// Minimal adds silent transitions only for And split/join and Loop
/// entry/exit. TauBounded wraps every operator block in silent start/end
/// transitions.
enum class TranslationVariant { Minimal, TauBounded };

inline const char* variant_name(TranslationVariant v) {
  return v == TranslationVariant::Minimal ? "minimal" : "tau-bounded";
}

/// A workflow net with its source and sink removed. `entry` and `exit`
/// record which transitions were connected to them.
template <class L>
struct NetFragment {
  LabeledNet<L> net;
  TransitionSet entry;
  TransitionSet exit;
};

namespace detail {

class TreeNetBuilder {
 public:
  explicit TreeNetBuilder(TranslationVariant variant) : variant_(variant) {}

  LabeledNet<Label> net;

  // Adds the gadget of `tree` between two existing places.
  void build(const ProcessTree& tree, const std::string& path, const PlaceId& in,
             const PlaceId& out) {
    if (tree.is_leaf()) {
      transition("t" + path, tree.label(), in, out);
      return;
    }
    const auto op = tree.op();
    const auto& kids = tree.children();
    if (op == Operator::And || op == Operator::Loop ||
        variant_ == TranslationVariant::Minimal) {
      build_block(op, kids, path, in, out);
      return;
    }
    // Tau-bounded Seq/Xor: silent start/end around the plain block.
    PlaceId inner_in = place("p" + path + "_s");
    PlaceId inner_out = place("p" + path + "_e");
    transition("t" + path + "_start", Label::silent(), in, inner_in);
    build_block(op, kids, path, inner_in, inner_out);
    transition("t" + path + "_end", Label::silent(), inner_out, out);
  }

 private:
  void build_block(Operator op, const std::vector<ProcessTree>& kids,
                   const std::string& path, const PlaceId& in, const PlaceId& out) {
    auto child_path = [&](std::size_t i) { return path + "_" + std::to_string(i); };
    switch (op) {
      case Operator::Seq: {
        PlaceId prev = in;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          PlaceId next = i + 1 == kids.size() ? out : place("p" + child_path(i) + "_o");
          build(kids[i], child_path(i), prev, next);
          prev = next;
        }
        break;
      }
      case Operator::Xor:
        for (std::size_t i = 0; i < kids.size(); ++i) build(kids[i], child_path(i), in, out);
        break;
      case Operator::And: {
        TransitionId split("t" + path + "_split");
        TransitionId join("t" + path + "_join");
        net.add_transition(split, Label::silent());
        net.add_transition(join, Label::silent());
        net.add_arc(in, split);
        net.add_arc(join, out);
        for (std::size_t i = 0; i < kids.size(); ++i) {
          PlaceId a = place("p" + child_path(i) + "_i");
          PlaceId b = place("p" + child_path(i) + "_o");
          net.add_arc(split, a);
          net.add_arc(b, join);
          build(kids[i], child_path(i), a, b);
        }
        break;
      }
      case Operator::Loop: {
        PlaceId redo_out = place("p" + path + "_do");
        PlaceId do_out = place("p" + path + "_redo");
        transition("t" + path + "_start", Label::silent(), in, redo_out);
        build(kids[0], child_path(0), redo_out, do_out);
        build(kids[1], child_path(1), do_out, redo_out);
        transition("t" + path + "_end", Label::silent(), do_out, out);
        break;
      }
    }
  }

  PlaceId place(std::string id) {
    PlaceId p(std::move(id));
    net.add_place(p);
    return p;
  }

  void transition(std::string id, Label label, const PlaceId& in, const PlaceId& out) {
    TransitionId t(std::move(id));
    net.add_transition(t, std::move(label));
    net.add_arc(in, t);
    net.add_arc(t, out);
  }

  TranslationVariant variant_;
};

}  // namespace detail

/// Translates a tree into a sound workflow net with the same language.
/// Node ids derive from child positions, so output is reproducible.
inline WorkflowNet<Label> tree_to_wfnet(const ProcessTree& tree,
                                        TranslationVariant variant = TranslationVariant::Minimal) {
  detail::TreeNetBuilder b(variant);
  PlaceId source("source"), sink("sink");
  b.net.add_place(source);
  b.net.add_place(sink);
  b.build(tree, "", source, sink);
  return WorkflowNet<Label>(std::move(b.net), source, sink);
}

template <class L>
NetFragment<L> strip_boundary(const WorkflowNet<L>& wf) {
  NetFragment<L> frag{wf.net(), wf.net().postset(wf.source()), wf.net().preset(wf.sink())};
  frag.net.remove_place(wf.source());
  frag.net.remove_place(wf.sink());
  return frag;
}

/// Replaces every tree-labeled transition by the boundary-stripped net of its
/// label. Host places are kept; fragment nodes are prefixed "<t>/".
inline LabeledNet<Label> unfold(const LabeledNet<ProcessTree>& ptree_net,
                                TranslationVariant variant = TranslationVariant::Minimal) {
  LabeledNet<Label> out;
  for (const auto& p : ptree_net.places()) out.add_place(p);
  for (const auto& host : ptree_net.transitions()) {
    const auto frag = strip_boundary(tree_to_wfnet(ptree_net.label(host), variant));
    const std::string prefix = host.str() + "/";
    auto place_id = [&](const PlaceId& p) { return PlaceId(prefix + p.str()); };
    auto trans_id = [&](const TransitionId& t) { return TransitionId(prefix + t.str()); };
    for (const auto& p : frag.net.places()) out.add_place(place_id(p));
    for (const auto& t : frag.net.transitions()) {
      out.add_transition(trans_id(t), frag.net.label(t));
      for (const auto& p : frag.net.preset(t)) out.add_arc(place_id(p), trans_id(t));
      for (const auto& p : frag.net.postset(t)) out.add_arc(trans_id(t), place_id(p));
    }
    for (const auto& p : ptree_net.preset(host))
      for (const auto& e : frag.entry) out.add_arc(p, trans_id(e));
    for (const auto& p : ptree_net.postset(host))
      for (const auto& x : frag.exit) out.add_arc(trans_id(x), p);
  }
  return out;
}

inline WorkflowNet<Label> unfold(const WorkflowNet<ProcessTree>& wf,
                                 TranslationVariant variant = TranslationVariant::Minimal) {
  return WorkflowNet<Label>(unfold(wf.net(), variant), wf.source(), wf.sink());
}

}  // namespace wf2pt
