#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace wf2pt;
using namespace testing_support;

namespace {

constexpr TranslationVariant kBoth[] = {TranslationVariant::Minimal, TranslationVariant::TauBounded};

std::size_t silent_count(const LabeledNet<Label>& n) {
  std::size_t c = 0;
  for (const auto& t : n.transitions()) c += n.label(t).is_silent();
  return c;
}

ProcessTree random_tree_with_tau(std::mt19937& rng, int depth, int& activities) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || activities >= 8 || pick(rng) < 3) {
    if (pick(rng) == 0) return ProcessTree::tau();
    return ProcessTree::activity("a" + std::to_string(activities++));
  }
  auto op = static_cast<Operator>(std::uniform_int_distribution<int>(0, 3)(rng));
  int arity = op == Operator::Loop ? 2 : std::uniform_int_distribution<int>(2, 3)(rng);
  std::vector<ProcessTree> kids;
  for (int i = 0; i < arity; ++i) kids.push_back(random_tree_with_tau(rng, depth - 1, activities));
  return ProcessTree(op, std::move(kids));
}

}  // namespace

TEST(Translate, Leaf) {
  auto w = tree_to_wfnet(tree("a"));
  EXPECT_EQ(w.net().places().size(), 2u);
  ASSERT_EQ(w.net().transitions().size(), 1u);
  const auto& t = w.net().transitions().front();
  EXPECT_EQ(w.net().label(t), Label::activity("a"));
  EXPECT_EQ(w.net().preset(t), PlaceSet{w.source()});
  EXPECT_EQ(w.net().postset(t), PlaceSet{w.sink()});
}

TEST(Translate, MinimalXorSharesBoundary) {
  auto w = tree_to_wfnet(tree("X(b,c)"));
  EXPECT_EQ(w.net().places().size(), 2u);
  EXPECT_EQ(w.net().transitions().size(), 2u);
  for (const auto& t : w.net().transitions()) {
    EXPECT_EQ(w.net().preset(t), PlaceSet{w.source()});
    EXPECT_EQ(w.net().postset(t), PlaceSet{w.sink()});
  }
}

TEST(Translate, RunningExampleLanguageEqualsHandEncodedNet) {
  auto hand = enumerate_net_language(running_example_net(), 7);
  for (auto v : kBoth)
    EXPECT_EQ(enumerate_net_language(tree_to_wfnet(tree(kRunningExampleTree), v), 7), hand)
        << variant_name(v);
}

TEST(Translate, TauBoundedIsLarger) {
  auto t = tree(kRunningExampleTree);
  auto m = tree_to_wfnet(t, TranslationVariant::Minimal);
  auto b = tree_to_wfnet(t, TranslationVariant::TauBounded);
  EXPECT_GT(b.net().size(), m.net().size());
  EXPECT_GT(silent_count(b.net()), silent_count(m.net()));
}

TEST(Translate, DeterministicIds) {
  auto t = tree(kRunningExampleTree);
  EXPECT_EQ(tree_to_wfnet(t).net(), tree_to_wfnet(t).net());
  EXPECT_TRUE(tree_to_wfnet(t).net().contains(TransitionId("t_1_0_0_split")));
}

TEST(Translate, LanguageSoundnessAndSizeProperties) {
  std::mt19937 rng(42);
  for (int i = 0; i < 250; ++i) {
    int n = 0;
    auto t = random_tree_with_tau(rng, 4, n);
    if (t.activity_count() > 8) continue;
    std::size_t sizes[2];
    for (int vi = 0; vi < 2; ++vi) {
      auto w = tree_to_wfnet(t, kBoth[vi]);
      sizes[vi] = w.net().size();
      ASSERT_TRUE(validate_workflow_net(w.net(), w.source(), w.sink()).valid());
      ASSERT_TRUE(check_soundness(w).sound) << write_tree_text(t);
      for (std::size_t k : {2u, 6u}) {
        auto expected = brute_force_tree_language(t, k);
        ASSERT_EQ(enumerate_net_language(w, k), expected)
            << write_tree_text(t) << " " << variant_name(kBoth[vi]) << " k=" << k;
        ASSERT_EQ(enumerate_tree_language(t, k), expected);
      }
    }
    EXPECT_GE(sizes[1], sizes[0]);
  }
}

TEST(Fragment, Shapes) {
  auto leaf = strip_boundary(tree_to_wfnet(tree("a")));
  EXPECT_EQ(leaf.net.transitions().size(), 1u);
  EXPECT_EQ(leaf.entry, leaf.exit);

  auto x = strip_boundary(tree_to_wfnet(tree("X(b,c)")));
  EXPECT_EQ(x.net.transitions().size(), 2u);
  EXPECT_EQ(x.net.places().size(), 0u);

  auto a = strip_boundary(tree_to_wfnet(tree("+(a,b)")));
  EXPECT_EQ(a.net.places().size(), 4u);
  ASSERT_EQ(a.entry.size(), 1u);
  ASSERT_EQ(a.exit.size(), 1u);
  EXPECT_TRUE(a.net.label(*a.entry.begin()).is_silent());
  EXPECT_TRUE(a.net.label(*a.exit.begin()).is_silent());
}

TEST(Unfold, LeafLabelsGiveSameShape) {
  auto w = running_example_net();
  auto u = unfold(lift_labels(w));
  EXPECT_EQ(u.net().transitions().size(), w.net().transitions().size());
  EXPECT_EQ(u.net().places().size(), w.net().places().size());
  EXPECT_EQ(u.net().arc_count(), w.net().arc_count());
  EXPECT_EQ(enumerate_net_language(u, 7), enumerate_net_language(w, 7));
}

TEST(Unfold, SingleTransitionOfTheWholeTree) {
  LabeledNet<ProcessTree> n;
  n.add_place(PlaceId("pi"));
  n.add_place(PlaceId("po"));
  n.add_transition(TransitionId("t"), tree(kRunningExampleTree));
  n.add_arc(PlaceId("pi"), TransitionId("t"));
  n.add_arc(TransitionId("t"), PlaceId("po"));
  auto u = unfold(WorkflowNet<ProcessTree>(n, PlaceId("pi"), PlaceId("po")));
  EXPECT_EQ(enumerate_net_language(u, 7), enumerate_net_language(running_example_net(), 7));
}

TEST(Unfold, AfterTheTwoChoiceReductions) {
  // Running example with b|c and g|h already folded into tree labels.
  LabeledNet<ProcessTree> n = lift_labels(running_example_net().net());
  n.remove_transition(TransitionId("t3"));
  n.set_label(TransitionId("t2"), tree("X(b,c)"));
  n.remove_transition(TransitionId("t8"));
  n.set_label(TransitionId("t7"), tree("X(g,h)"));
  auto u = unfold(WorkflowNet<ProcessTree>(n, PlaceId("pi"), PlaceId("po")));
  EXPECT_EQ(enumerate_net_language(u, 7), enumerate_net_language(running_example_net(), 7));
}
