#include <gtest/gtest.h>

#include "support.hpp"

using namespace wf2pt;
using namespace testing_support;

TEST(Equivalence, RunningExampleNetAndTree) {
  auto v = bounded_language_equal(running_example_net(), tree(kRunningExampleTree), 7);
  EXPECT_TRUE(v.equal()) << v.reason;
}

TEST(Equivalence, ChoiceVersusSequence) {
  auto v = bounded_language_equal(tree("X(a,b)"), tree("->(a,b)"), 2);
  ASSERT_TRUE(v.unequal());
  EXPECT_EQ(*v.witness, Trace{"a"});
  EXPECT_TRUE(v.witness_in_first);
}

TEST(Equivalence, SilentRedoLoop) {
  auto v = bounded_language_equal(tree("*(a,tau)"), tree("a"), 4);
  ASSERT_TRUE(v.unequal());
  EXPECT_EQ(format_trace(*v.witness), "<a,a>");
}

TEST(Equivalence, SymmetricAndReflexive) {
  const char* texts[] = {"X(a,b)", "->(a,b)", "*(a,b)", "+(a,b)", "*(X(a,b),tau)", "X(->(a,b),->(b,a))"};
  for (auto x : texts) {
    EXPECT_TRUE(bounded_language_equal(tree(x), tree(x), 5).equal());
    for (auto y : texts) {
      auto xy = bounded_language_equal(tree(x), tree(y), 5);
      auto yx = bounded_language_equal(tree(y), tree(x), 5);
      EXPECT_EQ(xy.result, yx.result) << x << " " << y;
      EXPECT_EQ(xy.witness, yx.witness);
    }
  }
  EXPECT_TRUE(bounded_language_equal(tree("+(a,b)"), tree("X(->(a,b),->(b,a))"), 5).equal());
}

TEST(Equivalence, CapsGiveInconclusive) {
  OracleLimits tight;
  tight.caps.max_states = 2;
  auto v = bounded_language_equal(running_example_net(), tree(kRunningExampleTree), 7, tight);
  EXPECT_TRUE(v.inconclusive());
  EXPECT_FALSE(v.witness);

  OracleLimits small;
  small.trace_cap = 5;
  EXPECT_TRUE(bounded_language_equal(tree("+(a,b,c,d)"), tree("+(a,b,c,d)"), 4, small).inconclusive());
}

TEST(StepLog, RunningExampleVerifies) {
  auto w = running_example_net();
  auto out = reduce_to_tree(w);
  ASSERT_EQ(out.steps.size(), 7u);
  auto v = verify_step_log(w, out.steps, 6);
  EXPECT_TRUE(v.verified()) << v.detail;
}

TEST(StepLog, TamperedLabelIsCaught) {
  auto w = running_example_net();
  auto steps = reduce_to_tree(w).steps;
  ASSERT_EQ(steps[0].new_label, tree("X(b,c)"));
  steps[0].new_label = tree("+(b,c)");
  auto v = verify_step_log(w, steps, 6);
  EXPECT_EQ(v.result, StepLogVerdict::Result::Violation);
  EXPECT_EQ(v.step, 0u);
}

TEST(StepLog, StaleStepIsCaught) {
  auto w = running_example_net();
  auto steps = reduce_to_tree(w).steps;
  std::swap(steps[2], steps[4]);
  auto v = verify_step_log(w, steps, 6);
  EXPECT_EQ(v.result, StepLogVerdict::Result::Violation);
  EXPECT_EQ(v.step, 2u);
}

TEST(StepLog, EmptyLogOnSingleTransition) {
  NetBuilder b;
  b.places({"pi", "po"}).transition("t", "a", {"pi"}, {"po"});
  EXPECT_TRUE(verify_step_log(b.wf(), {}, 6).verified());
}

TEST(StepLog, SurvivesTextRoundTrip) {
  auto w = running_example_net();
  auto steps = read_step_log(write_step_log(reduce_to_tree(w).steps));
  EXPECT_TRUE(verify_step_log(w, steps, 6).verified());
}
