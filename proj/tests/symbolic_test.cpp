#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <set>

#include "support.hpp"

using namespace wf2pt;
using namespace testing_support;

namespace {

using detail::Bdd;

bool eval(const Bdd& b, Bdd::Ref f, unsigned bits) {
  while (f > Bdd::kTrue) f = (bits >> b.var(f)) & 1u ? b.high(f) : b.low(f);
  return f == Bdd::kTrue;
}

// A random set of assignments over n variables built as a union of cubes,
// kept alongside its truth table.
std::pair<Bdd::Ref, std::vector<bool>> random_set(Bdd& b, std::mt19937& rng, unsigned n) {
  std::vector<bool> table(1u << n, false);
  Bdd::Ref f = Bdd::kFalse;
  for (int k = 0; k < 4; ++k) {
    Bdd::Cube c;
    for (unsigned v = 0; v < n; ++v)
      if (rng() % 2) c.emplace_back(v, rng() % 2 == 1);
    f = b.disj(f, b.cube(c));
    for (unsigned x = 0; x < table.size(); ++x) {
      bool in = true;
      for (auto [v, val] : c) in = in && (((x >> v) & 1u) == val);
      if (in) table[x] = true;
    }
  }
  return {f, table};
}

SoundnessVerdict symbolic(const WorkflowNet<Label>& w) {
  ExplorationCaps caps;
  caps.symbolic_after = 1;
  return check_soundness(w, caps);
}

template <class V>
bool holds(const SoundnessVerdict& v) {
  return v.violation && std::holds_alternative<V>(*v.violation);
}

}  // namespace

TEST(Bdd, OperationsMatchTruthTables) {
  constexpr unsigned n = 6;
  std::mt19937 rng(5);
  for (int round = 0; round < 50; ++round) {
    Bdd b(n, 1u << 16);
    auto [f, tf] = random_set(b, rng, n);
    auto [g, tg] = random_set(b, rng, n);
    const auto a = b.conj(f, g), o = b.disj(f, g), d = b.diff(f, g);
    Bdd::Cube fix{{1, true}, {4, false}};
    const auto cf = b.cofactor(f, fix);
    std::size_t count = 0;
    for (unsigned x = 0; x < (1u << n); ++x) {
      ASSERT_EQ(eval(b, f, x), tf[x]);
      EXPECT_EQ(eval(b, a, x), tf[x] && tg[x]);
      EXPECT_EQ(eval(b, o, x), tf[x] || tg[x]);
      EXPECT_EQ(eval(b, d, x), tf[x] && !tg[x]);
      const unsigned fixed = (x | 2u) & ~16u;
      EXPECT_EQ(eval(b, cf, x), tf[fixed]);
      count += tf[x];
    }
    EXPECT_EQ(static_cast<std::size_t>(b.count(f)), count);
    if (f != Bdd::kFalse) {
      unsigned bits = 0;
      for (auto v : b.pick_one(f)) bits |= 1u << v;
      EXPECT_TRUE(tf[bits]);
      for (unsigned x = 0; x < (1u << n); ++x)
        if (tf[x]) {
          // smallest when variable 0 is the most significant position
          auto key = [](unsigned y) {
            unsigned r = 0;
            for (unsigned v = 0; v < n; ++v) r |= ((y >> v) & 1u) << (n - 1 - v);
            return r;
          };
          EXPECT_LE(key(bits), key(x));
        }
    }
  }
}

TEST(Bdd, NodeLimit) {
  Bdd b(20, 8);
  Bdd::Cube c;
  for (std::uint32_t v = 0; v < 20; ++v) c.emplace_back(v, true);
  EXPECT_THROW(b.cube(c), Bdd::NodeLimit);
}

TEST(SymbolicSoundness, AgreesOnHandNets) {
  EXPECT_TRUE(symbolic(running_example_net()).sound);
  EXPECT_EQ(symbolic(running_example_net()).states_explored, 7u);

  NetBuilder dl;
  dl.places({"pi", "q1", "q2", "po"})
      .transition("ta", "a", {"pi"}, {"q1"})
      .transition("tb", "b", {"pi"}, {"q2"})
      .transition("tc", "c", {"q1", "q2"}, {"po"});
  auto v = symbolic(dl.wf());
  ASSERT_TRUE(holds<SoundnessVerdict::CannotComplete>(v)) << v.describe();
  EXPECT_EQ(std::get<SoundnessVerdict::CannotComplete>(*v.violation).marking.total(), 1u);

  NetBuilder unsafe;
  unsafe.places({"pi", "q", "po"})
      .transition("split", "a", {"pi"}, {"q"})
      .transition("dup", "b", {"q"}, {"q", "po"})
      .transition("end", "c", {"q"}, {"po"});
  v = symbolic(unsafe.wf());
  ASSERT_TRUE(holds<SoundnessVerdict::NotSafe>(v)) << v.describe();

  NetBuilder dead;
  dead.places({"pi", "q", "po"})
      .transition("t", "a", {"pi"}, {"po"})
      .transition("never", "b", {"pi", "q"}, {"po", "q"});
  v = symbolic(dead.wf());
  ASSERT_TRUE(holds<SoundnessVerdict::DeadTransition>(v)) << v.describe();
  EXPECT_EQ(std::get<SoundnessVerdict::DeadTransition>(*v.violation).transition, TransitionId("never"));

  auto w = read_pnml(read_file(data_path("deadlock.pnml"))).net;
  EXPECT_TRUE(holds<SoundnessVerdict::CannotComplete>(symbolic(w)));
}

TEST(SymbolicSoundness, AgreesWithExplicitOnTranslatedAndDamagedNets) {
  int damaged_nets = 0;
  std::set<std::size_t> kinds;
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto t = random_tree(s, 4, 8, 12);
    auto w = tree_to_wfnet(t, s % 2 ? TranslationVariant::TauBounded : TranslationVariant::Minimal);
    auto e = check_soundness(w), y = symbolic(w);
    ASSERT_TRUE(e.sound) << write_tree_text(t);
    EXPECT_TRUE(y.sound) << write_tree_text(t) << " " << y.describe();
    EXPECT_EQ(y.states_explored, e.states_explored) << write_tree_text(t);

    // Add one stray output arc and compare the kind of defect found.
    auto n = w.net();
    const auto& ts = n.transitions();
    const auto& ps = n.places();
    const auto victim = ts[s % ts.size()];
    const auto target = ps[(s * 7 + 3) % ps.size()];
    if (target == w.source() || n.postset(victim).count(target)) continue;
    n.add_arc(victim, target);
    if (!validate_workflow_net(n, w.source(), w.sink()).valid()) continue;
    auto damaged = WorkflowNet<Label>(n, w.source(), w.sink());
    e = check_soundness(damaged);
    y = symbolic(damaged);
    EXPECT_EQ(e.sound, y.sound) << write_tree_text(t);
    ASSERT_TRUE(e.violation && y.violation);
    EXPECT_EQ(e.violation->index(), y.violation->index()) << e.describe() << " / " << y.describe();
    ++damaged_nets;
    kinds.insert(e.violation->index());
  }
  EXPECT_GE(damaged_nets, 10);
  EXPECT_GE(kinds.size(), 2u);
}

TEST(SymbolicSoundness, StateCapStillApplies) {
  ExplorationCaps caps;
  caps.symbolic_after = 2;
  caps.max_states = 5;
  EXPECT_TRUE(check_soundness(running_example_net(), caps).inconclusive());
  caps.max_states = 7;
  EXPECT_TRUE(check_soundness(running_example_net(), caps).sound);
  caps.max_bdd_nodes = 4;
  EXPECT_TRUE(check_soundness(running_example_net(), caps).inconclusive());
}

TEST(SymbolicSoundness, LargeParallelNet) {
  // 40 parallel branches of two activities: 3^40 reachable inner markings.
  std::string text = "+(";
  for (int i = 0; i < 40; ++i)
    text += (i ? "," : "") + std::string("->(x") + std::to_string(i) + ",y" + std::to_string(i) + ")";
  text += ")";
  auto w = tree_to_wfnet(tree(text));
  ExplorationCaps caps;
  caps.max_states = std::numeric_limits<std::size_t>::max();
  auto v = check_soundness(w, caps);
  EXPECT_TRUE(v.sound) << v.describe();
  EXPECT_GT(v.states_explored, 1'000'000'000'000ull);
}
