#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "wf2pt/bench.hpp"
#include "wf2pt/canonical.hpp"
#include "wf2pt/generator.hpp"
#include "wf2pt/reduction.hpp"
#include "wf2pt/tree_text.hpp"
#include "wf2pt/tree_to_net.hpp"

namespace wf2pt {

// Generate, translate, reduce and compare canonical forms.

struct RediscoveryResult {
  std::uint64_t seed = 0;
  ProcessTree generated;
  bool matched = true;  // all requested variants reproduced the tree
  std::vector<std::string> failures;  // "variant: got <tree>" or "variant: irreducible"
};

inline RediscoveryResult rediscover(const ProcessTree& tree,
                                    const std::vector<TranslationVariant>& variants,
                                    const ReductionOptions& opts = {}) {
  RediscoveryResult r;
  r.generated = tree;
  const ProcessTree expected = canonicalize(tree);
  for (auto v : variants) {
    auto outcome = reduce_to_tree(tree_to_wfnet(tree, v), opts);
    if (!outcome.success()) {
      r.matched = false;
      r.failures.push_back(std::string(variant_name(v)) + ": irreducible");
    } else if (!(*outcome.tree == expected)) {
      r.matched = false;
      r.failures.push_back(std::string(variant_name(v)) + ": got " + write_tree_text(*outcome.tree));
    }
  }
  return r;
}

/// Instance i uses seed `base.seed + i`.
inline std::vector<RediscoveryResult> rediscover_batch(const GeneratorConfig& base, std::size_t count,
                                                       const std::vector<TranslationVariant>& variants,
                                                       const ReductionOptions& opts = {}) {
  std::vector<RediscoveryResult> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorConfig cfg = base;
    cfg.seed = base.seed + i;
    auto r = rediscover(sample_tree(cfg), variants, opts);
    r.seed = cfg.seed;
    out.push_back(std::move(r));
  }
  return out;
}

/// Times reduce_to_tree only; generation and translation are excluded.
inline BenchRow time_reduction(const WorkflowNet<Label>& wf, const ReductionOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto outcome = reduce_to_tree(wf, opts);
  const auto stop = clock::now();
  return BenchRow{wf.net().places().size() + wf.net().transitions().size(),
                  std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count(),
                  outcome.success() ? "tree" : "irreducible"};
}

inline std::vector<BenchRow> bench_batch(const GeneratorConfig& base, std::size_t count,
                                         TranslationVariant variant = TranslationVariant::Minimal,
                                         const ReductionOptions& opts = {}) {
  std::vector<BenchRow> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorConfig cfg = base;
    cfg.seed = base.seed + i;
    rows.push_back(time_reduction(tree_to_wfnet(sample_tree(cfg), variant), opts));
  }
  return rows;
}

}  // namespace wf2pt
