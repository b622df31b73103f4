#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wf2pt/process_tree.hpp"

namespace wf2pt {

struct TriangularCount {
  unsigned low = 10, mode = 20, high = 30;
};

struct GeneratorConfig {
  TriangularCount activities{};
  // Indexed by Operator: Seq, Xor, And, Loop.
  std::array<double, 4> operator_probabilities{0.35, 0.25, 0.25, 0.15};
  std::uint64_t seed = 0;

  double probability(Operator op) const { return operator_probabilities[static_cast<int>(op)]; }

  /// Throws std::invalid_argument naming the broken invariant.
  void validate() const {
    if (activities.low < 1) throw std::invalid_argument("activity count low must be >= 1");
    if (!(activities.low <= activities.mode && activities.mode <= activities.high))
      throw std::invalid_argument("activity counts must satisfy low <= mode <= high");
    double sum = 0;
    for (double p : operator_probabilities) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("operator probability outside [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("operator probabilities must sum to 1");
  }
};

/// Reads `key = value` lines. Keys: low, mode, high, seq, xor, and, loop,
/// seed. '#' starts a comment. Missing keys keep their defaults.
inline GeneratorConfig read_generator_config(std::istream& in) {
  GeneratorConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto strip = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    if (strip(line).empty()) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "low") cfg.activities.low = std::stoul(value);
      else if (key == "mode") cfg.activities.mode = std::stoul(value);
      else if (key == "high") cfg.activities.high = std::stoul(value);
      else if (key == "seq") cfg.operator_probabilities[0] = std::stod(value);
      else if (key == "xor") cfg.operator_probabilities[1] = std::stod(value);
      else if (key == "and") cfg.operator_probabilities[2] = std::stod(value);
      else if (key == "loop") cfg.operator_probabilities[3] = std::stod(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else throw std::invalid_argument("unknown key " + key);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

inline GeneratorConfig parse_generator_config(const std::string& text) {
  std::istringstream in(text);
  return read_generator_config(in);
}

namespace detail {

// Library distributions are implementation-defined; draws are converted by
// hand so trees are identical across standard libraries.
class GeneratorRng {
 public:
  explicit GeneratorRng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return lo + x % span;
  }

 private:
  std::mt19937_64 engine_;
};

inline unsigned triangular(const TriangularCount& d, double u) {
  const double a = d.low, c = d.mode, b = d.high;
  if (b == a) return d.low;
  const double fc = (c - a) / (b - a);
  const double x = u < fc ? a + std::sqrt(u * (b - a) * (c - a))
                          : b - std::sqrt((1 - u) * (b - a) * (b - c));
  return static_cast<unsigned>(std::clamp(std::lround(x), static_cast<long>(d.low),
                                          static_cast<long>(d.high)));
}

class TreeSampler {
 public:
  TreeSampler(const GeneratorConfig& cfg, GeneratorRng& rng) : cfg_(cfg), rng_(rng) {}

  ProcessTree build(unsigned budget) {
    if (budget == 1) return ProcessTree::activity("a" + std::to_string(++named_));
    const Operator op = pick_operator();
    const unsigned arity =
        op == Operator::Loop ? 2 : static_cast<unsigned>(rng_.between(2, std::min(4u, budget)));
    std::vector<ProcessTree> kids;
    for (unsigned part : split(budget, arity)) kids.push_back(build(part));
    return ProcessTree(op, std::move(kids));
  }

 private:
  Operator pick_operator() {
    double u = rng_.unit();
    for (int i = 0; i < 3; ++i) {
      u -= cfg_.operator_probabilities[i];
      if (u < 0) return static_cast<Operator>(i);
    }
    return Operator::Loop;
  }

  // Uniformly random composition of `n` into `k` positive parts.
  std::vector<unsigned> split(unsigned n, unsigned k) {
    std::vector<unsigned> cuts;
    while (cuts.size() + 1 < k) {
      unsigned c = static_cast<unsigned>(rng_.between(1, n - 1));
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<unsigned> parts;
    unsigned prev = 0;
    for (unsigned c : cuts) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(n - prev);
    return parts;
  }

  const GeneratorConfig& cfg_;
  GeneratorRng& rng_;
  unsigned named_ = 0;
};

}  // namespace detail

inline unsigned sample_activity_count(const GeneratorConfig& cfg) {
  detail::GeneratorRng rng(cfg.seed);
  return detail::triangular(cfg.activities, rng.unit());
}

/// Leaves are distinct activities a1..an in depth-first order, where n is
/// drawn from the triangular distribution. Deterministic in the config.
inline ProcessTree sample_tree(const GeneratorConfig& cfg) {
  cfg.validate();
  detail::GeneratorRng rng(cfg.seed);
  const unsigned n = detail::triangular(cfg.activities, rng.unit());
  detail::TreeSampler sampler(cfg, rng);
  return sampler.build(n);
}

}  // namespace wf2pt
