#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wf2pt/wf2pt.hpp"

namespace {

using namespace wf2pt;

constexpr int kOk = 0, kError = 1, kNegative = 2, kInconclusive = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw std::runtime_error("cannot write " + path);
}

ExplorationCaps caps_from_env() {
  ExplorationCaps caps;
  if (const char* v = std::getenv("WF2PT_MAX_STATES")) caps.max_states = std::stoull(v);
  return caps;
}

WorkflowNet<Label> load_net(const std::string& path) {
  auto r = read_pnml(slurp(path));
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(r.net);
}

TriangularCount parse_activities(const std::string& s) {
  TriangularCount d;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> d.low >> c1 >> d.mode >> c2 >> d.high) || c1 != ',' || c2 != ',' || !in.eof())
    throw std::invalid_argument("--activities expects L,M,H");
  return d;
}

std::array<double, 4> parse_probs(const std::string& s) {
  std::array<double, 4> p{};
  std::istringstream in(s);
  std::string item;
  std::size_t i = 0;
  while (std::getline(in, item, ',')) {
    if (i == 4) throw std::invalid_argument("--probs expects seq,xor,and,loop");
    p[i++] = std::stod(item);
  }
  if (i != 4) throw std::invalid_argument("--probs expects seq,xor,and,loop");
  return p;
}

std::vector<TranslationVariant> parse_variants(const std::string& s) {
  if (s == "minimal") return {TranslationVariant::Minimal};
  if (s == "tau-bounded") return {TranslationVariant::TauBounded};
  if (s == "both") return {TranslationVariant::Minimal, TranslationVariant::TauBounded};
  throw std::invalid_argument("unknown variant " + s);
}

struct GeneratorFlags {
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string activities = "10,20,30";
  std::string probs;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--count", count, "number of trees")->required();
    cmd->add_option("--seed", seed, "seed of the first tree; tree i uses seed+i")->required();
    cmd->add_option("--activities", activities, "triangular activity count L,M,H");
    cmd->add_option("--probs", probs, "operator probabilities seq,xor,and,loop");
    cmd->add_option("--config", config, "key=value generator config file");
  }

  GeneratorConfig build(CLI::App* cmd) const {
    GeneratorConfig cfg;
    if (!config.empty()) {
      std::istringstream in(slurp(config));
      cfg = read_generator_config(in);
    }
    if (cmd->count("--activities") || config.empty()) cfg.activities = parse_activities(activities);
    if (!probs.empty()) cfg.operator_probabilities = parse_probs(probs);
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

int run_convert(const std::string& input, const std::string& output, bool strict,
                const std::string& log_path) {
  auto wf = load_net(input);
  auto outcome = reduce_to_tree(wf, ReductionOptions{strict});
  if (!log_path.empty()) spit(log_path, write_step_log(outcome.steps));
  if (outcome.success()) {
    const auto text = write_tree_text(*outcome.tree);
    if (!output.empty()) spit(output, text + "\n");
    std::cout << text << "\n";
    return kOk;
  }
  const auto& net = outcome.residual.net();
  std::cout << "irreducible: " << net.transitions().size() << " transitions, "
            << net.places().size() << " places remain\n";
  for (const auto& t : net.transitions()) {
    std::cout << "  " << t.str() << " [";
    bool first = true;
    for (const auto& p : net.preset(t)) std::cout << (first ? "" : ",") << p.str(), first = false;
    std::cout << "] -> [";
    first = true;
    for (const auto& p : net.postset(t)) std::cout << (first ? "" : ",") << p.str(), first = false;
    std::cout << "] " << write_tree_text(canonicalize(net.label(t))) << "\n";
  }
  return kNegative;
}

int run_check(const std::string& input, std::optional<std::size_t> max_states) {
  auto wf = load_net(input);
  auto caps = caps_from_env();
  if (max_states) caps.max_states = *max_states;
  std::cout << "workflow net: valid (source " << wf.source().str() << ", sink " << wf.sink().str()
            << ")\n";
  auto verdict = check_soundness(wf, caps);
  std::cout << verdict.describe() << " (" << verdict.states_explored << " states)\n";
  if (verdict.inconclusive()) return kInconclusive;
  return verdict.sound ? kOk : kNegative;
}

int run_lang(const std::string& input, const std::string& kind, std::size_t k) {
  TraceSet traces;
  if (kind == "net") {
    traces = enumerate_net_language(load_net(input), k, caps_from_env());
  } else if (kind == "tree") {
    traces = enumerate_tree_language(read_tree_text(slurp(input)), k);
  } else {
    throw std::invalid_argument("--kind must be net or tree");
  }
  for (const auto& t : traces) {
    if (t.empty()) {
      std::cout << "<>\n";
      continue;
    }
    for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << t[i];
    std::cout << "\n";
  }
  return kOk;
}

int run_rediscover(const GeneratorConfig& cfg, std::size_t count, const std::string& variant,
                   bool strict) {
  auto results = rediscover_batch(cfg, count, parse_variants(variant), ReductionOptions{strict});
  std::size_t matched = 0;
  for (const auto& r : results) matched += r.matched;
  std::cout << "matches " << matched << "/" << results.size() << "\n";
  for (const auto& r : results) {
    if (r.matched) continue;
    std::cout << "mismatch seed " << r.seed << " " << write_tree_text(r.generated);
    for (const auto& f : r.failures) std::cout << " | " << f;
    std::cout << "\n";
  }
  return matched == results.size() ? kOk : kNegative;
}

int run_bench(const GeneratorConfig& cfg, std::size_t count, const std::string& variant,
              const std::string& csv) {
  auto v = parse_variants(variant);
  if (v.size() != 1) throw std::invalid_argument("bench takes a single variant");
  auto rows = bench_batch(cfg, count, v.front());
  spit(csv, write_bench_csv(rows));
  std::cout << "instances " << rows.size() << "\n";
  if (auto fit = fit_quadratic(mean_time_per_size(rows))) {
    std::cout << "fit micros = " << fit->a << "*size^2 + " << fit->b << "*size + " << fit->c
              << "\n"
              << "r2 " << fit->r_squared << " over " << fit->points << " sizes\n";
  } else {
    std::cout << "no fit (fewer than three distinct sizes)\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate workflow nets into process trees by pattern reduction"};
  app.require_subcommand(1);

  std::string input, output, log_steps, kind = "net", variant = "minimal", csv;
  bool strict = false;
  std::optional<std::size_t> max_states;
  std::size_t max_length = 6;

  auto* convert = app.add_subcommand("convert", "reduce a PNML workflow net to a process tree");
  convert->add_option("--input", input)->required();
  convert->add_option("--output", output);
  convert->add_flag("--strict-and", strict, "require equal enabler pre-sets and follower post-sets");
  convert->add_option("--log-steps", log_steps);

  auto* tree2net = app.add_subcommand("tree2net", "translate a process tree to PNML");
  tree2net->add_option("--input", input)->required();
  tree2net->add_option("--variant", variant)->check(CLI::IsMember({"minimal", "tau-bounded"}));
  tree2net->add_option("--output", output)->required();

  auto* check = app.add_subcommand("check", "validate and check soundness");
  check->add_option("--input", input)->required();
  check->add_option("--max-states", max_states);

  auto* lang = app.add_subcommand("lang", "print the bounded language");
  lang->add_option("--input", input)->required();
  lang->add_option("--kind", kind)->check(CLI::IsMember({"net", "tree"}));
  lang->add_option("--max-length", max_length)->required();

  GeneratorFlags gen_r, gen_b;
  auto* rediscover_cmd = app.add_subcommand("rediscover", "generate, translate, reduce, compare");
  gen_r.attach(rediscover_cmd);
  rediscover_cmd->add_option("--variant", variant)
      ->check(CLI::IsMember({"minimal", "tau-bounded", "both"}));
  rediscover_cmd->add_flag("--strict-and", strict);

  auto* bench = app.add_subcommand("bench", "time reductions and fit a quadratic trend");
  gen_b.attach(bench);
  bench->add_option("--variant", variant)->check(CLI::IsMember({"minimal", "tau-bounded"}));
  bench->add_option("--csv", csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*convert) return run_convert(input, output, strict, log_steps);
    if (*tree2net) {
      auto v = variant == "tau-bounded" ? TranslationVariant::TauBounded : TranslationVariant::Minimal;
      spit(output, write_pnml(tree_to_wfnet(read_tree_text(slurp(input)), v)));
      return kOk;
    }
    if (*check) return run_check(input, max_states);
    if (*lang) return run_lang(input, kind, max_length);
    if (*rediscover_cmd)
      return run_rediscover(gen_r.build(rediscover_cmd), gen_r.count, variant, strict);
    if (*bench) return run_bench(gen_b.build(bench), gen_b.count, variant, csv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.position() << "\n";
    return kError;
  } catch (const StateSpaceExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const ResultSetCapExceeded& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
