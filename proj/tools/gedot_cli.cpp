// Command-line front end. Talks to the library only through gedot.h.
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gedot/gedot.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

struct UsageError {
  std::string message;
};

void check(gedot_status s, const std::string& context) {
  if (s != GEDOT_OK) throw UsageError{context + ": " + gedot_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  gedot_string_free(s);
  return out;
}

class Dataset {
 public:
  explicit Dataset(const std::string& path) { check(gedot_dataset_load(path.c_str(), &ds_), path); }
  explicit Dataset(gedot_dataset* ds) : ds_(ds) {}
  Dataset(const Dataset&) = delete;
  Dataset& operator=(const Dataset&) = delete;
  ~Dataset() { gedot_dataset_destroy(ds_); }
  const gedot_dataset* get() const { return ds_; }
  std::size_t size() const { return gedot_dataset_size(ds_); }

 private:
  gedot_dataset* ds_ = nullptr;
};

struct LineResult {
  std::string text;
  bool failed = false;
};

// Evaluates job(i) for every i on `threads` workers; results come back in
// index order regardless of scheduling.
std::vector<LineResult> run_ordered(std::size_t n, unsigned threads,
                                    const std::function<LineResult(std::size_t)>& job) {
  std::vector<LineResult> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = job(i);
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError{"cannot open '" + path + "' for writing"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw UsageError{"write failed"};
  }

 private:
  std::ofstream file_;
};

int write_lines(const std::vector<LineResult>& lines, const std::string& output) {
  Output out(output);
  std::size_t failures = 0;
  for (const LineResult& r : lines) {
    out.stream() << r.text << '\n';
    if (r.failed) ++failures;
  }
  out.finish();
  if (failures) {
    std::fprintf(stderr, "gedot: %zu of %zu pairs failed (see the \"error\" fields)\n", failures, lines.size());
    return kExitPartial;
  }
  return kExitOk;
}

std::string json_string(const std::string& text) {
  std::string out = "\"";
  for (unsigned char ch : text) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += static_cast<char>(ch);
    } else if (ch < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", ch);
      out += buf;
    } else {
      out += static_cast<char>(ch);
    }
  }
  return out + "\"";
}

// Results line for a pair whose call failed, carrying the library's message.
LineResult failure_line(std::size_t index, const char* method) {
  return LineResult{"{\"pair_index\":" + std::to_string(index) + ",\"method\":\"" + method +
                        "\",\"error\":" + json_string(gedot_last_error()) + "}",
                    true};
}

struct SolverFlags {
  std::string method = "ensemble";
  double epsilon = 0.05;
  int sinkhorn_iters = 1000;
  double sinkhorn_tol = 1e-9;
  bool stabilized = false;
  int cg_iters = 1000;
  double cg_tol = 1e-8;
  int k = 100;
  bool no_pruning = false;
};

struct CommonFlags {
  std::string input;
  std::string output;
  unsigned parallel = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool dataset_input) {
  if (dataset_input) cmd->add_option("dataset", f.input, "Dataset (JSON lines)")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", f.output, "Output file (default: stdout)");
  cmd->add_option("--parallel", f.parallel, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--seed", f.seed, "Random seed (compute is deterministic and only records it)");
}

int run_compute(const SolverFlags& s, const CommonFlags& c, bool paths, bool timing) {
  Dataset ds(c.input);
  gedot_options* raw = nullptr;
  check(gedot_options_create(&raw), "options");
  std::unique_ptr<gedot_options, decltype(&gedot_options_destroy)> opts(raw, &gedot_options_destroy);
  check(gedot_options_set_method(raw, s.method.c_str()), "--method");
  check(gedot_options_set_epsilon(raw, s.epsilon), "--epsilon");
  check(gedot_options_set_sinkhorn_iters(raw, s.sinkhorn_iters), "--sinkhorn-iters");
  check(gedot_options_set_sinkhorn_tol(raw, s.sinkhorn_tol), "--sinkhorn-tol");
  check(gedot_options_set_stabilized(raw, s.stabilized), "--stabilized");
  check(gedot_options_set_cg_iters(raw, s.cg_iters), "--cg-iters");
  check(gedot_options_set_cg_tol(raw, s.cg_tol), "--cg-tol");
  check(gedot_options_set_k(raw, s.k), "--k");
  check(gedot_options_set_pruning(raw, !s.no_pruning), "--no-pruning");
  const int flags = (paths ? GEDOT_WITH_PATH : 0) | (timing ? GEDOT_WITH_TIMING : 0);
  auto lines = run_ordered(ds.size(), c.parallel, [&](std::size_t i) {
    char* line = nullptr;
    const gedot_status st = gedot_compute(ds.get(), i, raw, flags, &line);
    return LineResult{take(line), st != GEDOT_OK};
  });
  return write_lines(lines, c.output);
}

int run_exact(const CommonFlags& c, std::size_t max_nodes, bool annotate) {
  Dataset ds(c.input);
  auto lines = run_ordered(ds.size(), c.parallel, [&](std::size_t i) {
    char* line = nullptr;
    const gedot_status st =
        gedot_exact(ds.get(), i, max_nodes, annotate ? GEDOT_EXACT_ANNOTATE : GEDOT_EXACT_RESULT, &line);
    if (st != GEDOT_OK) return failure_line(i, "exact");
    return LineResult{take(line), false};
  });
  return write_lines(lines, c.output);
}

int run_lb(const CommonFlags& c) {
  Dataset ds(c.input);
  auto lines = run_ordered(ds.size(), c.parallel, [&](std::size_t i) {
    long long lb = 0;
    if (gedot_lower_bound(ds.get(), i, &lb) != GEDOT_OK) return failure_line(i, "lb");
    return LineResult{"{\"pair_index\":" + std::to_string(i) + ",\"lower_bound\":" + std::to_string(lb) + "}",
                      false};
  });
  return write_lines(lines, c.output);
}

int run_eval(const std::string& dataset, const std::string& results, const std::string& format,
             const std::string& output) {
  Dataset ds(dataset);
  gedot_evaluator* raw = nullptr;
  check(gedot_evaluator_create(ds.get(), &raw), "evaluator");
  std::unique_ptr<gedot_evaluator, decltype(&gedot_evaluator_destroy)> ev(raw, &gedot_evaluator_destroy);
  std::ifstream in(results);
  if (!in) throw UsageError{"cannot open '" + results + "'"};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    check(gedot_evaluator_add(raw, line.c_str()), results + ":" + std::to_string(lineno));
  }
  char* report = nullptr;
  if (format == "table") {
    check(gedot_evaluator_report_table(raw, &report), "report");
  } else {
    check(gedot_evaluator_report_json(raw, &report), "report");
  }
  Output out(output);
  out.stream() << take(report);
  if (format != "table") out.stream() << '\n';
  out.finish();
  return kExitOk;
}

int run_synth(gedot_synth_config cfg, const std::string& labels, const std::string& output) {
  cfg.labels = labels.c_str();
  gedot_dataset* raw = nullptr;
  check(gedot_synth_dataset(&cfg, &raw), "synth");
  Dataset ds(raw);
  Output out(output);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    char* line = nullptr;
    check(gedot_dataset_line(ds.get(), i, &line), "synth");
    out.stream() << take(line) << '\n';
  }
  out.finish();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate graph edit distance and edit paths via optimal transport"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gedot_version()));

  SolverFlags solver;
  CommonFlags common;
  bool paths = false;
  bool timing = false;
  auto* compute = app.add_subcommand("compute", "Estimate GED (and edit paths) for every pair");
  add_common(compute, common, true);
  compute->add_option("--method", solver.method, "gedgw, handcrafted-ot or ensemble")
      ->check(CLI::IsMember({"gedgw", "handcrafted-ot", "ensemble"}));
  compute->add_option("--epsilon", solver.epsilon, "Sinkhorn entropic regularization")->check(CLI::PositiveNumber);
  compute->add_option("--sinkhorn-iters", solver.sinkhorn_iters, "Sinkhorn iteration cap")->check(CLI::PositiveNumber);
  compute->add_option("--sinkhorn-tol", solver.sinkhorn_tol, "Sinkhorn marginal residual for early stop")
      ->check(CLI::NonNegativeNumber);
  compute->add_flag("--stabilized", solver.stabilized, "Log-domain Sinkhorn (for small epsilon)");
  compute->add_option("--cg-iters", solver.cg_iters, "Conditional gradient iteration cap")->check(CLI::PositiveNumber);
  compute->add_option("--cg-tol", solver.cg_tol, "Relative objective decrease for CG early stop")
      ->check(CLI::NonNegativeNumber);
  compute->add_option("--k", solver.k, "Matchings explored by k-best")->check(CLI::PositiveNumber);
  compute->add_flag("--no-pruning", solver.no_pruning, "Disable lower-bound pruning in k-best");
  compute->add_flag("--paths", paths, "Emit matching and edit path");
  compute->add_flag("--timing", timing, "Emit elapsed_millis (output then differs between runs)");

  std::size_t max_nodes = 9;
  bool annotate = false;
  auto* exact = app.add_subcommand("exact", "Exact GED by branch and bound (small graphs)");
  add_common(exact, common, true);
  exact->add_option("--max-nodes", max_nodes, "Refuse pairs with more nodes than this");
  exact->add_flag("--annotate", annotate, "Write dataset lines with exact ged and optimal mappings");

  auto* lb = app.add_subcommand("lb", "Label-set lower bound for every pair");
  add_common(lb, common, true);

  std::string eval_dataset, eval_results, eval_format = "json";
  auto* eval = app.add_subcommand("eval", "Score a results file against dataset ground truth");
  eval->add_option("--dataset", eval_dataset, "Dataset with ground truth")->required()->check(CLI::ExistingFile);
  eval->add_option("--results", eval_results, "Results file from compute or exact")->required()->check(CLI::ExistingFile);
  eval->add_option("--format", eval_format, "json or table")->check(CLI::IsMember({"json", "table"}));
  eval->add_option("-o,--output", common.output, "Output file (default: stdout)");

  gedot_synth_config synth_cfg;
  gedot_synth_config_init(&synth_cfg);
  std::string synth_labels = synth_cfg.labels;
  auto* synth = app.add_subcommand("synth", "Generate pairs by random non-undoing edits");
  synth->add_option("--count", synth_cfg.count, "Number of pairs");
  synth->add_option("--pairs-per-query", synth_cfg.pairs_per_query, "Pairs sharing one base graph");
  synth->add_option("--nodes-min", synth_cfg.nodes_min, "Smallest base graph");
  synth->add_option("--nodes-max", synth_cfg.nodes_max, "Largest base graph");
  synth->add_option("--edge-prob", synth_cfg.edge_prob, "Edge probability of base graphs")->check(CLI::Range(0.0, 1.0));
  synth->add_option("--delta-min", synth_cfg.delta_min, "Fewest edits per pair")->check(CLI::PositiveNumber);
  synth->add_option("--delta-max", synth_cfg.delta_max, "Most edits per pair")->check(CLI::PositiveNumber);
  synth->add_option("--labels", synth_labels, "Comma separated label alphabet (empty: unlabeled)");
  synth->add_option("--seed", synth_cfg.seed, "Random seed");
  synth->add_option("-o,--output", common.output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return run_compute(solver, common, paths, timing);
    if (*exact) return run_exact(common, max_nodes, annotate);
    if (*lb) return run_lb(common);
    if (*eval) return run_eval(eval_dataset, eval_results, eval_format, common.output);
    if (*synth) return run_synth(synth_cfg, synth_labels, common.output);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "gedot: %s\n", e.message.c_str());
    return kExitUsage;
  }
  return kExitUsage;
}
