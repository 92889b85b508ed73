#include "gedot/gedot.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/exact.hpp"
#include "core/io.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "core/synth.hpp"

struct gedot_options {
  gedot::PipelineOptions pipeline;
};

struct gedot_dataset {
  std::vector<gedot::DatasetEntry> entries;
};

struct gedot_evaluator {
  const gedot_dataset* truth = nullptr;
  std::map<std::size_t, gedot::PairRecord> records;  // keyed by pair_index
  std::size_t failed = 0;
  std::size_t without_truth = 0;
};

namespace {

thread_local std::string g_last_error;

gedot_status status_of(gedot::ErrorKind kind) {
  switch (kind) {
    case gedot::ErrorKind::InvalidArgument: return GEDOT_ERR_INVALID_ARGUMENT;
    case gedot::ErrorKind::Validation: return GEDOT_ERR_VALIDATION;
    case gedot::ErrorKind::Infeasible: return GEDOT_ERR_INFEASIBLE;
    case gedot::ErrorKind::NumericalInstability: return GEDOT_ERR_NUMERICAL;
    case gedot::ErrorKind::TooLarge: return GEDOT_ERR_TOO_LARGE;
    case gedot::ErrorKind::Io: return GEDOT_ERR_IO;
    case gedot::ErrorKind::Parse: return GEDOT_ERR_PARSE;
  }
  return GEDOT_ERR_INTERNAL;
}

gedot_status record(gedot_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

// Runs body, translating every exception into a status code.
template <typename F>
gedot_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return GEDOT_OK;
  } catch (const gedot::Error& e) {
    return record(status_of(e.kind()), e.what());
  } catch (const gedot::Json::exception& e) {
    return record(GEDOT_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return record(GEDOT_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return record(GEDOT_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(GEDOT_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool cond, const char* what) {
  if (!cond) gedot::fail(gedot::ErrorKind::InvalidArgument, what);
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

const gedot::DatasetEntry& entry_at(const gedot_dataset* ds, std::size_t index) {
  require(ds != nullptr, "dataset is null");
  if (index >= ds->entries.size()) {
    gedot::fail(gedot::ErrorKind::InvalidArgument,
                "pair index " + std::to_string(index) + " out of range (dataset has " +
                    std::to_string(ds->entries.size()) + " pairs)");
  }
  return ds->entries[index];
}

// Query group of a pair: explicit query_id, else the first graph's id.
std::optional<std::string> group_of(const gedot::DatasetEntry& e) {
  if (e.query_id) return e.query_id;
  if (!e.g1.id().empty()) return e.g1.id();
  return std::nullopt;
}

std::vector<std::string> split_labels(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string optional_real(const std::optional<double>& v) {
  return v ? gedot::format_real(*v) : "null";
}

}  // namespace

extern "C" {

const char* gedot_version(void) { return "0.1.0"; }

const char* gedot_status_name(gedot_status status) {
  switch (status) {
    case GEDOT_OK: return "ok";
    case GEDOT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GEDOT_ERR_VALIDATION: return "validation error";
    case GEDOT_ERR_INFEASIBLE: return "infeasible";
    case GEDOT_ERR_NUMERICAL: return "numerical instability";
    case GEDOT_ERR_TOO_LARGE: return "too large";
    case GEDOT_ERR_IO: return "i/o error";
    case GEDOT_ERR_PARSE: return "parse error";
    case GEDOT_ERR_OUT_OF_MEMORY: return "out of memory";
    case GEDOT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gedot_last_error(void) { return g_last_error.c_str(); }

void gedot_string_free(char* s) { std::free(s); }

gedot_status gedot_options_create(gedot_options** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new gedot_options();
  });
}

void gedot_options_destroy(gedot_options* opts) { delete opts; }

gedot_status gedot_options_set_method(gedot_options* opts, const char* method) {
  return guarded([&] {
    require(opts && method, "null argument");
    if (!gedot::is_known_method(method)) {
      gedot::fail(gedot::ErrorKind::InvalidArgument,
                  std::string("unknown method '") + method + "' (expected gedgw, handcrafted-ot or ensemble)");
    }
    opts->pipeline.method = method;
  });
}

gedot_status gedot_options_set_epsilon(gedot_options* opts, double epsilon) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(epsilon > 0.0, "epsilon must be positive");
    opts->pipeline.ot.epsilon = epsilon;
  });
}

gedot_status gedot_options_set_sinkhorn_iters(gedot_options* opts, int iters) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(iters > 0, "sinkhorn iterations must be positive");
    opts->pipeline.ot.max_iter = iters;
  });
}

gedot_status gedot_options_set_sinkhorn_tol(gedot_options* opts, double tol) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(tol >= 0.0, "sinkhorn tolerance must be non-negative");
    opts->pipeline.ot.tol = tol;
  });
}

gedot_status gedot_options_set_stabilized(gedot_options* opts, int enabled) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    opts->pipeline.ot.stabilized = enabled != 0;
  });
}

gedot_status gedot_options_set_cg_iters(gedot_options* opts, int iters) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(iters > 0, "cg iterations must be positive");
    opts->pipeline.cg.max_iter = iters;
  });
}

gedot_status gedot_options_set_cg_tol(gedot_options* opts, double tol) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(tol >= 0.0, "cg tolerance must be non-negative");
    opts->pipeline.cg.tol = tol;
  });
}

gedot_status gedot_options_set_k(gedot_options* opts, int k) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    require(k >= 1, "k must be at least 1");
    opts->pipeline.kbest.k = k;
  });
}

gedot_status gedot_options_set_pruning(gedot_options* opts, int enabled) {
  return guarded([&] {
    require(opts != nullptr, "options are null");
    opts->pipeline.kbest.enable_pruning = enabled != 0;
  });
}

gedot_status gedot_dataset_load(const char* path, gedot_dataset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto ds = std::make_unique<gedot_dataset>();
    ds->entries = gedot::load_dataset(path);
    *out = ds.release();
  });
}

gedot_status gedot_dataset_parse(const char* text, gedot_dataset** out) {
  return guarded([&] {
    require(text && out, "null argument");
    std::istringstream in(text);
    auto ds = std::make_unique<gedot_dataset>();
    ds->entries = gedot::read_dataset(in);
    *out = ds.release();
  });
}

void gedot_dataset_destroy(gedot_dataset* ds) { delete ds; }

size_t gedot_dataset_size(const gedot_dataset* ds) { return ds ? ds->entries.size() : 0; }

gedot_status gedot_dataset_line(const gedot_dataset* ds, size_t index, char** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = duplicate(gedot::entry_to_json(entry_at(ds, index)).dump());
  });
}

gedot_status gedot_dataset_save(const gedot_dataset* ds, const char* path) {
  return guarded([&] {
    require(ds && path, "null argument");
    gedot::save_dataset(path, ds->entries);
  });
}

void gedot_synth_config_init(gedot_synth_config* cfg) {
  if (!cfg) return;
  cfg->count = 100;
  cfg->pairs_per_query = 10;
  cfg->nodes_min = 3;
  cfg->nodes_max = 7;
  cfg->edge_prob = 0.3;
  cfg->delta_min = 1;
  cfg->delta_max = 4;
  cfg->labels = "C,N,O";
  cfg->seed = 0;
}

gedot_status gedot_synth_dataset(const gedot_synth_config* cfg, gedot_dataset** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    require(cfg->pairs_per_query >= 1, "pairs_per_query must be at least 1");
    require(cfg->nodes_min <= cfg->nodes_max, "nodes_min exceeds nodes_max");
    require(cfg->delta_min >= 1 && cfg->delta_min <= cfg->delta_max, "need 1 <= delta_min <= delta_max");
    const std::vector<std::string> labels = split_labels(cfg->labels);
    auto ds = std::make_unique<gedot_dataset>();
    gedot::Graph base;
    std::string query;
    for (std::size_t i = 0; i < cfg->count; ++i) {
      const std::size_t q = i / cfg->pairs_per_query;
      if (i % cfg->pairs_per_query == 0) {
        const std::uint64_t s = gedot::mix_seed(cfg->seed, 2 * q);
        const std::size_t span = cfg->nodes_max - cfg->nodes_min + 1;
        const std::size_t n = cfg->nodes_min + static_cast<std::size_t>(s % span);
        query = "q" + std::to_string(q);
        base = gedot::random_graph(n, cfg->edge_prob, labels, gedot::mix_seed(s, 1), query);
      }
      const std::uint64_t pair_seed = gedot::mix_seed(gedot::mix_seed(cfg->seed, 2 * q + 1), i);
      gedot::SynthSpec spec;
      const auto span = static_cast<std::uint64_t>(cfg->delta_max - cfg->delta_min + 1);
      spec.delta = cfg->delta_min + static_cast<int>(pair_seed % span);
      spec.seed = pair_seed;
      spec.label_pool = labels;
      gedot::DatasetEntry e = gedot::synth_pair(base, spec);
      e.query_id = query;
      ds->entries.push_back(std::move(e));
    }
    *out = ds.release();
  });
}

gedot_status gedot_compute(const gedot_dataset* ds, size_t index, const gedot_options* opts,
                           int flags, char** out) {
  if (out) *out = nullptr;
  std::optional<std::string> query;
  std::string method = opts ? opts->pipeline.method : std::string();
  const gedot_status s = guarded([&] {
    require(opts && out, "null argument");
    const gedot::DatasetEntry& e = entry_at(ds, index);
    query = group_of(e);
    const auto start = std::chrono::steady_clock::now();
    const gedot::PairOutcome outcome = gedot::run_pipeline(gedot::to_pair(e), opts->pipeline);
    std::optional<double> elapsed;
    if (flags & GEDOT_WITH_TIMING) {
      elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    *out = duplicate(gedot::result_line(index, query, outcome, (flags & GEDOT_WITH_PATH) != 0, elapsed));
  });
  if (s != GEDOT_OK && out && !*out && opts) {
    try {
      *out = duplicate(gedot::error_line(index, query, method, g_last_error));
    } catch (...) {
      // the status already reports the failure
    }
  }
  return s;
}

gedot_status gedot_exact(const gedot_dataset* ds, size_t index, size_t max_nodes, int mode,
                         char** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(mode == GEDOT_EXACT_RESULT || mode == GEDOT_EXACT_ANNOTATE, "unknown exact mode");
    const gedot::DatasetEntry& e = entry_at(ds, index);
    const gedot::GraphPair pair = gedot::to_pair(e);
    gedot::ExactOptions eo;
    eo.max_nodes = max_nodes;
    const gedot::ExactResult r = gedot::exact_ged(pair, eo);
    if (mode == GEDOT_EXACT_ANNOTATE) {
      gedot::DatasetEntry annotated = e;
      annotated.ged = r.ged;
      annotated.mappings = r.optimal_matchings;
      annotated.approximate = false;
      *out = duplicate(gedot::entry_to_json(annotated).dump());
      return;
    }
    std::string s = "{\"pair_index\":" + std::to_string(index);
    if (auto q = group_of(e)) s += ",\"query_id\":" + gedot::Json(*q).dump();
    s += ",\"method\":\"exact\",\"ged_estimate\":" + gedot::format_real(static_cast<double>(r.ged));
    s += ",\"lower_bound\":" + std::to_string(gedot::ged_lower_bound(pair));
    s += ",\"matching\":" + gedot::Json(r.optimal_matchings.front()).dump();
    s += ",\"mappings\":" + gedot::Json(r.optimal_matchings).dump() + "}";
    *out = duplicate(s);
  });
}

gedot_status gedot_lower_bound(const gedot_dataset* ds, size_t index, long long* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = gedot::ged_lower_bound(gedot::to_pair(entry_at(ds, index)));
  });
}

gedot_status gedot_evaluator_create(const gedot_dataset* truth, gedot_evaluator** out) {
  return guarded([&] {
    require(truth && out, "null argument");
    auto ev = std::make_unique<gedot_evaluator>();
    ev->truth = truth;
    *out = ev.release();
  });
}

void gedot_evaluator_destroy(gedot_evaluator* ev) { delete ev; }

gedot_status gedot_evaluator_add(gedot_evaluator* ev, const char* result_line) {
  return guarded([&] {
    require(ev && result_line, "null argument");
    const gedot::Json j = gedot::Json::parse(result_line);
    if (!j.is_object() || !j.contains("pair_index") || !j["pair_index"].is_number_unsigned()) {
      gedot::fail(gedot::ErrorKind::Parse, "results line lacks a non-negative 'pair_index'");
    }
    const auto index = j["pair_index"].get<std::size_t>();
    const gedot::DatasetEntry& e = entry_at(ev->truth, index);
    if (ev->records.count(index)) {
      gedot::fail(gedot::ErrorKind::Validation, "pair_index " + std::to_string(index) + " given twice");
    }
    if (j.contains("error")) {
      ++ev->failed;
      return;
    }
    if (!e.ged) {
      ++ev->without_truth;
      return;
    }
    if (!j.contains("ged_estimate") || !j["ged_estimate"].is_number()) {
      gedot::fail(gedot::ErrorKind::Parse, "results line lacks a numeric 'ged_estimate'");
    }
    gedot::PairRecord r;
    r.pair_index = index;
    r.query_id = group_of(e).value_or("");
    r.prediction = j["ged_estimate"].get<double>();
    r.truth = *e.ged;
    if (auto it = j.find("elapsed_millis"); it != j.end() && it->is_number()) {
      r.elapsed_millis = it->get<double>();
    }
    if (auto it = j.find("matching"); it != j.end() && !e.mappings.empty()) {
      const gedot::GraphPair pair = gedot::to_pair(e);
      const auto m = it->get<gedot::NodeMatching>();
      gedot::check_matching(pair, m);
      r.predicted_ops = gedot::canonical_op_keys(pair, m);
      for (const auto& truth_m : e.mappings) r.truth_ops.push_back(gedot::canonical_op_keys(pair, truth_m));
    }
    ev->records.emplace(index, std::move(r));
  });
}

gedot_status gedot_evaluator_report_json(const gedot_evaluator* ev, char** out) {
  return guarded([&] {
    require(ev && out, "null argument");
    std::vector<gedot::PairRecord> recs;
    for (const auto& [_, r] : ev->records) recs.push_back(r);
    if (recs.empty()) gedot::fail(gedot::ErrorKind::InvalidArgument, "no scored pairs to report on");
    const gedot::EvalReport rep = gedot::evaluate(recs);
    std::string s = "{\"pairs\":" + std::to_string(rep.pairs);
    s += ",\"failed_pairs\":" + std::to_string(ev->failed);
    s += ",\"pairs_without_truth\":" + std::to_string(ev->without_truth);
    s += ",\"mae\":" + gedot::format_real(rep.mae);
    s += ",\"accuracy\":" + gedot::format_real(rep.accuracy);
    s += ",\"feasibility\":" + gedot::format_real(rep.feasibility);
    s += ",\"spearman_rho\":" + optional_real(rep.rank.spearman_rho);
    s += ",\"kendall_tau\":" + optional_real(rep.rank.kendall_tau);
    s += ",\"p_at_10\":" + optional_real(rep.rank.p_at_10);
    s += ",\"p_at_20\":" + optional_real(rep.rank.p_at_20);
    s += ",\"query_groups\":" + std::to_string(rep.rank.groups);
    s += ",\"skipped_rank_groups\":" + std::to_string(rep.rank.skipped_rank_groups);
    s += ",\"skipped_p10_groups\":" + std::to_string(rep.rank.skipped_p10_groups);
    s += ",\"skipped_p20_groups\":" + std::to_string(rep.rank.skipped_p20_groups);
    s += ",\"path_pairs\":" + std::to_string(rep.path.pairs);
    s += ",\"path_recall\":" + optional_real(rep.path.recall);
    s += ",\"path_precision\":" + optional_real(rep.path.precision);
    s += ",\"path_f1\":" + optional_real(rep.path.f1);
    s += ",\"seconds_per_100_pairs\":" + optional_real(rep.seconds_per_100_pairs);
    s += "}";
    *out = duplicate(s);
  });
}

gedot_status gedot_evaluator_report_table(const gedot_evaluator* ev, char** out) {
  return guarded([&] {
    require(ev && out, "null argument");
    char* json_text = nullptr;
    const gedot_status s = gedot_evaluator_report_json(ev, &json_text);
    if (s != GEDOT_OK) gedot::fail(gedot::ErrorKind::InvalidArgument, g_last_error);
    const gedot::Json j = gedot::Json::parse(json_text);
    std::free(json_text);
    std::size_t width = 0;
    for (const auto& [key, _] : j.items()) width = std::max(width, key.size());
    static const char* const kOrder[] = {
        "pairs", "failed_pairs", "pairs_without_truth", "mae", "accuracy", "feasibility",
        "spearman_rho", "kendall_tau", "p_at_10", "p_at_20", "query_groups",
        "skipped_rank_groups", "skipped_p10_groups", "skipped_p20_groups", "path_pairs",
        "path_recall", "path_precision", "path_f1", "seconds_per_100_pairs"};
    std::string table;
    for (const char* key : kOrder) {
      const gedot::Json& v = j.at(key);
      std::string value;
      if (v.is_null()) {
        value = "n/a";
      } else if (v.is_number_float()) {
        value = gedot::format_real(v.get<double>());
      } else {
        value = v.dump();
      }
      table += key;
      table.append(width - std::strlen(key) + 2, ' ');
      table += value + "\n";
    }
    *out = duplicate(table);
  });
}

}  // extern "C"
