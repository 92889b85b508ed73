#include "core/pipeline.hpp"

#include "core/error.hpp"

namespace gedot {

bool is_known_method(const std::string& name) {
  return name == method::kGedgw || name == method::kHandcrafted || name == method::kEnsemble;
}

PairOutcome run_pipeline(const GraphPair& pair, const PipelineOptions& opts) {
  PairOutcome out;
  if (opts.method == method::kGedgw) {
    out.estimate = gedgw_estimate(pair, opts.cg, opts.kbest, true);
  } else if (opts.method == method::kHandcrafted) {
    out.estimate = handcrafted_ot_estimate(pair, opts.ot, opts.kbest);
  } else if (opts.method == method::kEnsemble) {
    const std::vector<Estimate> members{gedgw_estimate(pair, opts.cg, opts.kbest, true),
                                        handcrafted_ot_estimate(pair, opts.ot, opts.kbest)};
    const Estimate by_value = ensemble_min(members);
    const Estimate by_path = ensemble_path(members);
    out.estimate.method = method::kEnsemble;
    out.estimate.ged_value = by_value.ged_value;
    out.estimate.transport_cost = by_value.transport_cost;
    out.estimate.path = by_path.path;
    out.estimate.matching = by_path.matching;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown method '" + opts.method +
                                         "' (expected gedgw, handcrafted-ot or ensemble)");
  }
  if (out.estimate.matching) out.path = reported_path(pair, *out.estimate.matching);
  out.lower_bound = ged_lower_bound(pair);
  return out;
}

namespace {

void append_header(std::string& s, std::size_t pair_index, const std::optional<std::string>& query_id,
                   const std::string& method) {
  s += "{\"pair_index\":" + std::to_string(pair_index);
  if (query_id) s += ",\"query_id\":" + Json(*query_id).dump();
  s += ",\"method\":" + Json(method).dump();
}

}  // namespace

std::string result_line(std::size_t pair_index, const std::optional<std::string>& query_id,
                        const PairOutcome& outcome, bool with_path,
                        std::optional<double> elapsed_millis) {
  std::string s;
  append_header(s, pair_index, query_id, outcome.estimate.method);
  s += ",\"ged_estimate\":" + format_real(outcome.estimate.ged_value);
  s += ",\"lower_bound\":" + std::to_string(outcome.lower_bound);
  if (outcome.path) s += ",\"path_length\":" + std::to_string(outcome.path->length());
  if (with_path && outcome.path && outcome.estimate.matching) {
    s += ",\"matching\":" + Json(*outcome.estimate.matching).dump();
    s += ",\"path\":" + path_to_json(*outcome.path).dump();
  }
  if (elapsed_millis) s += ",\"elapsed_millis\":" + format_real(*elapsed_millis);
  s += "}";
  return s;
}

std::string error_line(std::size_t pair_index, const std::optional<std::string>& query_id,
                       const std::string& method, const std::string& message) {
  std::string s;
  append_header(s, pair_index, query_id, method);
  s += ",\"error\":" + Json(message).dump() + "}";
  return s;
}

}  // namespace gedot
