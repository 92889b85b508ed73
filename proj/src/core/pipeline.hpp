#pragma once

#include <optional>
#include <string>

#include "core/baseline.hpp"
#include "core/io.hpp"

namespace gedot {

struct PipelineOptions {
  std::string method = method::kEnsemble;
  SinkhornOptions ot;
  CgOptions cg;
  KBestConfig kbest;
};

/// The answer for one pair. `path` is in the caller's orientation (see
/// reported_path); `matching` is in the canonical one.
struct PairOutcome {
  Estimate estimate;
  std::optional<EditPath> path;
  long long lower_bound = 0;
};

bool is_known_method(const std::string& name);

/// Runs the named pipeline. ensemble = min value and shortest path over
/// (gedgw, handcrafted-ot), in that order.
PairOutcome run_pipeline(const GraphPair& pair, const PipelineOptions& opts);

/// One results-file line. Fields: pair_index, query_id (when known), method,
/// ged_estimate, lower_bound, then matching and path when `with_path`,
/// elapsed_millis when given. Reals use format_real.
std::string result_line(std::size_t pair_index, const std::optional<std::string>& query_id,
                        const PairOutcome& outcome, bool with_path,
                        std::optional<double> elapsed_millis = std::nullopt);

/// Results line for a pair whose solver failed.
std::string error_line(std::size_t pair_index, const std::optional<std::string>& query_id,
                       const std::string& method, const std::string& message);

}  // namespace gedot
