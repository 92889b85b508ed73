#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/edit_path.hpp"
#include "core/gw.hpp"
#include "core/kbest.hpp"
#include "core/ot.hpp"

namespace gedot {

namespace method {
inline constexpr const char* kGedgw = "gedgw";
inline constexpr const char* kHandcrafted = "handcrafted-ot";
inline constexpr const char* kEnsemble = "ensemble";
}  // namespace method

/// One estimator's answer for a canonical pair.
struct Estimate {
  std::string method;
  double ged_value = 0.0;
  std::optional<EditPath> path;
  std::optional<NodeMatching> matching;  // the matching behind `path`
  std::optional<Matrix> coupling;        // n1 x n2
  double transport_cost = 0.0;           // diagnostics only
};

/// n1 x n2: 1 for differing labels plus half the degree difference.
Matrix handcrafted_cost(const GraphPair& pair);

Estimate handcrafted_ot_estimate(const GraphPair& pair, const SinkhornOptions& ot,
                                 const KBestConfig& kbest);

/// GEDGW: the CG objective is the value; the path (when requested) comes from
/// k-best matching on the coupling with dummy rows stripped.
Estimate gedgw_estimate(const GraphPair& pair, const CgOptions& cg, const KBestConfig& kbest,
                        bool with_path);

/// Minimum ged_value; ties keep caller order. Throws InvalidArgument when empty.
Estimate ensemble_min(const std::vector<Estimate>& estimates);

/// Shortest path; ties keep caller order. Throws InvalidArgument when empty or
/// when an estimate has no path.
Estimate ensemble_path(const std::vector<Estimate>& estimates);

}  // namespace gedot
