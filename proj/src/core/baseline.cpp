#include "core/baseline.hpp"

#include <cmath>

#include "core/error.hpp"

namespace gedot {

Matrix handcrafted_cost(const GraphPair& pair) {
  const Graph& g1 = pair.g1;
  const Graph& g2 = pair.g2;
  const auto n1 = static_cast<Eigen::Index>(g1.node_count());
  const auto n2 = static_cast<Eigen::Index>(g2.node_count());
  Matrix c(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    const auto ui = static_cast<NodeIndex>(i);
    for (Eigen::Index j = 0; j < n2; ++j) {
      const auto vj = static_cast<NodeIndex>(j);
      const double label_cost = labels_match(g1.label(ui), g2.label(vj)) ? 0.0 : 1.0;
      const double d1 = static_cast<double>(g1.degree(ui));
      const double d2 = static_cast<double>(g2.degree(vj));
      c(i, j) = label_cost + std::abs(d1 - d2) / 2.0;
    }
  }
  return c;
}

Estimate handcrafted_ot_estimate(const GraphPair& pair, const SinkhornOptions& ot,
                                 const KBestConfig& kbest) {
  const Matrix cost = handcrafted_cost(pair);
  OtResult res = extended_sinkhorn(cost, ot);
  KBestResult kb = kbest_gep(pair, res.coupling, kbest);
  Estimate e;
  e.method = method::kHandcrafted;
  e.ged_value = static_cast<double>(kb.ged_estimate);
  e.path = std::move(kb.path);
  e.matching = std::move(kb.matching);
  e.coupling = std::move(res.coupling);
  e.transport_cost = res.transport_cost;
  return e;
}

Estimate gedgw_estimate(const GraphPair& pair, const CgOptions& cg, const KBestConfig& kbest,
                        bool with_path) {
  GwSolution sol = gedgw_solve(pair, cg);
  Estimate e;
  e.method = method::kGedgw;
  e.ged_value = sol.ged_estimate;
  e.transport_cost = sol.ged_estimate;
  const auto n1 = static_cast<Eigen::Index>(pair.g1.node_count());
  Matrix trimmed = sol.coupling.topRows(n1);
  if (with_path) {
    KBestResult kb = kbest_gep(pair, trimmed, kbest);
    e.path = std::move(kb.path);
    e.matching = std::move(kb.matching);
  }
  e.coupling = std::move(trimmed);
  return e;
}

Estimate ensemble_min(const std::vector<Estimate>& estimates) {
  if (estimates.empty()) fail(ErrorKind::InvalidArgument, "ensemble needs at least one estimate");
  std::size_t best = 0;
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    if (estimates[i].ged_value < estimates[best].ged_value) best = i;
  }
  return estimates[best];
}

Estimate ensemble_path(const std::vector<Estimate>& estimates) {
  if (estimates.empty()) fail(ErrorKind::InvalidArgument, "ensemble needs at least one estimate");
  for (const Estimate& e : estimates) {
    if (!e.path) fail(ErrorKind::InvalidArgument, "estimate '" + e.method + "' carries no path");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    if (estimates[i].path->length() < estimates[best].path->length()) best = i;
  }
  return estimates[best];
}

}  // namespace gedot
