#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace gedot {

/// One evaluated pair. Operation lists use the canonical keys from
/// canonical_op_keys so paths built from different matchings compare.
struct PairRecord {
  std::size_t pair_index = 0;
  std::string query_id;
  double prediction = 0.0;
  long long truth = 0;
  std::optional<std::vector<std::string>> predicted_ops;
  std::vector<std::vector<std::string>> truth_ops;  // one list per ground-truth path
  std::optional<double> elapsed_millis;
};

struct RankMetrics {
  std::optional<double> spearman_rho;
  std::optional<double> kendall_tau;
  std::optional<double> p_at_10;
  std::optional<double> p_at_20;
  std::size_t groups = 0;
  std::size_t skipped_rank_groups = 0;  // constant predictions or truths
  std::size_t skipped_p10_groups = 0;   // fewer than 10 pairs
  std::size_t skipped_p20_groups = 0;
};

struct PathMetrics {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
  std::size_t pairs = 0;
};

struct EvalReport {
  std::size_t pairs = 0;
  double mae = 0.0;
  double accuracy = 0.0;
  double feasibility = 0.0;
  RankMetrics rank;
  PathMetrics path;
  std::optional<double> seconds_per_100_pairs;
};

double mae(const std::vector<PairRecord>& records);
/// Fraction with round-half-up(prediction) == truth.
double accuracy(const std::vector<PairRecord>& records);
/// Fraction with prediction >= truth (1e-9 slack).
double feasibility(const std::vector<PairRecord>& records);
/// Per query group: Spearman rho (average ranks), Kendall tau-b, p@10, p@20;
/// each averaged over the groups where it is defined.
RankMetrics rank_metrics(const std::vector<PairRecord>& records);
/// Multiset overlap of predicted and ground-truth operations, averaged over
/// records carrying both. With several ground-truth paths the best F1 counts.
PathMetrics path_metrics(const std::vector<PairRecord>& records);

EvalReport evaluate(const std::vector<PairRecord>& records);

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);
/// Kendall tau-b in O(n log n). NaN when either side is constant.
double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
/// |top-k(pred) ∩ top-k(truth)| / k with top-k = k smallest; items tied with
/// the k-th truth value all count as truth top-k.
double precision_at_k(const std::vector<double>& pred, const std::vector<double>& truth,
                      std::size_t k);

/// Comparable operation keys for the path ep_gen builds from (pair, m):
/// relabels and edges in g2's frame, inserted nodes by insertion order.
std::vector<std::string> canonical_op_keys(const GraphPair& pair, const NodeMatching& m);

}  // namespace gedot
