#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/edit_path.hpp"
#include "core/lsap.hpp"

namespace gedot {

struct KBestConfig {
  int k = 100;
  bool enable_pruning = true;
};

/// sum_i pi[i, m[i]].
double matching_weight(const Matrix& pi, const NodeMatching& m);

struct BestPair {
  NodeMatching best;
  std::optional<NodeMatching> second;
};

/// Maximum-weight matching under the constraints, and the best matching that
/// differs from it in at least one pair (absent for a singleton space). Ties go
/// to the lexicographically smallest matching.
BestPair best_and_second(const Matrix& pi, const PairSet& included = {},
                         const PairSet& excluded = {});

/// Lower bound on the edit count of every matching that contains `included`:
/// the edits fixed among included pairs plus a label-set bound on the rest.
long long subspace_lower_bound(const GraphPair& pair, const PairSet& included);

struct KBestResult {
  EditPath path;
  NodeMatching matching;
  long long ged_estimate = 0;
  std::size_t matchings_evaluated = 0;
};

/// Solution-space splitting over matchings ranked by coupling weight; returns
/// the shortest edit path among all matchings it discovers. pi is n1 x n2.
KBestResult kbest_gep(const GraphPair& pair, const Matrix& pi, const KBestConfig& cfg = {});

/// The weight-ranked matching sequence the splitting visits without pruning:
/// the best matching, then the second best of each split subspace.
std::vector<NodeMatching> ranked_matchings(const Matrix& pi, int k);

}  // namespace gedot
