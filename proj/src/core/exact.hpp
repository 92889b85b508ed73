#pragma once

#include <vector>

#include "core/graph.hpp"

namespace gedot {

struct ExactOptions {
  std::size_t max_nodes = 9;
  std::size_t matching_cap = 10;
};

struct ExactResult {
  long long ged = 0;
  std::vector<NodeMatching> optimal_matchings;  // restricted to the real g1 nodes
  std::size_t enumerated_count = 0;             // complete bijections scored
};

/// Exact GED by branch and bound over bijections of the padded pair.
/// Throws TooLarge when n2 exceeds max_nodes.
ExactResult exact_ged(const GraphPair& pair, const ExactOptions& opts = {});

}  // namespace gedot
