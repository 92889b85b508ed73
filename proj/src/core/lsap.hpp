#pragma once

#include <set>
#include <utility>

#include "core/graph.hpp"

namespace gedot {

using PairSet = std::set<std::pair<NodeIndex, NodeIndex>>;

struct Assignment {
  NodeMatching matching;  // row -> column, one entry per row
  double cost = 0.0;
};

/// Minimum-cost injection of the rows of `cost` (n1 <= n2) into its columns
/// that contains every pair in `forced` and none in `forbidden`. Among optimal
/// matchings the lexicographically smallest one is returned.
/// Throws Infeasible when the constraints admit no matching.
Assignment lsap_min(const Matrix& cost, const PairSet& forced = {}, const PairSet& forbidden = {});

}  // namespace gedot
