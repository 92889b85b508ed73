#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/io.hpp"

namespace gedot {

/// Order of the weights in SynthSpec::weights.
enum class SynthOp { Relabel, InsertNode, DeleteNode, InsertEdge, DeleteEdge };

struct SynthSpec {
  int delta = 1;
  std::uint64_t seed = 0;
  std::array<double, 5> weights{1.0, 1.0, 1.0, 1.0, 1.0};
  // Labels for relabels and inserted nodes; empty means the labels of g.
  std::vector<std::string> label_pool;
};

/// Applies delta random edits to g and returns (g, edited g) with ged = delta
/// marked approximate, the generating path and the mapping it induces.
///
/// Edits never undo each other: no edge is both inserted and deleted, no node
/// is relabeled twice or relabeled after insertion, node insertions and
/// deletions are not mixed, and only untouched isolated nodes are deleted.
/// Under these rules the mapping's induced path has exactly delta edits.
/// Throws InvalidArgument for delta < 1 and Infeasible when no edit applies.
DatasetEntry synth_pair(const Graph& g, const SynthSpec& spec);

/// Erdos-Renyi graph with labels drawn uniformly from `labels` (or "_" when
/// empty).
Graph random_graph(std::size_t n, double edge_prob, const std::vector<std::string>& labels,
                   std::uint64_t seed, std::string id = {});

/// splitmix64 step, for deriving independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace gedot
