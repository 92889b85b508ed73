#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace gedot {

enum class EditKind { RelabelNode, InsertNode, DeleteNode, DeleteEdge, InsertEdge };

/// One unit-cost edit. Node indices live in the frame of the graph being
/// edited: inserted nodes are appended, deleted nodes shift later indices down.
struct EditOperation {
  EditKind kind = EditKind::RelabelNode;
  NodeIndex node = 0;  // RelabelNode, DeleteNode
  std::string label;   // RelabelNode, InsertNode
  NodeIndex u = 0;     // edge ops, u < v
  NodeIndex v = 0;

  static EditOperation relabel(NodeIndex node, std::string label);
  static EditOperation insert_node(std::string label);
  static EditOperation delete_node(NodeIndex node);
  static EditOperation delete_edge(NodeIndex a, NodeIndex b);
  static EditOperation insert_edge(NodeIndex a, NodeIndex b);

  bool operator==(const EditOperation&) const = default;
};

struct EditPath {
  std::vector<EditOperation> ops;
  std::size_t length() const noexcept { return ops.size(); }
  bool operator==(const EditPath&) const = default;
};

/// Throws InvalidArgument unless m is an injection of g1's nodes into g2's.
void check_matching(const GraphPair& pair, const NodeMatching& m);

/// Edit path induced by a node matching of a canonical pair. Order: relabels,
/// node insertions, edge deletions, edge insertions, each ascending.
EditPath ep_gen(const GraphPair& pair, const NodeMatching& m);

/// Number of edits ep_gen would emit, without materializing them.
std::size_t ep_gen_length(const GraphPair& pair, const NodeMatching& m);

/// Label-set bound: max(n1, n2) - |L1 ∩ L2| + ||E1| - |E2||, multiset
/// intersection, dummies ignored.
long long ged_lower_bound(const GraphPair& pair);

/// Replays the path. Throws Validation naming the first ill-formed step.
Graph apply_path(const Graph& g, const EditPath& path);

struct VerifyResult {
  bool ok = false;
  std::optional<std::size_t> failed_step;  // set when a step could not be replayed
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Replays a canonical-direction path on g1 and checks the result equals g2
/// under the correspondence induced by m (inserted nodes map to unmatched g2
/// nodes in ascending order).
VerifyResult verify_path(const GraphPair& pair, const EditPath& path, const NodeMatching& m);

/// Path in the caller's original orientation: ep_gen when the pair was not
/// swapped, otherwise the inverse edit path transforming the larger graph
/// (the caller's first) into the smaller one.
EditPath reported_path(const GraphPair& pair, const NodeMatching& m);

/// verify_path counterpart for reported_path.
VerifyResult verify_reported_path(const GraphPair& pair, const EditPath& path,
                                  const NodeMatching& m);

std::string to_string(EditKind kind);

}  // namespace gedot
