#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gedot {

using Matrix = Eigen::MatrixXd;
using NodeIndex = std::size_t;

/// map[i] is the g2 node matched to g1 node i (an injection).
using NodeMatching = std::vector<NodeIndex>;

/// Categorical node label. The dummy label is reserved for padding nodes and
/// compares unequal to everything, itself included.
class Label {
 public:
  Label() = default;
  explicit Label(std::string value) : value_(std::move(value)) {}

  static Label dummy() {
    Label l;
    l.dummy_ = true;
    return l;
  }

  bool is_dummy() const noexcept { return dummy_; }
  const std::string& value() const noexcept { return value_; }

  // Identity comparison (used for containers and graph equality).
  bool operator==(const Label&) const = default;

 private:
  std::string value_;
  bool dummy_ = false;
};

/// True when two nodes carrying these labels need no relabeling.
inline bool labels_match(const Label& a, const Label& b) {
  return !a.is_dummy() && !b.is_dummy() && a.value() == b.value();
}

/// Label given to every node of an unlabeled graph.
inline constexpr const char* kUnlabeled = "_";

struct Edge {
  NodeIndex u = 0;
  NodeIndex v = 0;  // u < v after normalization

  auto operator<=>(const Edge&) const = default;
};

/// Node-labeled undirected simple graph. Immutable after construction; edges
/// are stored normalized (u < v) and sorted.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws Validation on self-loops, duplicate edges or
  /// out-of-range endpoints.
  Graph(std::vector<Label> labels, const std::vector<std::pair<NodeIndex, NodeIndex>>& edges,
        std::string id = {});

  static Graph from_strings(const std::vector<std::string>& labels,
                            const std::vector<std::pair<NodeIndex, NodeIndex>>& edges,
                            std::string id = {});

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Label& label(NodeIndex i) const { return labels_.at(i); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<NodeIndex>& neighbors(NodeIndex i) const { return adjacency_.at(i); }
  std::size_t degree(NodeIndex i) const { return adjacency_.at(i).size(); }
  bool has_edge(NodeIndex a, NodeIndex b) const;
  const std::string& id() const noexcept { return id_; }

  /// Number of nodes that are not padding.
  std::size_t real_node_count() const;

  bool operator==(const Graph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  std::vector<Label> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeIndex>> adjacency_;  // sorted neighbor lists
  std::string id_;
};

/// Ordered pair with g1.node_count() <= g2.node_count().
struct GraphPair {
  Graph g1;
  Graph g2;
  bool swapped = false;
  std::optional<long long> ground_truth_ged;
  std::vector<NodeMatching> ground_truth_matchings;
};

GraphPair canonicalize_pair(Graph g1, Graph g2);

/// Appends (target_n - n) isolated dummy nodes.
Graph pad_with_dummies(const Graph& g, std::size_t target_n);

/// n x n 0/1 symmetric matrix.
Matrix adjacency(const Graph& g);

/// Adjacency of g zero-padded to n x n.
Matrix adjacency(const Graph& g, std::size_t n);

/// n2 x n2 matrix (g1 padded): 0 iff the two labels match, dummy rows all 1.
Matrix label_mismatch_matrix(const GraphPair& pair);

}  // namespace gedot
