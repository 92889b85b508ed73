#include "core/graph.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace gedot {

Graph::Graph(std::vector<Label> labels, const std::vector<std::pair<NodeIndex, NodeIndex>>& edges,
             std::string id)
    : labels_(std::move(labels)), adjacency_(labels_.size()), id_(std::move(id)) {
  const std::size_t n = labels_.size();
  edges_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const std::string name = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a >= n || b >= n) {
      fail(ErrorKind::Validation,
           "edge " + name + " has an endpoint outside [0," + std::to_string(n) + ")");
    }
    if (a == b) fail(ErrorKind::Validation, "edge " + name + " is a self-loop");
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    fail(ErrorKind::Validation, "edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) +
                                    ") is listed more than once");
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Graph Graph::from_strings(const std::vector<std::string>& labels,
                          const std::vector<std::pair<NodeIndex, NodeIndex>>& edges,
                          std::string id) {
  std::vector<Label> ls;
  ls.reserve(labels.size());
  for (const auto& s : labels) ls.emplace_back(s);
  return Graph(std::move(ls), edges, std::move(id));
}

bool Graph::has_edge(NodeIndex a, NodeIndex b) const {
  if (a >= node_count() || b >= node_count()) return false;
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::size_t Graph::real_node_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](const Label& l) { return !l.is_dummy(); }));
}

GraphPair canonicalize_pair(Graph g1, Graph g2) {
  GraphPair pair;
  if (g1.node_count() > g2.node_count()) {
    pair.g1 = std::move(g2);
    pair.g2 = std::move(g1);
    pair.swapped = true;
  } else {
    pair.g1 = std::move(g1);
    pair.g2 = std::move(g2);
  }
  return pair;
}

Graph pad_with_dummies(const Graph& g, std::size_t target_n) {
  if (target_n < g.node_count()) {
    fail(ErrorKind::InvalidArgument, "cannot pad a " + std::to_string(g.node_count()) +
                                         "-node graph down to " + std::to_string(target_n));
  }
  std::vector<Label> labels = g.labels();
  labels.resize(target_n, Label::dummy());
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
  return Graph(std::move(labels), edges, g.id());
}

Matrix adjacency(const Graph& g) { return adjacency(g, g.node_count()); }

Matrix adjacency(const Graph& g, std::size_t n) {
  if (n < g.node_count()) fail(ErrorKind::InvalidArgument, "adjacency size below node count");
  const auto size = static_cast<Eigen::Index>(n);
  Matrix a = Matrix::Zero(size, size);
  for (const Edge& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = 1.0;
    a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = 1.0;
  }
  return a;
}

Matrix label_mismatch_matrix(const GraphPair& pair) {
  const std::size_t n = pair.g2.node_count();
  if (pair.g1.node_count() > n) {
    fail(ErrorKind::InvalidArgument, "pair is not canonicalized (n1 > n2)");
  }
  const auto size = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Ones(size, size);
  for (std::size_t i = 0; i < pair.g1.node_count(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (labels_match(pair.g1.label(i), pair.g2.label(k))) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = 0.0;
      }
    }
  }
  return m;
}

}  // namespace gedot
