#include "core/edit_path.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "core/error.hpp"

namespace gedot {

EditOperation EditOperation::relabel(NodeIndex node, std::string label) {
  EditOperation op;
  op.kind = EditKind::RelabelNode;
  op.node = node;
  op.label = std::move(label);
  return op;
}

EditOperation EditOperation::insert_node(std::string label) {
  EditOperation op;
  op.kind = EditKind::InsertNode;
  op.label = std::move(label);
  return op;
}

EditOperation EditOperation::delete_node(NodeIndex node) {
  EditOperation op;
  op.kind = EditKind::DeleteNode;
  op.node = node;
  return op;
}

EditOperation EditOperation::delete_edge(NodeIndex a, NodeIndex b) {
  EditOperation op;
  op.kind = EditKind::DeleteEdge;
  op.u = std::min(a, b);
  op.v = std::max(a, b);
  return op;
}

EditOperation EditOperation::insert_edge(NodeIndex a, NodeIndex b) {
  EditOperation op;
  op.kind = EditKind::InsertEdge;
  op.u = std::min(a, b);
  op.v = std::max(a, b);
  return op;
}

std::string to_string(EditKind kind) {
  switch (kind) {
    case EditKind::RelabelNode: return "relabel";
    case EditKind::InsertNode: return "insert_node";
    case EditKind::DeleteNode: return "delete_node";
    case EditKind::DeleteEdge: return "delete_edge";
    case EditKind::InsertEdge: return "insert_edge";
  }
  return "unknown";
}

void check_matching(const GraphPair& pair, const NodeMatching& m) {
  const std::size_t n1 = pair.g1.node_count();
  const std::size_t n2 = pair.g2.node_count();
  if (m.size() != n1) {
    fail(ErrorKind::InvalidArgument, "matching has " + std::to_string(m.size()) +
                                         " entries, expected " + std::to_string(n1));
  }
  std::vector<char> seen(n2, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    if (m[i] >= n2) {
      fail(ErrorKind::InvalidArgument, "matching sends node " + std::to_string(i) +
                                           " outside [0," + std::to_string(n2) + ")");
    }
    if (seen[m[i]]) {
      fail(ErrorKind::InvalidArgument,
           "matching is not injective at target " + std::to_string(m[i]));
    }
    seen[m[i]] = 1;
  }
}

namespace {

constexpr NodeIndex kUnmatched = static_cast<NodeIndex>(-1);

// For every g2 node: its g1 preimage, or n1 + t for the t-th unmatched node.
std::vector<NodeIndex> preimages(const GraphPair& pair, const NodeMatching& m) {
  const std::size_t n1 = pair.g1.node_count();
  std::vector<NodeIndex> inv(pair.g2.node_count(), kUnmatched);
  for (std::size_t i = 0; i < n1; ++i) inv[m[i]] = i;
  NodeIndex next = n1;
  for (auto& x : inv) {
    if (x == kUnmatched) x = next++;
  }
  return inv;
}

}  // namespace

EditPath ep_gen(const GraphPair& pair, const NodeMatching& m) {
  check_matching(pair, m);
  const Graph& g1 = pair.g1;
  const Graph& g2 = pair.g2;
  const std::size_t n1 = g1.node_count();
  EditPath path;

  for (std::size_t i = 0; i < n1; ++i) {
    if (!labels_match(g1.label(i), g2.label(m[i]))) {
      path.ops.push_back(EditOperation::relabel(i, g2.label(m[i]).value()));
    }
  }
  const std::vector<NodeIndex> inv = preimages(pair, m);
  for (std::size_t k = 0; k < g2.node_count(); ++k) {
    if (inv[k] >= n1) path.ops.push_back(EditOperation::insert_node(g2.label(k).value()));
  }
  for (const Edge& e : g1.edges()) {
    if (!g2.has_edge(m[e.u], m[e.v])) path.ops.push_back(EditOperation::delete_edge(e.u, e.v));
  }
  std::vector<EditOperation> inserts;
  for (const Edge& e : g2.edges()) {
    const NodeIndex a = inv[e.u];
    const NodeIndex b = inv[e.v];
    if (a >= n1 || b >= n1 || !g1.has_edge(a, b)) inserts.push_back(EditOperation::insert_edge(a, b));
  }
  std::sort(inserts.begin(), inserts.end(), [](const EditOperation& x, const EditOperation& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  path.ops.insert(path.ops.end(), inserts.begin(), inserts.end());
  return path;
}

std::size_t ep_gen_length(const GraphPair& pair, const NodeMatching& m) {
  check_matching(pair, m);
  const Graph& g1 = pair.g1;
  const Graph& g2 = pair.g2;
  const std::size_t n1 = g1.node_count();
  std::size_t count = g2.node_count() - n1;
  for (std::size_t i = 0; i < n1; ++i) {
    if (!labels_match(g1.label(i), g2.label(m[i]))) ++count;
  }
  std::size_t preserved = 0;
  for (const Edge& e : g1.edges()) {
    if (g2.has_edge(m[e.u], m[e.v])) ++preserved;
  }
  // Every g1 edge not preserved is deleted, every g2 edge without preimage inserted.
  return count + (g1.edge_count() - preserved) + (g2.edge_count() - preserved);
}

long long ged_lower_bound(const GraphPair& pair) {
  std::map<std::string, long long> c1, c2;
  long long n1 = 0, n2 = 0;
  for (const Label& l : pair.g1.labels()) {
    if (!l.is_dummy()) {
      ++c1[l.value()];
      ++n1;
    }
  }
  for (const Label& l : pair.g2.labels()) {
    if (!l.is_dummy()) {
      ++c2[l.value()];
      ++n2;
    }
  }
  long long common = 0;
  for (const auto& [label, count] : c1) {
    const auto it = c2.find(label);
    if (it != c2.end()) common += std::min(count, it->second);
  }
  const auto m1 = static_cast<long long>(pair.g1.edge_count());
  const auto m2 = static_cast<long long>(pair.g2.edge_count());
  return std::max(n1, n2) - common + (m1 > m2 ? m1 - m2 : m2 - m1);
}

namespace {

// Mutable replay state.
struct WorkGraph {
  std::vector<std::string> labels;
  std::vector<std::vector<char>> adj;

  explicit WorkGraph(const Graph& g) {
    const std::size_t n = g.node_count();
    labels.reserve(n);
    for (const Label& l : g.labels()) labels.push_back(l.is_dummy() ? std::string() : l.value());
    adj.assign(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  }

  std::size_t size() const { return labels.size(); }
};

[[noreturn]] void bad_step(std::size_t step, const std::string& why) {
  fail(ErrorKind::Validation, "step " + std::to_string(step) + ": " + why);
}

WorkGraph replay(const Graph& g, const EditPath& path) {
  WorkGraph w(g);
  for (std::size_t s = 0; s < path.ops.size(); ++s) {
    const EditOperation& op = path.ops[s];
    const std::size_t n = w.size();
    switch (op.kind) {
      case EditKind::RelabelNode:
        if (op.node >= n) bad_step(s, "relabel of a missing node");
        if (w.labels[op.node] == op.label) bad_step(s, "relabel keeps the same label");
        w.labels[op.node] = op.label;
        break;
      case EditKind::InsertNode:
        w.labels.push_back(op.label);
        for (auto& row : w.adj) row.push_back(0);
        w.adj.emplace_back(n + 1, 0);
        break;
      case EditKind::DeleteNode: {
        if (op.node >= n) bad_step(s, "deletion of a missing node");
        for (std::size_t j = 0; j < n; ++j) {
          if (w.adj[op.node][j]) bad_step(s, "deletion of a node that still has edges");
        }
        const auto idx = static_cast<std::ptrdiff_t>(op.node);
        w.labels.erase(w.labels.begin() + idx);
        w.adj.erase(w.adj.begin() + idx);
        for (auto& row : w.adj) row.erase(row.begin() + idx);
        break;
      }
      case EditKind::DeleteEdge:
        if (op.u >= n || op.v >= n || op.u == op.v || !w.adj[op.u][op.v]) {
          bad_step(s, "deletion of a missing edge");
        }
        w.adj[op.u][op.v] = w.adj[op.v][op.u] = 0;
        break;
      case EditKind::InsertEdge:
        if (op.u >= n || op.v >= n || op.u == op.v || w.adj[op.u][op.v]) {
          bad_step(s, "insertion of an existing or invalid edge");
        }
        w.adj[op.u][op.v] = w.adj[op.v][op.u] = 1;
        break;
    }
  }
  return w;
}

// Checks replayed graph against target given final-node -> target-node map.
VerifyResult compare(const WorkGraph& w, const Graph& target,
                     const std::vector<NodeIndex>& to_target) {
  VerifyResult r;
  const std::size_t n = w.size();
  if (n != target.node_count() || to_target.size() != n) {
    r.reason = "node count differs after replay";
    return r;
  }
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (to_target[i] >= n || seen[to_target[i]]) {
      r.reason = "node correspondence is not a bijection";
      return r;
    }
    seen[to_target[i]] = 1;
    const Label& want = target.label(to_target[i]);
    if (want.is_dummy() || w.labels[i] != want.value()) {
      r.reason = "label of node " + std::to_string(i) + " differs after replay";
      return r;
    }
  }
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!w.adj[i][j]) continue;
      ++edges;
      if (!target.has_edge(to_target[i], to_target[j])) {
        r.reason = "edge (" + std::to_string(i) + "," + std::to_string(j) + ") has no image";
        return r;
      }
    }
  }
  if (edges != target.edge_count()) {
    r.reason = "edge count differs after replay";
    return r;
  }
  r.ok = true;
  return r;
}

template <typename Fn>
VerifyResult guarded_replay(const Graph& from, const EditPath& path, Fn&& finish) {
  try {
    return finish(replay(from, path));
  } catch (const Error& e) {
    VerifyResult r;
    r.reason = e.what();
    const std::string msg = e.what();
    if (msg.rfind("step ", 0) == 0) r.failed_step = std::stoul(msg.substr(5));
    return r;
  }
}

}  // namespace

Graph apply_path(const Graph& g, const EditPath& path) {
  const WorkGraph w = replay(g, path);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w.adj[i][j]) edges.emplace_back(i, j);
    }
  }
  return Graph::from_strings(w.labels, edges, g.id());
}

VerifyResult verify_path(const GraphPair& pair, const EditPath& path, const NodeMatching& m) {
  check_matching(pair, m);
  return guarded_replay(pair.g1, path, [&](const WorkGraph& w) {
    const std::size_t n1 = pair.g1.node_count();
    std::vector<NodeIndex> to_target(m.begin(), m.end());
    const std::vector<NodeIndex> inv = preimages(pair, m);
    std::vector<NodeIndex> unmatched;
    for (std::size_t k = 0; k < inv.size(); ++k) {
      if (inv[k] >= n1) unmatched.push_back(k);
    }
    to_target.insert(to_target.end(), unmatched.begin(), unmatched.end());
    to_target.resize(w.size(), static_cast<NodeIndex>(-1));
    return compare(w, pair.g2, to_target);
  });
}

EditPath reported_path(const GraphPair& pair, const NodeMatching& m) {
  if (!pair.swapped) return ep_gen(pair, m);
  check_matching(pair, m);
  const Graph& small = pair.g1;
  const Graph& big = pair.g2;
  const std::size_t n1 = small.node_count();
  std::vector<NodeIndex> inv(big.node_count(), kUnmatched);
  for (std::size_t i = 0; i < n1; ++i) inv[m[i]] = i;

  EditPath path;
  for (std::size_t k = 0; k < big.node_count(); ++k) {
    if (inv[k] != kUnmatched && !labels_match(big.label(k), small.label(inv[k]))) {
      path.ops.push_back(EditOperation::relabel(k, small.label(inv[k]).value()));
    }
  }
  for (const Edge& e : big.edges()) {
    const NodeIndex a = inv[e.u];
    const NodeIndex b = inv[e.v];
    if (a == kUnmatched || b == kUnmatched || !small.has_edge(a, b)) {
      path.ops.push_back(EditOperation::delete_edge(e.u, e.v));
    }
  }
  std::vector<EditOperation> inserts;
  for (const Edge& e : small.edges()) {
    if (!big.has_edge(m[e.u], m[e.v])) inserts.push_back(EditOperation::insert_edge(m[e.u], m[e.v]));
  }
  std::sort(inserts.begin(), inserts.end(), [](const EditOperation& x, const EditOperation& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  path.ops.insert(path.ops.end(), inserts.begin(), inserts.end());
  // Descending so earlier deletions do not shift later indices.
  for (std::size_t k = big.node_count(); k-- > 0;) {
    if (inv[k] == kUnmatched) path.ops.push_back(EditOperation::delete_node(k));
  }
  return path;
}

VerifyResult verify_reported_path(const GraphPair& pair, const EditPath& path,
                                  const NodeMatching& m) {
  if (!pair.swapped) return verify_path(pair, path, m);
  check_matching(pair, m);
  return guarded_replay(pair.g2, path, [&](const WorkGraph& w) {
    std::vector<NodeIndex> inv(pair.g2.node_count(), kUnmatched);
    for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = i;
    std::vector<NodeIndex> to_target;
    for (NodeIndex x : inv) {
      if (x != kUnmatched) to_target.push_back(x);
    }
    to_target.resize(w.size(), static_cast<NodeIndex>(-1));
    return compare(w, pair.g1, to_target);
  });
}

}  // namespace gedot
