#include "core/synth.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <set>

#include "core/error.hpp"

namespace gedot {
namespace {

using Rng = std::mt19937_64;
using NodePair = std::pair<std::size_t, std::size_t>;  // stable ids, first < second

NodePair ordered(std::size_t a, std::size_t b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

// Nodes carry stable ids: base nodes keep their index, inserted nodes get
// n, n+1, ... The recorded path uses positions in the current node order.
class Editor {
 public:
  Editor(const Graph& g, std::vector<std::string> pool) : base_n_(g.node_count()), pool_(std::move(pool)) {
    for (std::size_t i = 0; i < base_n_; ++i) {
      alive_.push_back(i);
      labels_.push_back(g.label(i).value());
    }
    for (const Edge& e : g.edges()) edges_.insert({e.u, e.v});
    touched_.assign(base_n_, false);
  }

  std::vector<std::size_t> relabel_candidates() const {
    std::vector<std::size_t> out;
    for (std::size_t s : alive_) {
      if (s < base_n_ && !touched_[s] && has_other_label(labels_[s])) out.push_back(s);
    }
    return out;
  }

  std::vector<std::size_t> deletable_nodes() const {
    std::vector<std::size_t> out;
    if (inserted_ > 0 || alive_.size() <= 1) return out;
    for (std::size_t s : alive_) {
      if (!touched_[s] && degree(s) == 0) out.push_back(s);
    }
    return out;
  }

  bool can_insert_node() const { return !deleted_nodes_; }

  std::vector<NodePair> insertable_edges() const {
    std::vector<NodePair> out;
    for (std::size_t a = 0; a < alive_.size(); ++a) {
      for (std::size_t b = a + 1; b < alive_.size(); ++b) {
        const NodePair p = ordered(alive_[a], alive_[b]);
        if (!edges_.count(p) && !deleted_edges_.count(p)) out.push_back(p);
      }
    }
    return out;
  }

  std::vector<NodePair> deletable_edges() const {
    std::vector<NodePair> out;
    for (const NodePair& p : edges_) {
      if (!inserted_edges_.count(p)) out.push_back(p);
    }
    return out;
  }

  void relabel(std::size_t s, Rng& rng) {
    std::vector<std::string> choices;
    for (const std::string& l : pool_) {
      if (l != labels_[s]) choices.push_back(l);
    }
    labels_[s] = pick(choices, rng);
    touched_[s] = true;
    path_.ops.push_back(EditOperation::relabel(position(s), labels_[s]));
  }

  void insert_node(Rng& rng) {
    const std::string label = pool_.empty() ? std::string(kUnlabeled) : pick(pool_, rng);
    alive_.push_back(labels_.size());
    labels_.push_back(label);
    touched_.push_back(true);
    ++inserted_;
    path_.ops.push_back(EditOperation::insert_node(label));
  }

  void delete_node(std::size_t s) {
    const std::size_t pos = position(s);
    path_.ops.push_back(EditOperation::delete_node(pos));
    alive_.erase(alive_.begin() + static_cast<std::ptrdiff_t>(pos));
    deleted_nodes_ = true;
  }

  void insert_edge(const NodePair& p) {
    edges_.insert(p);
    inserted_edges_.insert(p);
    path_.ops.push_back(EditOperation::insert_edge(position(p.first), position(p.second)));
  }

  void delete_edge(const NodePair& p) {
    edges_.erase(p);
    deleted_edges_.insert(p);
    path_.ops.push_back(EditOperation::delete_edge(position(p.first), position(p.second)));
  }

  Graph result() const {
    std::vector<std::string> labels;
    for (std::size_t s : alive_) labels.push_back(labels_[s]);
    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    for (const NodePair& p : edges_) edges.emplace_back(position(p.first), position(p.second));
    return Graph::from_strings(labels, edges);
  }

  /// Mapping of the smaller graph into the larger one.
  NodeMatching mapping() const {
    NodeMatching m;
    if (deleted_nodes_) {
      m.assign(alive_.begin(), alive_.end());  // edited graph -> base
    } else {
      for (std::size_t i = 0; i < base_n_; ++i) m.push_back(position(i));
    }
    return m;
  }

  const EditPath& path() const { return path_; }

 private:
  bool has_other_label(const std::string& l) const {
    return std::any_of(pool_.begin(), pool_.end(), [&](const std::string& p) { return p != l; });
  }

  std::size_t degree(std::size_t s) const {
    std::size_t d = 0;
    for (const NodePair& p : edges_) d += (p.first == s || p.second == s);
    return d;
  }

  std::size_t position(std::size_t s) const {
    return static_cast<std::size_t>(std::find(alive_.begin(), alive_.end(), s) - alive_.begin());
  }

  std::size_t base_n_;
  std::vector<std::string> pool_;
  std::vector<std::size_t> alive_;
  std::vector<std::string> labels_;
  std::vector<bool> touched_;  // relabeled or inserted
  std::set<NodePair> edges_, inserted_edges_, deleted_edges_;
  std::size_t inserted_ = 0;
  bool deleted_nodes_ = false;
  EditPath path_;
};

// One attempt at drawing delta edits. Returns false when the sequence gets
// stuck with no admissible edit left.
bool draw_edits(Editor& ed, const SynthSpec& spec, Rng& rng, int& stuck_at) {
  for (int step = 0; step < spec.delta; ++step) {
    const auto relabels = ed.relabel_candidates();
    const auto deletable = ed.deletable_nodes();
    const auto new_edges = ed.insertable_edges();
    const auto old_edges = ed.deletable_edges();
    const std::array<bool, 5> feasible{!relabels.empty(), ed.can_insert_node(), !deletable.empty(),
                                       !new_edges.empty(), !old_edges.empty()};
    double total = 0.0;
    for (std::size_t k = 0; k < 5; ++k) total += feasible[k] ? spec.weights[k] : 0.0;
    if (total <= 0.0) {
      stuck_at = step + 1;
      return false;
    }
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    std::size_t kind = 0;
    for (; kind < 5; ++kind) {
      const double w = feasible[kind] ? spec.weights[kind] : 0.0;
      if (w > 0.0 && r < w) break;
      r -= w;
    }
    if (kind == 5) {  // rounding at the top end
      kind = 4;
      while (!(feasible[kind] && spec.weights[kind] > 0.0)) --kind;
    }
    switch (static_cast<SynthOp>(kind)) {
      case SynthOp::Relabel: ed.relabel(pick(relabels, rng), rng); break;
      case SynthOp::InsertNode: ed.insert_node(rng); break;
      case SynthOp::DeleteNode: ed.delete_node(pick(deletable, rng)); break;
      case SynthOp::InsertEdge: ed.insert_edge(pick(new_edges, rng)); break;
      case SynthOp::DeleteEdge: ed.delete_edge(pick(old_edges, rng)); break;
    }
  }
  return true;
}

constexpr int kSynthAttempts = 64;

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DatasetEntry synth_pair(const Graph& g, const SynthSpec& spec) {
  if (spec.delta < 1) fail(ErrorKind::InvalidArgument, "delta must be at least 1");
  for (double w : spec.weights) {
    if (!(w >= 0.0)) fail(ErrorKind::InvalidArgument, "op weights must be non-negative");
  }
  std::vector<std::string> pool = spec.label_pool;
  if (pool.empty()) {
    for (const Label& l : g.labels()) pool.push_back(l.value());
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  Rng rng(spec.seed);
  std::optional<Editor> ed;
  int stuck_at = 0;
  for (int attempt = 0; attempt < kSynthAttempts; ++attempt) {
    ed.emplace(g, pool);
    if (draw_edits(*ed, spec, rng, stuck_at)) break;
    ed.reset();
  }
  if (!ed) {
    fail(ErrorKind::Infeasible, "no admissible edit at step " + std::to_string(stuck_at) + " of " +
                                    std::to_string(spec.delta) + " after " +
                                    std::to_string(kSynthAttempts) + " attempts");
  }

  DatasetEntry e;
  e.g1 = g;
  e.g2 = ed->result();
  e.ged = spec.delta;
  e.approximate = true;
  e.mappings.push_back(ed->mapping());
  e.generation_path = ed->path();
  return e;
}

Graph random_graph(std::size_t n, double edge_prob, const std::vector<std::string>& labels,
                   std::uint64_t seed, std::string id) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::string> node_labels;
  for (std::size_t i = 0; i < n; ++i) {
    node_labels.push_back(labels.empty() ? std::string(kUnlabeled) : pick(labels, rng));
  }
  std::bernoulli_distribution coin(edge_prob);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_strings(node_labels, edges, std::move(id));
}

}  // namespace gedot
