// Brute-force reference implementations and random instance generators shared
// by the test suites. Nothing here calls into the solver code it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/graph.hpp"

namespace oracle {

using gedot::Graph;
using gedot::GraphPair;
using gedot::NodeIndex;
using gedot::NodeMatching;

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p,
                          const std::vector<std::string>& alphabet) {
  std::vector<std::string> labels(n);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (auto& l : labels) l = alphabet[pick(rng)];
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_strings(labels, edges);
}

/// Canonical pair with sizes drawn from [lo, hi].
inline GraphPair random_pair(std::mt19937_64& rng, std::size_t lo, std::size_t hi,
                             const std::vector<std::string>& alphabet = {"A", "B", "C"}) {
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  std::uniform_real_distribution<double> density(0.2, 0.7);
  Graph a = random_graph(rng, size(rng), density(rng), alphabet);
  Graph b = random_graph(rng, size(rng), density(rng), alphabet);
  return gedot::canonicalize_pair(std::move(a), std::move(b));
}

/// Edit cost of the matching counted straight from the definition: label
/// substitutions, inserted nodes, and edges present on exactly one side.
inline long long matching_cost(const GraphPair& pair, const NodeMatching& m) {
  const Graph& g1 = pair.g1;
  const Graph& g2 = pair.g2;
  long long cost = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (g1.label(i).value() != g2.label(m[i]).value()) ++cost;
  }
  cost += static_cast<long long>(g2.node_count() - g1.node_count());
  std::set<std::pair<NodeIndex, NodeIndex>> mapped;
  for (const auto& e : g1.edges()) {
    mapped.insert(std::minmax(m[e.u], m[e.v]));
  }
  std::set<std::pair<NodeIndex, NodeIndex>> target;
  for (const auto& e : g2.edges()) target.insert({e.u, e.v});
  for (const auto& e : mapped) cost += target.count(e) ? 0 : 1;
  for (const auto& e : target) cost += mapped.count(e) ? 0 : 1;
  return cost;
}

/// Calls f on every injection of [0, n1) into [0, n2).
template <typename F>
void for_each_injection(std::size_t n1, std::size_t n2, F&& f) {
  NodeMatching m(n1);
  std::vector<char> used(n2, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n1) {
      f(static_cast<const NodeMatching&>(m));
      return;
    }
    for (std::size_t k = 0; k < n2; ++k) {
      if (used[k]) continue;
      used[k] = 1;
      m[i] = k;
      self(self, i + 1);
      used[k] = 0;
    }
  };
  rec(rec, 0);
}

inline long long brute_ged(const GraphPair& pair) {
  long long best = std::numeric_limits<long long>::max();
  for_each_injection(pair.g1.node_count(), pair.g2.node_count(),
                     [&](const NodeMatching& m) { best = std::min(best, matching_cost(pair, m)); });
  return best;
}

/// Minimum-cost row-to-column injection by enumeration.
inline double brute_lsap(const gedot::Matrix& c) {
  double best = std::numeric_limits<double>::infinity();
  for_each_injection(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()),
                     [&](const NodeMatching& m) {
                       double s = 0.0;
                       for (std::size_t i = 0; i < m.size(); ++i) {
                         s += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m[i]));
                       }
                       best = std::min(best, s);
                     });
  return best;
}

/// Kendall tau-b by counting all pairs.
inline double tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  long long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++tie_x;
      } else if (dy == 0) {
        ++tie_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double denom = std::sqrt(static_cast<double>(concordant + discordant + tie_x) *
                                 static_cast<double>(concordant + discordant + tie_y));
  return static_cast<double>(concordant - discordant) / denom;
}

/// Pearson correlation of average ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, equal = 0;
      for (double w : v) {
        less += w < v[i];
        equal += w == v[i];
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

/// n2 x n2 permutation matrix of m, with dummy rows sent to the unmatched
/// columns in ascending order.
inline gedot::Matrix permutation_matrix(std::size_t n2, const NodeMatching& m) {
  gedot::Matrix p = gedot::Matrix::Zero(static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(n2));
  std::vector<char> used(n2, 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m[i])) = 1.0;
    used[m[i]] = 1;
  }
  std::size_t row = m.size();
  for (std::size_t k = 0; k < n2; ++k) {
    if (!used[k]) p(static_cast<Eigen::Index>(row++), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

/// sum_{j,l} (a1[i,j] - a2[k,l])^2 b[j,l], straight from the definition.
inline gedot::Matrix naive_tensor(const gedot::Matrix& a1, const gedot::Matrix& a2, const gedot::Matrix& b) {
  const Eigen::Index n = a1.rows();
  gedot::Matrix out = gedot::Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < n; ++l) {
          const double d = a1(i, j) - a2(k, l);
          s += d * d * b(j, l);
        }
      }
      out(i, k) = s;
    }
  }
  return out;
}

/// Largest deviation of a coupling's row or column sums from the target.
inline double max_row_error(const gedot::Matrix& p, const Eigen::VectorXd& target) {
  return (p.rowwise().sum() - target).cwiseAbs().maxCoeff();
}
inline double max_col_error(const gedot::Matrix& p, const Eigen::VectorXd& target) {
  return (p.colwise().sum().transpose() - target).cwiseAbs().maxCoeff();
}

}  // namespace oracle
