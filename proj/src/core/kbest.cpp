#include "core/kbest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "core/error.hpp"

namespace gedot {

double matching_weight(const Matrix& pi, const NodeMatching& m) {
  if (static_cast<Eigen::Index>(m.size()) != pi.rows()) {
    fail(ErrorKind::InvalidArgument, "matching length differs from coupling rows");
  }
  double w = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (static_cast<Eigen::Index>(m[i]) >= pi.cols()) {
      fail(ErrorKind::InvalidArgument, "matching target outside the coupling");
    }
    w += pi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m[i]));
  }
  return w;
}

namespace {

bool heavier(double wa, const NodeMatching& a, double wb, const NodeMatching& b) {
  const double tol = 1e-12 * std::max(1.0, std::max(std::abs(wa), std::abs(wb)));
  if (wa > wb + tol) return true;
  if (wb > wa + tol) return false;
  return a < b;
}

std::optional<NodeMatching> second_best(const Matrix& pi, const PairSet& included,
                                        const PairSet& excluded, const NodeMatching& best) {
  const Matrix cost = -pi;
  std::optional<NodeMatching> out;
  double out_w = 0.0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    const std::pair<NodeIndex, NodeIndex> e{i, best[i]};
    if (included.count(e)) continue;
    PairSet ex = excluded;
    ex.insert(e);
    try {
      Assignment a = lsap_min(cost, included, ex);
      const double w = matching_weight(pi, a.matching);
      if (!out || heavier(w, a.matching, out_w, *out)) {
        out = std::move(a.matching);
        out_w = w;
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Infeasible) throw;
    }
  }
  return out;
}

struct Subspace {
  PairSet included;
  PairSet excluded;
  NodeMatching best;
  std::optional<NodeMatching> second;
  double second_weight = -std::numeric_limits<double>::infinity();
  long long lower_bound = 0;
  bool dominated = false;  // every matching inside is at least the best length
};

// Runs the splitting loop. `discover` sees every new best/second-best matching
// of a subspace that is not dominated; `prunable` is asked once a subspace is
// picked for splitting; `chosen` sees the second best of that subspace.
//
// A dominated subspace is still split so that the selection order, and with it
// the set of subspaces reached within k, does not depend on pruning. Its
// descendants skip the bound and the path generation, since nothing inside can
// beat the current best.
void split_loop(const Matrix& pi, int k, const std::function<long long(const PairSet&)>& bound,
                const std::function<void(const NodeMatching&)>& discover,
                const std::function<bool(const Subspace&)>& prunable,
                const std::function<void(const NodeMatching&)>& chosen) {
  auto fill_second = [&](Subspace& s) {
    s.second = second_best(pi, s.included, s.excluded, s.best);
    s.second_weight = s.second ? matching_weight(pi, *s.second)
                               : -std::numeric_limits<double>::infinity();
  };
  std::vector<Subspace> spaces(1);
  {
    Subspace& s1 = spaces.front();
    BestPair bp = best_and_second(pi);
    s1.best = std::move(bp.best);
    s1.second = std::move(bp.second);
    s1.second_weight = s1.second ? matching_weight(pi, *s1.second)
                                 : -std::numeric_limits<double>::infinity();
    s1.lower_bound = bound(s1.included);
    discover(s1.best);
    if (s1.second) discover(*s1.second);
  }
  for (int t = 2; t <= k; ++t) {
    std::optional<std::size_t> id;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const Subspace& s = spaces[i];
      if (!s.second) continue;
      if (!id || s.second_weight > spaces[*id].second_weight) id = i;
    }
    if (!id) break;
    Subspace parent = spaces[*id];
    if (!parent.dominated && prunable(parent)) parent.dominated = true;
    chosen(*parent.second);

    std::size_t row = 0;
    while (parent.best[row] == (*parent.second)[row]) ++row;
    const std::pair<NodeIndex, NodeIndex> e{row, parent.best[row]};

    Subspace with;
    with.included = parent.included;
    with.included.insert(e);
    with.excluded = parent.excluded;
    with.best = parent.best;
    fill_second(with);
    with.dominated = parent.dominated;
    if (!with.dominated) with.lower_bound = bound(with.included);

    Subspace without;
    without.included = parent.included;
    without.excluded = parent.excluded;
    without.excluded.insert(e);
    without.best = *parent.second;
    fill_second(without);
    without.lower_bound = parent.lower_bound;
    without.dominated = parent.dominated;

    if (!parent.dominated) {
      if (with.second) discover(*with.second);
      if (without.second) discover(*without.second);
    }
    spaces[*id] = std::move(with);
    spaces.push_back(std::move(without));
  }
}

}  // namespace

BestPair best_and_second(const Matrix& pi, const PairSet& included, const PairSet& excluded) {
  if (pi.rows() > pi.cols()) fail(ErrorKind::InvalidArgument, "coupling needs rows <= columns");
  BestPair out;
  out.best = lsap_min(-pi, included, excluded).matching;
  out.second = second_best(pi, included, excluded, out.best);
  return out;
}

long long subspace_lower_bound(const GraphPair& pair, const PairSet& included) {
  const Graph& g1 = pair.g1;
  const Graph& g2 = pair.g2;
  constexpr NodeIndex kFree = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> image(g1.node_count(), kFree);
  std::vector<NodeIndex> pre(g2.node_count(), kFree);
  for (const auto& [i, k] : included) {
    image.at(i) = k;
    pre.at(k) = i;
  }

  long long cost = 0;
  std::map<std::string, long long> free1, free2;
  long long n1f = 0, n2f = 0;
  for (std::size_t i = 0; i < g1.node_count(); ++i) {
    if (image[i] != kFree) {
      if (!labels_match(g1.label(i), g2.label(image[i]))) ++cost;
    } else if (!g1.label(i).is_dummy()) {
      ++free1[g1.label(i).value()];
      ++n1f;
    }
  }
  for (std::size_t k = 0; k < g2.node_count(); ++k) {
    if (pre[k] == kFree && !g2.label(k).is_dummy()) {
      ++free2[g2.label(k).value()];
      ++n2f;
    }
  }
  long long common = 0;
  for (const auto& [label, count] : free1) {
    const auto it = free2.find(label);
    if (it != free2.end()) common += std::min(count, it->second);
  }
  cost += std::max(n1f, n2f) - common;

  long long rest1 = 0, rest2 = 0;
  for (const Edge& e : g1.edges()) {
    if (image[e.u] != kFree && image[e.v] != kFree) {
      if (!g2.has_edge(image[e.u], image[e.v])) ++cost;
    } else {
      ++rest1;
    }
  }
  for (const Edge& e : g2.edges()) {
    if (pre[e.u] != kFree && pre[e.v] != kFree) {
      if (!g1.has_edge(pre[e.u], pre[e.v])) ++cost;
    } else {
      ++rest2;
    }
  }
  return cost + (rest1 > rest2 ? rest1 - rest2 : rest2 - rest1);
}

KBestResult kbest_gep(const GraphPair& pair, const Matrix& pi, const KBestConfig& cfg) {
  if (cfg.k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
  if (pi.rows() != static_cast<Eigen::Index>(pair.g1.node_count()) ||
      pi.cols() != static_cast<Eigen::Index>(pair.g2.node_count())) {
    fail(ErrorKind::InvalidArgument, "coupling must be n1 x n2 for the canonical pair");
  }
  KBestResult res;
  if (pair.g1.node_count() == 0) {
    res.path = ep_gen(pair, res.matching);
    res.ged_estimate = static_cast<long long>(res.path.length());
    res.matchings_evaluated = 1;
    return res;
  }

  std::map<NodeMatching, std::size_t> seen;
  std::optional<std::size_t> best_len;
  auto discover = [&](const NodeMatching& m) {
    if (seen.count(m)) return;
    const std::size_t len = ep_gen_length(pair, m);
    seen.emplace(m, len);
    if (!best_len || len < *best_len) {
      best_len = len;
      res.matching = m;
    }
  };
  auto prunable = [&](const Subspace& s) {
    return cfg.enable_pruning && s.lower_bound >= static_cast<long long>(*best_len);
  };
  split_loop(
      pi, cfg.k, [&](const PairSet& inc) { return subspace_lower_bound(pair, inc); }, discover,
      prunable, [](const NodeMatching&) {});

  res.path = ep_gen(pair, res.matching);
  res.ged_estimate = static_cast<long long>(res.path.length());
  res.matchings_evaluated = seen.size();
  return res;
}

std::vector<NodeMatching> ranked_matchings(const Matrix& pi, int k) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
  std::vector<NodeMatching> out;
  if (pi.rows() == 0) return {NodeMatching{}};
  bool first = true;
  split_loop(
      pi, k, [](const PairSet&) { return 0LL; },
      [&](const NodeMatching& m) {
        if (first) {
          out.push_back(m);
          first = false;
        }
      },
      [](const Subspace&) { return false; }, [&](const NodeMatching& m) { out.push_back(m); });
  return out;
}

}  // namespace gedot
