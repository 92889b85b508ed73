#include "core/exact.hpp"

#include <limits>

#include "core/error.hpp"

namespace gedot {
namespace {

class Search {
 public:
  Search(const GraphPair& pair, std::size_t cap)
      : n1_(pair.g1.node_count()), n_(pair.g2.node_count()), cap_(cap) {
    mismatch_.assign(n_ * n_, 1);
    adj1_.assign(n_ * n_, 0);
    adj2_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n1_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (labels_match(pair.g1.label(i), pair.g2.label(k))) mismatch_[i * n_ + k] = 0;
      }
    }
    for (const Edge& e : pair.g1.edges()) adj1_[e.u * n_ + e.v] = adj1_[e.v * n_ + e.u] = 1;
    for (const Edge& e : pair.g2.edges()) adj2_[e.u * n_ + e.v] = adj2_[e.v * n_ + e.u] = 1;
    assign_.assign(n_, 0);
    used_.assign(n_, 0);
  }

  ExactResult run() {
    descend(0, 0);
    result_.ged = best_;
    return std::move(result_);
  }

 private:
  void descend(std::size_t depth, long long partial) {
    if (depth == n_) {
      ++result_.enumerated_count;
      if (partial < best_) {
        best_ = partial;
        result_.optimal_matchings.clear();
      }
      if (partial == best_ && result_.optimal_matchings.size() < cap_) {
        result_.optimal_matchings.emplace_back(assign_.begin(),
                                               assign_.begin() + static_cast<std::ptrdiff_t>(n1_));
      }
      return;
    }
    // Dummies are interchangeable: keep their targets increasing.
    std::size_t first = 0;
    if (depth > n1_) first = assign_[depth - 1] + 1;
    for (std::size_t k = first; k < n_; ++k) {
      if (used_[k]) continue;
      long long cost = partial + mismatch_[depth * n_ + k];
      for (std::size_t j = 0; j < depth; ++j) {
        cost += adj1_[depth * n_ + j] != adj2_[k * n_ + assign_[j]];
      }
      if (cost > best_ || (cost == best_ && result_.optimal_matchings.size() >= cap_)) continue;
      used_[k] = 1;
      assign_[depth] = k;
      descend(depth + 1, cost);
      used_[k] = 0;
    }
  }

  std::size_t n1_, n_, cap_;
  std::vector<int> mismatch_, adj1_, adj2_;
  std::vector<std::size_t> assign_;
  std::vector<char> used_;
  long long best_ = std::numeric_limits<long long>::max();
  ExactResult result_;
};

}  // namespace

ExactResult exact_ged(const GraphPair& pair, const ExactOptions& opts) {
  if (pair.g1.node_count() > pair.g2.node_count()) {
    fail(ErrorKind::InvalidArgument, "pair is not canonicalized (n1 > n2)");
  }
  if (pair.g2.node_count() > opts.max_nodes) {
    fail(ErrorKind::TooLarge, "exact search is limited to " + std::to_string(opts.max_nodes) +
                                  " nodes (got " + std::to_string(pair.g2.node_count()) +
                                  "); use the approximate solvers instead");
  }
  return Search(pair, opts.matching_cap).run();
}

}  // namespace gedot
