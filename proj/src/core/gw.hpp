#pragma once

#include <vector>

#include "core/graph.hpp"

namespace gedot {

/// Quadratic GED program over the padded pair: node-mismatch matrix plus the
/// two adjacency matrices, all n x n.
struct GwProblem {
  Matrix mismatch;
  Matrix adj1;
  Matrix adj2;

  static GwProblem from_pair(const GraphPair& pair);
  Eigen::Index size() const { return mismatch.rows(); }
};

enum class TensorMode { Naive, Fast };

/// (sum_{j,l} (A1[i,j] - A2[k,l])^2 * B[j,l])_{i,k}.
/// Naive sums the 4-index tensor in O(n^4); Fast uses the squared-loss
/// decomposition A1^2 B 1 1^T + 1 1^T B A2^2^T - 2 A1 B A2^T in O(n^3).
Matrix tensor_apply(const Matrix& adj1, const Matrix& adj2, const Matrix& b,
                    TensorMode mode = TensorMode::Fast);

/// <pi, M> + 1/2 <pi, L (x) pi>.
double gw_objective(const Matrix& pi, const GwProblem& prob);

/// Permutation matrix minimizing <G, pi> over the doubly stochastic polytope.
Matrix cg_step_direction(const Matrix& gradient);

/// Exact minimizer over [0,1] of the objective along pi + gamma (dir - pi).
double line_search(const Matrix& pi, const Matrix& dir, const GwProblem& prob);

struct CgOptions {
  int max_iter = 1000;
  double tol = 1e-8;  // relative objective decrease
  TensorMode mode = TensorMode::Fast;
};

struct GwSolution {
  Matrix coupling;  // n x n, dummy rows included
  double ged_estimate = 0.0;
  std::vector<double> objective_history;  // starts with the initial objective
  std::vector<double> step_sizes;
};

/// Conditional gradient from the uniform coupling.
GwSolution gedgw_solve(const GraphPair& pair, const CgOptions& opts = {});

}  // namespace gedot
