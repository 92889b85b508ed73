#pragma once

#include <vector>

#include "core/graph.hpp"

namespace gedot {

using Vector = Eigen::VectorXd;

struct SinkhornOptions {
  double epsilon = 0.05;
  int max_iter = 1000;
  double tol = 1e-9;  // worst marginal residual for early stop
  // Log-domain updates; needed once exp(-C/epsilon) underflows (epsilon below ~1e-3).
  bool stabilized = false;
};

struct OtResult {
  Matrix coupling;
  double transport_cost = 0.0;  // <C, coupling>
  int iterations_used = 0;
  double marginal_residual = 0.0;
  std::vector<double> residual_history;  // one entry per iteration
};

/// Entropic OT by alternating dual scaling. Throws NumericalInstability when a
/// scaling denominator underflows to zero, InvalidArgument on mass mismatch.
OtResult sinkhorn(const Matrix& cost, const Vector& mu, const Vector& nu,
                  const SinkhornOptions& opts = {});

/// Sinkhorn on the cost extended by a zero row carrying mass n2 - n1, with the
/// dummy row removed from the returned coupling (n1 x n2, rows sum to 1,
/// columns to at most 1).
OtResult extended_sinkhorn(const Matrix& cost, const SinkhornOptions& opts = {});

/// Frobenius product.
inline double frobenius(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

}  // namespace gedot
