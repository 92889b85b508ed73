#include "core/gw.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/lsap.hpp"
#include "core/ot.hpp"

namespace gedot {

GwProblem GwProblem::from_pair(const GraphPair& pair) {
  const std::size_t n = pair.g2.node_count();
  GwProblem p;
  p.mismatch = label_mismatch_matrix(pair);
  p.adj1 = adjacency(pair.g1, n);
  p.adj2 = adjacency(pair.g2, n);
  return p;
}

Matrix tensor_apply(const Matrix& adj1, const Matrix& adj2, const Matrix& b, TensorMode mode) {
  const auto n1 = adj1.rows();
  const auto n2 = adj2.rows();
  if (adj1.cols() != n1 || adj2.cols() != n2 || b.rows() != n1 || b.cols() != n2) {
    fail(ErrorKind::InvalidArgument, "tensor_apply dimension mismatch");
  }
  if (mode == TensorMode::Fast) {
    const Vector row_mass = b.rowwise().sum();
    const Vector col_mass = b.colwise().sum().transpose();
    const Vector left = adj1.cwiseAbs2() * row_mass;
    const Vector right = adj2.cwiseAbs2() * col_mass;
    Matrix out = -2.0 * adj1 * b * adj2.transpose();
    out.colwise() += left;
    out.rowwise() += right.transpose();
    return out;
  }
  Matrix out = Matrix::Zero(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index k = 0; k < n2; ++k) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n1; ++j) {
        for (Eigen::Index l = 0; l < n2; ++l) {
          const double d = adj1(i, j) - adj2(k, l);
          s += d * d * b(j, l);
        }
      }
      out(i, k) = s;
    }
  }
  return out;
}

double gw_objective(const Matrix& pi, const GwProblem& prob) {
  if (pi.rows() != prob.size() || pi.cols() != prob.size()) {
    fail(ErrorKind::InvalidArgument, "coupling does not match the problem size");
  }
  return frobenius(pi, prob.mismatch) +
         0.5 * frobenius(pi, tensor_apply(prob.adj1, prob.adj2, pi));
}

Matrix cg_step_direction(const Matrix& gradient) {
  if (gradient.rows() != gradient.cols()) {
    fail(ErrorKind::InvalidArgument, "gradient must be square");
  }
  const Assignment a = lsap_min(gradient);
  Matrix dir = Matrix::Zero(gradient.rows(), gradient.cols());
  for (std::size_t i = 0; i < a.matching.size(); ++i) {
    dir(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.matching[i])) = 1.0;
  }
  return dir;
}

namespace {

double line_search_impl(const Matrix& pi, const Matrix& dir, const GwProblem& prob,
                        const Matrix& l_pi, TensorMode mode) {
  const Matrix delta = dir - pi;
  if (delta.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double a = 0.5 * frobenius(delta, tensor_apply(prob.adj1, prob.adj2, delta, mode));
  const double b = frobenius(delta, prob.mismatch) + frobenius(delta, l_pi);
  if (a > 0.0) return std::clamp(-b / (2.0 * a), 0.0, 1.0);
  return a + b < 0.0 ? 1.0 : 0.0;
}

}  // namespace

double line_search(const Matrix& pi, const Matrix& dir, const GwProblem& prob) {
  if (pi.rows() != prob.size() || pi.cols() != prob.size() || dir.rows() != prob.size() ||
      dir.cols() != prob.size()) {
    fail(ErrorKind::InvalidArgument, "line search dimension mismatch");
  }
  if (pi.size() == 0) return 0.0;
  return line_search_impl(pi, dir, prob, tensor_apply(prob.adj1, prob.adj2, pi), TensorMode::Fast);
}

GwSolution gedgw_solve(const GraphPair& pair, const CgOptions& opts) {
  if (pair.g1.node_count() > pair.g2.node_count()) {
    fail(ErrorKind::InvalidArgument, "pair is not canonicalized (n1 > n2)");
  }
  const GwProblem prob = GwProblem::from_pair(pair);
  const auto n = prob.size();
  GwSolution sol;
  if (n == 0) {
    sol.coupling = Matrix(0, 0);
    sol.objective_history.push_back(0.0);
    return sol;
  }
  Matrix pi = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  auto objective = [&](const Matrix& p, const Matrix& l_p) {
    return frobenius(p, prob.mismatch) + 0.5 * frobenius(p, l_p);
  };
  Matrix l_pi = tensor_apply(prob.adj1, prob.adj2, pi, opts.mode);
  double value = objective(pi, l_pi);
  sol.objective_history.push_back(value);

  for (int it = 0; it < opts.max_iter; ++it) {
    const Matrix gradient = prob.mismatch + l_pi;
    const Matrix dir = cg_step_direction(gradient);
    const double gamma = line_search_impl(pi, dir, prob, l_pi, opts.mode);
    if (gamma <= 0.0) break;
    Matrix next = pi + gamma * (dir - pi);
    Matrix l_next = tensor_apply(prob.adj1, prob.adj2, next, opts.mode);
    const double next_value = objective(next, l_next);
    if (next_value > value) break;  // rounding noise; the line search never ascends
    const double decrease = value - next_value;
    pi = std::move(next);
    l_pi = std::move(l_next);
    value = next_value;
    sol.step_sizes.push_back(gamma);
    sol.objective_history.push_back(value);
    if (value == 0.0 || decrease <= opts.tol * std::max(std::abs(value + decrease), 1e-12)) break;
  }
  sol.coupling = std::move(pi);
  sol.ged_estimate = std::max(0.0, value);
  return sol;
}

}  // namespace gedot
