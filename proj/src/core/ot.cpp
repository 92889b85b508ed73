#include "core/ot.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace gedot {
namespace {

void check_inputs(const Matrix& cost, const Vector& mu, const Vector& nu,
                  const SinkhornOptions& opts) {
  if (!(opts.epsilon > 0.0) || !std::isfinite(opts.epsilon)) {
    fail(ErrorKind::InvalidArgument, "epsilon must be a positive finite number");
  }
  if (opts.max_iter < 0) fail(ErrorKind::InvalidArgument, "max_iter must be nonnegative");
  if (opts.tol < 0.0) fail(ErrorKind::InvalidArgument, "tol must be nonnegative");
  if (cost.rows() != mu.size() || cost.cols() != nu.size()) {
    fail(ErrorKind::InvalidArgument, "cost matrix shape does not match the mass distributions");
  }
  if (!cost.allFinite()) fail(ErrorKind::InvalidArgument, "cost matrix has non-finite entries");
  if (!mu.allFinite() || !nu.allFinite() || (mu.array() < 0.0).any() ||
      (nu.array() < 0.0).any()) {
    fail(ErrorKind::InvalidArgument, "mass distributions must be finite and nonnegative");
  }
  const double total = std::max({1.0, mu.sum(), nu.sum()});
  if (std::abs(mu.sum() - nu.sum()) > 1e-9 * total) {
    std::ostringstream os;
    os << "mass mismatch: sum(mu)=" << mu.sum() << " but sum(nu)=" << nu.sum();
    fail(ErrorKind::InvalidArgument, os.str());
  }
}

[[noreturn]] void underflow(double epsilon) {
  std::ostringstream os;
  os << "Sinkhorn scaling underflowed at epsilon=" << epsilon
     << "; retry with a larger epsilon or the stabilized solver";
  fail(ErrorKind::NumericalInstability, os.str());
}

double residual_of(const Matrix& pi, const Vector& mu, const Vector& nu) {
  double r = 0.0;
  if (pi.size() == 0) return 0.0;
  r = std::max(r, (pi.rowwise().sum() - mu).cwiseAbs().maxCoeff());
  r = std::max(r, (pi.colwise().sum().transpose() - nu).cwiseAbs().maxCoeff());
  return r;
}

// Scales so that out[j] = num[j] / den[j], treating zero mass as inert.
void scale(const Vector& num, const Vector& den, Vector& out, double epsilon) {
  for (Eigen::Index j = 0; j < num.size(); ++j) {
    if (num[j] == 0.0) {
      out[j] = 0.0;
      continue;
    }
    if (!(den[j] > 0.0)) underflow(epsilon);
    out[j] = num[j] / den[j];
    if (!std::isfinite(out[j])) underflow(epsilon);
  }
}

OtResult sinkhorn_plain(const Matrix& cost, const Vector& mu, const Vector& nu,
                        const SinkhornOptions& opts) {
  // std::exp rather than Eigen's packet exp, which clamps its argument and
  // would turn a true underflow into a denormal instead of zero.
  const Matrix kernel = (-cost / opts.epsilon).unaryExpr([](double x) { return std::exp(x); });
  Vector phi = Vector::Ones(mu.size());
  Vector psi = Vector::Zero(nu.size());
  OtResult res;
  for (int it = 0; it < opts.max_iter; ++it) {
    scale(nu, kernel.transpose() * phi, psi, opts.epsilon);
    scale(mu, kernel * psi, phi, opts.epsilon);
    ++res.iterations_used;
    const Vector cols = psi.cwiseProduct(kernel.transpose() * phi);
    const Vector rows = phi.cwiseProduct(kernel * psi);
    const double r = std::max(nu.size() ? (cols - nu).cwiseAbs().maxCoeff() : 0.0,
                              mu.size() ? (rows - mu).cwiseAbs().maxCoeff() : 0.0);
    res.residual_history.push_back(r);
    if (r <= opts.tol) break;
  }
  res.coupling = phi.asDiagonal() * kernel * psi.asDiagonal();
  return res;
}

// log-sum-exp over a vector that may contain -inf entries.
double log_sum_exp(const Vector& v) {
  const double m = v.size() ? v.maxCoeff() : -std::numeric_limits<double>::infinity();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

OtResult sinkhorn_log(const Matrix& cost, const Vector& mu, const Vector& nu,
                      const SinkhornOptions& opts) {
  const double eps = opts.epsilon;
  const auto n1 = cost.rows();
  const auto n2 = cost.cols();
  const Vector log_mu = mu.array().log();  // log(0) = -inf marks inert rows
  const Vector log_nu = nu.array().log();
  Vector f = Vector::Zero(n1);
  Vector g = Vector::Zero(n2);
  OtResult res;
  Vector scratch_col(n1);
  Vector scratch_row(n2);
  auto plan = [&] {
    Matrix pi(n1, n2);
    for (Eigen::Index i = 0; i < n1; ++i) {
      for (Eigen::Index j = 0; j < n2; ++j) pi(i, j) = std::exp((f[i] + g[j] - cost(i, j)) / eps);
    }
    return pi;
  };
  for (int it = 0; it < opts.max_iter; ++it) {
    for (Eigen::Index j = 0; j < n2; ++j) {
      for (Eigen::Index i = 0; i < n1; ++i) scratch_col[i] = (f[i] - cost(i, j)) / eps;
      const double lse = log_sum_exp(scratch_col);
      if (nu[j] > 0.0 && !std::isfinite(lse)) underflow(eps);
      g[j] = nu[j] > 0.0 ? eps * (log_nu[j] - lse) : -std::numeric_limits<double>::infinity();
    }
    for (Eigen::Index i = 0; i < n1; ++i) {
      for (Eigen::Index j = 0; j < n2; ++j) scratch_row[j] = (g[j] - cost(i, j)) / eps;
      const double lse = log_sum_exp(scratch_row);
      if (mu[i] > 0.0 && !std::isfinite(lse)) underflow(eps);
      f[i] = mu[i] > 0.0 ? eps * (log_mu[i] - lse) : -std::numeric_limits<double>::infinity();
    }
    ++res.iterations_used;
    const double r = residual_of(plan(), mu, nu);
    res.residual_history.push_back(r);
    if (r <= opts.tol) break;
  }
  res.coupling = plan();
  return res;
}

}  // namespace

OtResult sinkhorn(const Matrix& cost, const Vector& mu, const Vector& nu,
                  const SinkhornOptions& opts) {
  check_inputs(cost, mu, nu, opts);
  OtResult res = opts.stabilized ? sinkhorn_log(cost, mu, nu, opts)
                                 : sinkhorn_plain(cost, mu, nu, opts);
  res.transport_cost = frobenius(cost, res.coupling);
  res.marginal_residual = residual_of(res.coupling, mu, nu);
  return res;
}

OtResult extended_sinkhorn(const Matrix& cost, const SinkhornOptions& opts) {
  const auto n1 = cost.rows();
  const auto n2 = cost.cols();
  if (n1 > n2) fail(ErrorKind::InvalidArgument, "extended Sinkhorn needs n1 <= n2");
  if (n1 == n2) {
    // The dummy row would carry zero mass and stay inert.
    return sinkhorn(cost, Vector::Ones(n1), Vector::Ones(n2), opts);
  }
  Matrix extended = Matrix::Zero(n1 + 1, n2);
  extended.topRows(n1) = cost;
  Vector mu = Vector::Ones(n1 + 1);
  mu[n1] = static_cast<double>(n2 - n1);
  const Vector nu = Vector::Ones(n2);
  OtResult full = sinkhorn(extended, mu, nu, opts);

  OtResult res;
  res.coupling = full.coupling.topRows(n1);
  res.transport_cost = frobenius(cost, res.coupling);
  res.iterations_used = full.iterations_used;
  res.marginal_residual = full.marginal_residual;
  res.residual_history = std::move(full.residual_history);
  return res;
}

}  // namespace gedot
