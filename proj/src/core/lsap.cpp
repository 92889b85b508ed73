#include "core/lsap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "core/error.hpp"

namespace gedot {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct SquareSolution {
  std::vector<std::size_t> row_to_col;
  std::vector<double> u, v;  // duals: cost(i,j) - u[i] - v[j] >= 0
};

// Shortest augmenting path Hungarian method on a dense square matrix.
SquareSolution hungarian(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  SquareSolution s;
  s.row_to_col.assign(n, kNone);
  for (std::size_t j = 1; j <= n; ++j) s.row_to_col[p[j] - 1] = j - 1;
  s.u.assign(u.begin() + 1, u.end());
  s.v.assign(v.begin() + 1, v.end());
  return s;
}

// Rewrites an optimal perfect matching into the lexicographically smallest
// optimal one for rows [0, rows_to_fix), walking only tight edges.
void make_lexicographic(const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<char>>& allowed, SquareSolution& s,
                        std::size_t rows_to_fix, double eps) {
  const std::size_t n = a.size();
  auto tight = [&](std::size_t i, std::size_t j) {
    return allowed[i][j] && a[i][j] - s.u[i] - s.v[j] <= eps;
  };
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < n; ++i) owner[s.row_to_col[i]] = i;
  std::vector<char> fixed(n, 0);
  std::vector<std::size_t> parent(n);
  std::vector<char> reach(n);
  for (std::size_t i = 0; i < rows_to_fix; ++i) {
    const std::size_t home = s.row_to_col[i];
    // Rows (other than i) that can give up their column so that a chain of
    // tight reassignments ends by taking `home`.
    std::fill(reach.begin(), reach.end(), 0);
    std::deque<std::size_t> queue{home};
    while (!queue.empty()) {
      const std::size_t col = queue.front();
      queue.pop_front();
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i || fixed[r] || reach[r] || !tight(r, col)) continue;
        reach[r] = 1;
        parent[r] = col;
        queue.push_back(s.row_to_col[r]);
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!tight(i, c)) continue;
      if (c == home) break;
      const std::size_t r0 = owner[c];
      if (fixed[r0] || !reach[r0]) continue;
      s.row_to_col[i] = c;
      owner[c] = i;
      std::size_t r = r0;
      while (true) {
        const std::size_t col = parent[r];
        s.row_to_col[r] = col;
        const std::size_t prev = owner[col];
        owner[col] = r;
        if (col == home) break;
        r = prev;
      }
      break;
    }
    fixed[i] = 1;
  }
}

}  // namespace

Assignment lsap_min(const Matrix& cost, const PairSet& forced, const PairSet& forbidden) {
  const auto n1 = static_cast<std::size_t>(cost.rows());
  const auto n2 = static_cast<std::size_t>(cost.cols());
  if (n1 > n2) fail(ErrorKind::InvalidArgument, "assignment needs rows <= columns");
  if (!cost.allFinite()) fail(ErrorKind::InvalidArgument, "cost matrix has non-finite entries");

  std::vector<std::size_t> forced_col(n1, kNone);
  std::vector<char> col_taken(n2, 0);
  for (const auto& [r, c] : forced) {
    if (r >= n1 || c >= n2) fail(ErrorKind::InvalidArgument, "forced pair out of range");
    if (forced_col[r] != kNone || col_taken[c]) {
      fail(ErrorKind::Infeasible, "forced pairs share a row or a column");
    }
    if (forbidden.count({r, c})) fail(ErrorKind::Infeasible, "a pair is both forced and forbidden");
    forced_col[r] = c;
    col_taken[c] = 1;
  }

  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < n1; ++r) {
    if (forced_col[r] == kNone) rows.push_back(r);
  }
  for (std::size_t c = 0; c < n2; ++c) {
    if (!col_taken[c]) cols.push_back(c);
  }
  const std::size_t n = cols.size();  // square size after phantom rows

  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t r : rows) {
    for (std::size_t c : cols) {
      if (forbidden.count({r, c})) continue;
      const double x = cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      lo = any ? std::min(lo, x) : x;
      hi = any ? std::max(hi, x) : x;
      any = true;
    }
  }
  // Any matching through a forbidden pair costs more than every admissible one.
  const double sentinel = hi + static_cast<double>(n + 1) * (hi - lo + 1.0);

  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (forbidden.count({rows[i], cols[j]})) {
        a[i][j] = sentinel;
        allowed[i][j] = 0;
      } else {
        a[i][j] = cost(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
      }
    }
  }

  SquareSolution sol = hungarian(a);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!allowed[i][sol.row_to_col[i]]) {
      fail(ErrorKind::Infeasible, "no matching satisfies the forced/forbidden constraints");
    }
  }
  const double eps = 1e-9 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  make_lexicographic(a, allowed, sol, rows.size(), eps);

  Assignment out;
  out.matching = std::move(forced_col);
  for (std::size_t i = 0; i < rows.size(); ++i) out.matching[rows[i]] = cols[sol.row_to_col[i]];
  for (std::size_t r = 0; r < n1; ++r) {
    out.cost += cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out.matching[r]));
  }
  return out;
}

}  // namespace gedot
