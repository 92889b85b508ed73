#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/lsap.hpp"
#include "core/ot.hpp"
#include "oracles.hpp"

using namespace gedot;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, double hi = 1.0) {
  std::uniform_real_distribution<double> u(0.0, hi);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = u(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("sinkhorn on a zero cost spreads mass evenly") {
  OtResult r = sinkhorn(Matrix::Zero(3, 3), Vector::Ones(3), Vector::Ones(3));
  CHECK((r.coupling.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-12);
  CHECK(r.transport_cost == 0.0);
}

TEST_CASE("sinkhorn prefers the cheap permutation at small epsilon") {
  Matrix c(2, 2);
  c << 0, 1, 1, 0;
  OtResult r = sinkhorn(c, Vector::Ones(2), Vector::Ones(2), {0.05, 1000, 1e-12, false});
  CHECK((r.coupling - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("sinkhorn at large epsilon approaches the product coupling") {
  std::mt19937_64 rng(3);
  Matrix c = random_matrix(rng, 4, 4, 5.0);
  Vector mu(4), nu(4);
  mu << 1, 2, 3, 4;
  nu << 2.5, 2.5, 2.5, 2.5;
  OtResult r = sinkhorn(c, mu, nu, {1e5, 1000, 1e-12, false});
  Matrix expected = mu * nu.transpose() / 10.0;
  CHECK((r.coupling - expected).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("sinkhorn reports its cost and residuals") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix c = random_matrix(rng, 10, 10);
    OtResult r = sinkhorn(c, Vector::Ones(10), Vector::Ones(10));
    CHECK(r.coupling.minCoeff() >= 0.0);
    CHECK(r.transport_cost == doctest::Approx(frobenius(c, r.coupling)).epsilon(1e-12));
    CHECK(r.marginal_residual <= 1e-6);
    CHECK(oracle::max_row_error(r.coupling, Vector::Ones(10)) <= 1e-6);
    CHECK(oracle::max_col_error(r.coupling, Vector::Ones(10)) <= 1e-6);
    REQUIRE_FALSE(r.residual_history.empty());
    CHECK(r.residual_history.back() == doctest::Approx(r.marginal_residual));
    // Checkpoints every 10 iterations never go up.
    for (std::size_t k = 10; k < r.residual_history.size(); k += 10) {
      CHECK(r.residual_history[k] <= r.residual_history[k - 10] + 1e-15);
    }
  }
}

TEST_CASE("sinkhorn argument errors") {
  CHECK_THROWS_AS(sinkhorn(Matrix::Zero(2, 2), Vector::Ones(2), Vector::Constant(2, 2.0)), Error);
  CHECK_THROWS_AS(sinkhorn(Matrix::Zero(2, 2), Vector::Ones(2), Vector::Ones(2), {0.0, 10, 0.0, false}), Error);
  CHECK_THROWS_AS(sinkhorn(Matrix::Zero(2, 3), Vector::Ones(2), Vector::Ones(2)), Error);
}

TEST_CASE("plain sinkhorn reports underflow naming epsilon") {
  Matrix c(2, 2);
  c << 0, 2, 2, 1;
  Vector mu(2), nu(2);
  mu << 1, 1;
  nu << 1, 1;
  try {
    sinkhorn(c, mu, nu, {1e-3, 100, 1e-9, false});
    FAIL("expected NumericalInstability");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NumericalInstability);
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  OtResult stable = sinkhorn(c, mu, nu, {1e-3, 2000, 1e-9, true});
  CHECK(stable.marginal_residual <= 1e-6);
}

TEST_CASE("stabilized sinkhorn converges to the assignment cost") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    Matrix c = random_matrix(rng, 8, 8);
    OtResult r = sinkhorn(c, Vector::Ones(8), Vector::Ones(8), {1e-3, 20000, 1e-10, true});
    CHECK(std::abs(r.transport_cost - oracle::brute_lsap(c)) <= 0.01);
  }
}

TEST_CASE("extended sinkhorn") {
  SUBCASE("square input equals plain sinkhorn") {
    std::mt19937_64 rng(2);
    Matrix c = random_matrix(rng, 4, 4);
    OtResult a = extended_sinkhorn(c);
    OtResult b = sinkhorn(c, Vector::Ones(4), Vector::Ones(4));
    CHECK((a.coupling - b.coupling).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("dummy row absorbs the expensive column") {
    Matrix c(1, 2);
    c << 0, 5;
    OtResult r = extended_sinkhorn(c, {0.05, 1000, 1e-12, false});
    CHECK(r.coupling(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.coupling(0, 1) < 1e-6);
  }
  SUBCASE("zero cost 2x3") {
    OtResult r = extended_sinkhorn(Matrix::Zero(2, 3));
    REQUIRE(r.coupling.rows() == 2);
    CHECK(oracle::max_row_error(r.coupling, Vector::Ones(2)) < 1e-9);
    CHECK(oracle::max_col_error(r.coupling, Vector::Constant(3, 2.0 / 3.0)) < 1e-9);
  }
  SUBCASE("rows sum to one, columns at most one") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
      const Eigen::Index n1 = 1 + static_cast<Eigen::Index>(rng() % 6);
      const Eigen::Index n2 = n1 + static_cast<Eigen::Index>(rng() % 4);
      Matrix c = random_matrix(rng, n1, n2, 3.0);
      OtResult r = extended_sinkhorn(c, {0.25, 200000, 1e-9, false});
      REQUIRE(r.marginal_residual <= 1e-9);
      CHECK(oracle::max_row_error(r.coupling, Vector::Ones(n1)) < 1e-6);
      CHECK(r.coupling.colwise().sum().maxCoeff() <= 1.0 + 1e-6);
      CHECK(r.transport_cost == doctest::Approx(frobenius(c, r.coupling)));
    }
  }
  CHECK_THROWS_AS(extended_sinkhorn(Matrix::Zero(3, 2)), Error);
}

TEST_CASE("lsap_min examples") {
  Matrix c(2, 2);
  c << 0, 9, 9, 0;
  Assignment a = lsap_min(c);
  CHECK(a.matching == NodeMatching{0, 1});
  CHECK(a.cost == 0.0);
  Assignment b = lsap_min(c, {}, {{0, 0}});
  CHECK(b.matching == NodeMatching{1, 0});
  CHECK(b.cost == 18.0);
  Assignment f = lsap_min(c, {{1, 0}});
  CHECK(f.matching == NodeMatching{1, 0});
}

TEST_CASE("lsap_min breaks ties lexicographically") {
  Assignment a = lsap_min(Matrix::Zero(3, 4));
  CHECK(a.matching == NodeMatching{0, 1, 2});
  Assignment b = lsap_min(Matrix::Zero(3, 3), {}, {{0, 0}});
  CHECK(b.matching == NodeMatching{1, 0, 2});
}

TEST_CASE("lsap_min infeasible constraints") {
  Matrix c = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(lsap_min(c, {{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(lsap_min(c, {{0, 0}}, {{0, 0}}), Error);
  CHECK_THROWS_AS(lsap_min(c, {}, {{0, 0}, {0, 1}}), Error);
  CHECK_THROWS_AS(lsap_min(Matrix::Zero(3, 2)), Error);
  try {
    lsap_min(c, {}, {{0, 0}, {0, 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
}

TEST_CASE("lsap_min matches exhaustive search") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n1 = 1 + static_cast<Eigen::Index>(rng() % 6);
    const Eigen::Index n2 = n1 + static_cast<Eigen::Index>(rng() % 2);
    Matrix c = random_matrix(rng, n1, n2);
    if (t % 3 == 0) c = c.array().round();  // integer costs with many ties
    Assignment a = lsap_min(c);
    CHECK(a.cost == doctest::Approx(oracle::brute_lsap(c)).epsilon(1e-12));
    double s = 0.0;
    for (Eigen::Index i = 0; i < n1; ++i) s += c(i, static_cast<Eigen::Index>(a.matching[static_cast<std::size_t>(i)]));
    CHECK(s == doctest::Approx(a.cost));
  }
  for (int t = 0; t < 20; ++t) {
    Matrix c = random_matrix(rng, 6, 6);
    CHECK(lsap_min(c).cost == doctest::Approx(oracle::brute_lsap(c)));
  }
}

TEST_CASE("lsap_min returns the lexicographically smallest optimum") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n1 = 1 + rng() % 4, n2 = n1 + rng() % 2;
    Matrix c(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2));
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = static_cast<double>(rng() % 2);
    }
    const double best = oracle::brute_lsap(c);
    NodeMatching first;
    oracle::for_each_injection(n1, n2, [&](const NodeMatching& m) {
      double s = 0;
      for (std::size_t i = 0; i < n1; ++i) s += c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m[i]));
      if (first.empty() && s == best) first = m;
    });
    CHECK(lsap_min(c).matching == first);
  }
}
