#include <doctest.h>

#include <random>

#include "core/baseline.hpp"
#include "core/error.hpp"
#include "core/exact.hpp"
#include "core/pipeline.hpp"
#include "oracles.hpp"

using namespace gedot;

TEST_CASE("handcrafted cost") {
  Graph star = Graph::from_strings({"A", "B", "B", "B"}, {{0, 1}, {0, 2}, {0, 3}});
  Graph edge = Graph::from_strings({"A", "C"}, {{0, 1}});
  GraphPair p = canonicalize_pair(edge, star);
  Matrix c = handcrafted_cost(p);
  REQUIRE(c.rows() == 2);
  REQUIRE(c.cols() == 4);
  CHECK(c(0, 0) == 1.0);  // same label, degrees 1 vs 3
  CHECK(c(1, 0) == 2.0);  // label differs, degrees 1 vs 3
  CHECK(c(0, 1) == 1.0);  // label differs, equal degrees
  Graph g = Graph::from_strings({"A", "B", "C"}, {{0, 1}, {1, 2}});
  CHECK(handcrafted_cost(canonicalize_pair(g, g)).diagonal().isZero());
}

TEST_CASE("handcrafted-ot on identical graphs") {
  Graph g = Graph::from_strings({"A", "B", "C", "A"}, {{0, 1}, {1, 2}, {2, 3}});
  Estimate e = handcrafted_ot_estimate(canonicalize_pair(g, g), {}, {});
  CHECK(e.ged_value == 0.0);
  REQUIRE(e.path.has_value());
  CHECK(e.path->length() == 0);
}

TEST_CASE("handcrafted coupling splits mass across symmetric targets") {
  // A single A-node facing two interchangeable A-nodes of a 3-node path.
  GraphPair p = canonicalize_pair(Graph::from_strings({"A"}, {}),
                                  Graph::from_strings({"A", "B", "A"}, {{0, 1}, {1, 2}}));
  Estimate e = handcrafted_ot_estimate(p, {0.01, 5000, 1e-12, false}, {});
  REQUIRE(e.coupling.has_value());
  CHECK((*e.coupling)(0, 0) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK((*e.coupling)(0, 2) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(e.ged_value == exact_ged(p).ged);
}

TEST_CASE("estimators are feasible upper bounds") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    GraphPair p = oracle::random_pair(rng, 1, 7);
    const long long truth = exact_ged(p).ged;
    Estimate h = handcrafted_ot_estimate(p, {}, {});
    Estimate g = gedgw_estimate(p, {}, {}, true);
    for (const Estimate* e : {&h, &g}) {
      REQUIRE(e->path.has_value());
      CHECK(verify_path(p, *e->path, *e->matching).ok);
      CHECK(static_cast<long long>(e->path->length()) >= truth);
    }
    CHECK(h.ged_value == static_cast<double>(h.path->length()));
  }
}

TEST_CASE("ensemble choice rules") {
  Estimate a{method::kGedgw, 3.0, std::nullopt, std::nullopt, std::nullopt, 0.0};
  Estimate b{method::kHandcrafted, 4.0, std::nullopt, std::nullopt, std::nullopt, 0.0};
  CHECK(ensemble_min({a, b}).method == method::kGedgw);
  CHECK(ensemble_min({b, a}).method == method::kGedgw);
  Estimate c = b;
  c.ged_value = 3.0;
  CHECK(ensemble_min({c, a}).method == method::kHandcrafted);
  CHECK(ensemble_min({b}).method == method::kHandcrafted);
  CHECK_THROWS_AS(ensemble_min({}), Error);

  EditPath five, four;
  five.ops.assign(5, EditOperation::insert_node("X"));
  four.ops.assign(4, EditOperation::insert_node("X"));
  a.path = five;
  b.path = four;
  CHECK(ensemble_path({a, b}).method == method::kHandcrafted);
  b.path = five;
  CHECK(ensemble_path({a, b}).method == method::kGedgw);
  Estimate no_path = a;
  no_path.path.reset();
  CHECK_THROWS_AS(ensemble_path({a, no_path}), Error);
}

TEST_CASE("ensemble pipeline is the minimum of its members") {
  std::mt19937_64 rng(15);
  PipelineOptions ens;
  ens.method = method::kEnsemble;
  for (int t = 0; t < 100; ++t) {
    GraphPair p = oracle::random_pair(rng, 1, 7);
    PairOutcome o = run_pipeline(p, ens);
    Estimate g = gedgw_estimate(p, {}, {}, true);
    Estimate h = handcrafted_ot_estimate(p, {}, {});
    CHECK(o.estimate.ged_value == std::min(g.ged_value, h.ged_value));
    CHECK(o.estimate.path->length() == std::min(g.path->length(), h.path->length()));
  }
}

TEST_CASE("gedgw pipeline on identical pairs gives zero") {
  std::mt19937_64 rng(16);
  PipelineOptions o;
  o.method = method::kGedgw;
  for (int t = 0; t < 20; ++t) {
    Graph g = oracle::random_graph(rng, 1 + rng() % 7, 0.4, {"A", "B", "C"});
    PairOutcome out = run_pipeline(canonicalize_pair(g, g), o);
    CHECK(out.estimate.ged_value == doctest::Approx(0.0).epsilon(1e-9));
  }
  PipelineOptions bad;
  bad.method = "nope";
  CHECK_THROWS_AS(run_pipeline(canonicalize_pair(Graph(), Graph()), bad), Error);
}

TEST_CASE("k = 100 never does worse than k = 1") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    GraphPair p = oracle::random_pair(rng, 1, 7);
    PipelineOptions one, hundred;
    one.kbest.k = 1;
    hundred.kbest.k = 100;
    CHECK(run_pipeline(p, hundred).path->length() <= run_pipeline(p, one).path->length());
  }
}
