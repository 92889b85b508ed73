#include <doctest.h>

#include <chrono>
#include <random>

#include "core/edit_path.hpp"
#include "core/error.hpp"
#include "core/exact.hpp"
#include "oracles.hpp"

using namespace gedot;

TEST_CASE("exact on identical graphs") {
  Graph g = Graph::from_strings({"A", "B", "A"}, {{0, 1}, {1, 2}});
  ExactResult r = exact_ged(canonicalize_pair(g, g));
  CHECK(r.ged == 0);
  CHECK(std::find(r.optimal_matchings.begin(), r.optimal_matchings.end(), NodeMatching{0, 1, 2}) !=
        r.optimal_matchings.end());
}

TEST_CASE("exact on single nodes with different labels") {
  ExactResult r = exact_ged(canonicalize_pair(Graph::from_strings({"A"}, {}), Graph::from_strings({"B"}, {})));
  CHECK(r.ged == 1);
}

TEST_CASE("exact on the figure-1 fixture") {
  GraphPair p = canonicalize_pair(Graph::from_strings({"A", "B", "C"}, {{0, 1}, {1, 2}}),
                                  Graph::from_strings({"A", "B", "D", "E"}, {{0, 1}, {2, 3}}));
  CHECK(exact_ged(p).ged == 4);
}

TEST_CASE("exact agrees with enumeration and its matchings are optimal") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 300; ++t) {
    GraphPair p = oracle::random_pair(rng, 0, 6);
    ExactResult r = exact_ged(p);
    CHECK(r.ged == oracle::brute_ged(p));
    REQUIRE_FALSE(r.optimal_matchings.empty());
    CHECK(r.optimal_matchings.size() <= 10);
    for (const auto& m : r.optimal_matchings) {
      CHECK(static_cast<long long>(ep_gen_length(p, m)) == r.ged);
    }
    CHECK(ged_lower_bound(p) <= r.ged);
  }
}

TEST_CASE("exact is symmetric") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Graph a = oracle::random_graph(rng, 1 + rng() % 6, 0.4, {"A", "B"});
    Graph b = oracle::random_graph(rng, 1 + rng() % 6, 0.4, {"A", "B"});
    CHECK(exact_ged(canonicalize_pair(a, b)).ged == exact_ged(canonicalize_pair(b, a)).ged);
  }
}

TEST_CASE("exact refuses large graphs") {
  std::mt19937_64 rng(12);
  Graph big = oracle::random_graph(rng, 10, 0.3, {"A"});
  try {
    exact_ged(canonicalize_pair(big, big));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
  ExactOptions wide;
  wide.max_nodes = 10;
  CHECK(exact_ged(canonicalize_pair(big, big), wide).ged == 0);
}

TEST_CASE("exact handles nine nodes quickly") {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    Graph a = oracle::random_graph(rng, 9, 0.4, {"A", "B", "C"});
    Graph b = oracle::random_graph(rng, 9, 0.4, {"A", "B", "C"});
    const auto start = std::chrono::steady_clock::now();
    ExactResult r = exact_ged(canonicalize_pair(a, b));
    worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    CHECK(r.ged >= 0);
  }
  CHECK(worst < 1.0);
}

TEST_CASE("matching cap limits collected optima") {
  Graph g = Graph::from_strings({"A", "A", "A", "A"}, {});
  ExactOptions o;
  o.matching_cap = 3;
  ExactResult r = exact_ged(canonicalize_pair(g, g), o);
  CHECK(r.ged == 0);
  CHECK(r.optimal_matchings.size() == 3);
}
