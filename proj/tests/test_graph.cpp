#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/graph.hpp"
#include "oracles.hpp"

using namespace gedot;

namespace {

Graph triangle() { return Graph::from_strings({"A", "A", "A"}, {{0, 1}, {1, 2}, {0, 2}}); }

Graph path3() { return Graph::from_strings({"A", "B", "C"}, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_CASE("graph construction normalizes and sorts edges") {
  Graph g = Graph::from_strings({"A", "B", "C"}, {{2, 1}, {1, 0}});
  REQUIRE(g.edge_count() == 2);
  CHECK(g.edges()[0] == Edge{0, 1});
  CHECK(g.edges()[1] == Edge{1, 2});
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.degree(1) == 2);
}

TEST_CASE("graph validation rejects non-simple input") {
  CHECK_THROWS_AS(Graph::from_strings({"A", "B"}, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_strings({"A", "B"}, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph::from_strings({"A", "B"}, {{0, 2}}), Error);
  try {
    Graph::from_strings({"A", "B"}, {{0, 5}});
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("(0,5)") != std::string::npos);
  }
}

TEST_CASE("canonicalize_pair orders by node count") {
  Graph g = path3();
  Graph h = Graph::from_strings({"A", "B", "D", "E"}, {{0, 1}, {2, 3}});
  GraphPair p = canonicalize_pair(g, h);
  CHECK_FALSE(p.swapped);
  CHECK(p.g1 == g);
  GraphPair q = canonicalize_pair(h, g);
  CHECK(q.swapped);
  CHECK(q.g1 == g);
  CHECK(q.g2 == h);
  GraphPair r = canonicalize_pair(g, g);
  CHECK_FALSE(r.swapped);
  GraphPair again = canonicalize_pair(q.g1, q.g2);
  CHECK(again.g1 == q.g1);
  CHECK(again.g2 == q.g2);
  CHECK_FALSE(again.swapped);
}

TEST_CASE("pad_with_dummies appends isolated dummy nodes") {
  Graph padded = pad_with_dummies(triangle(), 4);
  REQUIRE(padded.node_count() == 4);
  CHECK(padded.label(3).is_dummy());
  CHECK(padded.degree(3) == 0);
  CHECK(padded.edge_count() == 3);
  CHECK(pad_with_dummies(triangle(), 3) == triangle());
  Graph empty = pad_with_dummies(Graph(), 2);
  CHECK(empty.node_count() == 2);
  CHECK(empty.label(0).is_dummy());
  CHECK(empty.real_node_count() == 0);
  CHECK_THROWS_AS(pad_with_dummies(triangle(), 2), Error);
}

TEST_CASE("dummy labels match nothing") {
  CHECK_FALSE(labels_match(Label::dummy(), Label::dummy()));
  CHECK_FALSE(labels_match(Label::dummy(), Label("A")));
  CHECK(labels_match(Label("A"), Label("A")));
}

TEST_CASE("label mismatch matrix") {
  SUBCASE("identical single-label graphs give zeros") {
    Graph g = Graph::from_strings({"_", "_", "_"}, {{0, 1}});
    CHECK(label_mismatch_matrix(canonicalize_pair(g, g)).isZero());
  }
  SUBCASE("direct rule") {
    GraphPair p = canonicalize_pair(Graph::from_strings({"A", "B"}, {}), Graph::from_strings({"A", "C"}, {}));
    Matrix m = label_mismatch_matrix(p);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(0, 1) == 1.0);
  }
  SUBCASE("dummy row is all ones") {
    GraphPair p = canonicalize_pair(path3(), Graph::from_strings({"A", "B", "D", "E"}, {{0, 1}, {2, 3}}));
    Matrix m = label_mismatch_matrix(p);
    REQUIRE(m.rows() == 4);
    CHECK(m.row(3).minCoeff() == 1.0);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(2, 2) == 1.0);
  }
  SUBCASE("invariant under edge order") {
    Graph a = Graph::from_strings({"A", "B", "C"}, {{0, 1}, {1, 2}});
    Graph b = Graph::from_strings({"A", "B", "C"}, {{2, 1}, {0, 1}});
    Graph h = Graph::from_strings({"C", "B", "A", "A"}, {{0, 3}});
    CHECK(label_mismatch_matrix(canonicalize_pair(a, h)) == label_mismatch_matrix(canonicalize_pair(b, h)));
  }
}

TEST_CASE("adjacency") {
  Matrix t = adjacency(triangle());
  CHECK(t == (Matrix::Ones(3, 3) - Matrix::Identity(3, 3)));
  CHECK(adjacency(Graph::from_strings({"A", "A"}, {})).isZero());
  Matrix p = adjacency(path3());
  CHECK(p(0, 1) == 1.0);
  CHECK(p(1, 2) == 1.0);
  CHECK(p(0, 2) == 0.0);
  CHECK(p == p.transpose());
}

TEST_CASE("padding commutes with adjacency on random graphs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    Graph g = oracle::random_graph(rng, rng() % 8, 0.4, {"A", "B"});
    const std::size_t target = g.node_count() + rng() % 4;
    CHECK(adjacency(pad_with_dummies(g, target)) == adjacency(g, target));
  }
}
