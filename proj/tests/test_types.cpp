#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "entdag/types.hpp"

using namespace entdag;

TEST_CASE("dataset validates shape, names, and finiteness") {
  Matrix ok(3, 2);
  ok << 1, 2, 3, 4, 5, 6;
  CHECK_NOTHROW(Dataset(ok, {"a", "b"}));

  CHECK_THROWS_AS(Dataset(ok, {"a"}), std::invalid_argument);

  Matrix one_row(1, 2);
  one_row << 1, 2;
  CHECK_THROWS_AS(Dataset(one_row, {"a", "b"}), std::invalid_argument);

  Matrix bad = ok;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Dataset(bad, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("weight matrix must be square and finite") {
  CHECK_NOTHROW(WeightMatrix(Matrix::Zero(3, 3)));
  CHECK_THROWS_AS(WeightMatrix(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix inf_entry = Matrix::Zero(2, 2);
  inf_entry(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(WeightMatrix{inf_entry}, std::invalid_argument);
}

TEST_CASE("digraph edge list round-trips through from_edges") {
  const Digraph g = Digraph::from_edges(3, {{0, 1}, {2, 0}});
  CHECK(g.edge_count() == 2);
  const auto edges = g.edges();
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == std::pair<int, int>{0, 1});
  CHECK(edges[1] == std::pair<int, int>{2, 0});

  const Digraph back = Digraph::from_edges(g.d(), g.edges());
  CHECK(back.adjacency == g.adjacency);
}

TEST_CASE("dag construction rejects cycles and self-loops") {
  BinMatrix chain = BinMatrix::Zero(3, 3);
  chain(0, 1) = 1;
  chain(1, 2) = 1;
  CHECK_NOTHROW(Dag{chain});

  BinMatrix cyc = chain;
  cyc(2, 0) = 1;
  CHECK_THROWS_AS(Dag{cyc}, std::invalid_argument);

  BinMatrix self = BinMatrix::Zero(2, 2);
  self(0, 0) = 1;
  CHECK_THROWS_AS(Dag{self}, std::invalid_argument);
}
