#include "entdag/types.hpp"

#include <stdexcept>

#include "entdag/metrics.hpp"

namespace entdag {

Dataset::Dataset(Matrix values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (values_.rows() < 2 || values_.cols() < 1) {
    throw std::invalid_argument("Dataset requires m >= 2 and d >= 1");
  }
  if (names_.size() != static_cast<std::size_t>(values_.cols())) {
    throw std::invalid_argument("Dataset needs one name per column");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("Dataset entries must be finite");
  }
}

WeightMatrix::WeightMatrix(Matrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) {
    throw std::invalid_argument("WeightMatrix must be square");
  }
  if (!w_.allFinite()) {
    throw std::invalid_argument("WeightMatrix entries must be finite");
  }
}

std::vector<std::pair<int, int>> Digraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < adjacency.rows(); ++i) {
    for (int j = 0; j < adjacency.cols(); ++j) {
      if (adjacency(i, j) != 0) out.emplace_back(i, j);
    }
  }
  return out;
}

Digraph Digraph::from_edges(int d, const std::vector<std::pair<int, int>>& edges) {
  BinMatrix adj = BinMatrix::Zero(d, d);
  for (const auto& [from, to] : edges) {
    if (from < 0 || from >= d || to < 0 || to >= d) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    adj(from, to) = 1;
  }
  return Digraph{std::move(adj)};
}

Dag::Dag(BinMatrix adjacency) : graph_{std::move(adjacency)} {
  const auto& adj = graph_.adjacency;
  if (adj.rows() != adj.cols()) {
    throw std::invalid_argument("Dag adjacency must be square");
  }
  for (int i = 0; i < adj.rows(); ++i) {
    if (adj(i, i) != 0) throw std::invalid_argument("Dag has a self-loop");
  }
  if (!is_acyclic(adj)) {
    throw std::invalid_argument("Dag adjacency contains a cycle");
  }
}

}  // namespace entdag
