#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace entdag {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BinMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// m x d design matrix with named columns. Immutable after construction.
class Dataset {
 public:
  Dataset(Matrix values, std::vector<std::string> names);

  const Matrix& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }
  int m() const { return static_cast<int>(values_.rows()); }
  int d() const { return static_cast<int>(values_.cols()); }

 private:
  Matrix values_;
  std::vector<std::string> names_;
};

// Weighted adjacency: w(i, j) is the coefficient of edge i -> j.
class WeightMatrix {
 public:
  explicit WeightMatrix(Matrix w);
  static WeightMatrix zero(int d) { return WeightMatrix(Matrix::Zero(d, d)); }

  const Matrix& values() const { return w_; }
  int d() const { return static_cast<int>(w_.rows()); }

 private:
  Matrix w_;
};

// Directed graph as a 0/1 adjacency matrix; may contain cycles.
struct Digraph {
  BinMatrix adjacency;

  int d() const { return static_cast<int>(adjacency.rows()); }
  int edge_count() const { return adjacency.sum(); }
  std::vector<std::pair<int, int>> edges() const;
  static Digraph from_edges(int d, const std::vector<std::pair<int, int>>& edges);
};

// Acyclicity-checked directed graph. Construction fails on cycles or
// nonzero diagonal.
class Dag {
 public:
  Dag() = default;  // zero-variable graph; placeholder before assignment
  explicit Dag(BinMatrix adjacency);
  static Dag empty(int d) { return Dag(BinMatrix::Zero(d, d)); }

  const BinMatrix& adjacency() const { return graph_.adjacency; }
  const Digraph& graph() const { return graph_; }
  int d() const { return graph_.d(); }
  int edge_count() const { return graph_.edge_count(); }

 private:
  Digraph graph_;
};

struct GraphMetrics {
  int shd = 0;
  double fdr = 0.0;
  double tpr = 0.0;
  int predicted_edges = 0;
  int true_edges = 0;
};

}  // namespace entdag
