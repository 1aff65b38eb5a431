#pragma once

#include <cstdint>
#include <vector>

#include "entdag/loss.hpp"
#include "entdag/solver.hpp"
#include "entdag/types.hpp"

namespace entdag {

// One one-hidden-layer network per target variable: the prediction for
// column j is second[j] . sigmoid(first[j] * row + hidden_bias[j]) +
// output_bias[j], with column j of first[j] structurally zero (no
// self-loop). The first-layer column norms induce a nonnegative adjacency.
struct MlpModel {
  int d = 0;
  int hidden_width = 0;
  std::vector<Matrix> first;        // per target: hidden_width x d
  std::vector<Vector> hidden_bias;  // per target: hidden_width
  std::vector<Vector> second;       // per target: hidden_width
  Vector output_bias;               // one per target

  // Draws every free weight uniformly from [-0.1, 0.1]. The draws depend
  // only on the hidden-unit index and are shared across targets and input
  // columns: hidden-unit symmetry is broken, while relabeling the variables
  // still permutes the objective exactly.
  static MlpModel init(int d, int hidden_width, std::uint64_t seed);

  void validate() const;

  // Flat parameter order: per target j, first[j] column-major (with the
  // structural zeros kept in place), hidden_bias[j], second[j],
  // output_bias[j].
  int parameter_count() const { return d * (hidden_width * d + 2 * hidden_width + 1); }
  Vector pack() const;
  static MlpModel unpack(const Vector& v, int d, int hidden_width);
};

// Entry (i, j) = Euclidean norm of first[j]'s column i: the strength with
// which variable i enters the prediction of variable j. Diagonal is zero.
Matrix induced_adjacency(const MlpModel& model);

struct MlpForward {
  Matrix predictions;
  Matrix residuals;  // data - predictions
};

MlpForward mlp_forward(const MlpModel& model, const Dataset& x);

struct MlpLossEval {
  double value = 0.0;     // data fit + lambda1 * sum of induced entries
  double data_fit = 0.0;  // the loss term alone
  Vector gradient;        // w.r.t. pack() order; structural zeros stay zero
};

// Sum of per-column losses on the residuals plus the group-lasso penalty
// lambda1 * sum of first-layer column norms. Gradients by reverse mode; an
// exactly-zero column contributes the norm subgradient 0.
MlpLossEval mlp_loss_and_grad(
    const MlpModel& model, const Dataset& x, LossKind loss_kind,
    double lambda1,
    ResidualEntropyMode mode = ResidualEntropyMode::standardized);

// Augmented-Lagrangian search with the acyclicity function evaluated on the
// induced adjacency and back-propagated to the first-layer weights.
// w_est holds the induced adjacency (nonnegative); est_graph its
// omega-threshold.
SolveReport mlp_solve(const Dataset& x, LossKind loss_kind,
                      const SolverConfig& cfg, int hidden_width = 10);

}  // namespace entdag
