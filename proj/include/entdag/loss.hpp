#pragma once

#include <string>
#include <utility>

#include "entdag/types.hpp"

namespace entdag {

enum class LossKind { least_square, entropy };

// How residual entropy is computed: `standardized` rescales each residual
// column to unit variance and adds log(sigma_hat) back (the scale-consistent
// form); `raw` feeds residuals to the estimator as-is, for comparison.
enum class ResidualEntropyMode { standardized, raw };

const char* to_string(LossKind k);
const char* to_string(ResidualEntropyMode m);
LossKind loss_kind_from_string(const std::string& s);
ResidualEntropyMode entropy_mode_from_string(const std::string& s);

struct LossEval {
  double value = 0.0;
  Matrix gradient;   // d x d, d/dW of value
  Matrix residuals;  // m x d, X - XW
};

// (1/2m) * ||X - XW||_F^2 with gradient -(1/m) X^T (X - XW).
LossEval least_square(const Dataset& x, const WeightMatrix& w);

// Sum over columns of the residual differential-entropy estimate. Column j
// of the gradient is -X^T dH_j/dr_j; other columns of W do not enter H_j.
LossEval entropy_loss(const Dataset& x, const WeightMatrix& w,
                      ResidualEntropyMode mode = ResidualEntropyMode::standardized);

LossEval evaluate_loss(LossKind kind, const Dataset& x, const WeightMatrix& w,
                       ResidualEntropyMode mode = ResidualEntropyMode::standardized);

// Splits W into nonnegative halves with W = plus - minus and
// ||W||_1 = sum(plus) + sum(minus); positives land in plus.
std::pair<Matrix, Matrix> l1_subgradient_split(const WeightMatrix& w);

}  // namespace entdag
