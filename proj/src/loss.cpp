#include "entdag/loss.hpp"

#include <stdexcept>

#include "entdag/entropy.hpp"

namespace entdag {

namespace {

void check_dims(const Dataset& x, const WeightMatrix& w) {
  if (w.d() != x.d())
    throw std::invalid_argument("loss: weight matrix is " +
                                std::to_string(w.d()) + "x" +
                                std::to_string(w.d()) + " but data has " +
                                std::to_string(x.d()) + " columns");
}

}  // namespace

const char* to_string(LossKind k) {
  return k == LossKind::least_square ? "ls" : "entropy";
}

const char* to_string(ResidualEntropyMode m) {
  return m == ResidualEntropyMode::standardized ? "standardized" : "raw";
}

LossKind loss_kind_from_string(const std::string& s) {
  if (s == "ls" || s == "least_square") return LossKind::least_square;
  if (s == "entropy") return LossKind::entropy;
  throw std::invalid_argument("unknown loss: " + s);
}

ResidualEntropyMode entropy_mode_from_string(const std::string& s) {
  if (s == "standardized") return ResidualEntropyMode::standardized;
  if (s == "raw") return ResidualEntropyMode::raw;
  throw std::invalid_argument("unknown entropy mode: " + s);
}

LossEval least_square(const Dataset& x, const WeightMatrix& w) {
  check_dims(x, w);
  const Matrix& data = x.values();
  const double m = static_cast<double>(x.m());

  LossEval out;
  out.residuals = data - data * w.values();
  out.value = 0.5 / m * out.residuals.squaredNorm();
  out.gradient = -(1.0 / m) * (data.transpose() * out.residuals);
  return out;
}

LossEval entropy_loss(const Dataset& x, const WeightMatrix& w,
                      ResidualEntropyMode mode) {
  check_dims(x, w);
  const Matrix& data = x.values();
  const int d = x.d();

  LossEval out;
  out.residuals = data - data * w.values();
  out.gradient = Matrix::Zero(d, d);
  out.value = 0.0;
  for (int j = 0; j < d; ++j) {
    ColumnEntropy col;
    try {
      col = mode == ResidualEntropyMode::standardized
                ? column_entropy_standardized(out.residuals.col(j))
                : column_entropy_raw(out.residuals.col(j));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("entropy loss: column '" + x.names()[j] +
                               "' (index " + std::to_string(j) +
                               "): " + e.what());
    }
    out.value += col.value;
    // r_j = x_j - X w_j, so dH_j/dW[i][j] = -x_i . dH_j/dr_j.
    out.gradient.col(j) = -(data.transpose() * col.d_raw);
  }
  return out;
}

LossEval evaluate_loss(LossKind kind, const Dataset& x, const WeightMatrix& w,
                       ResidualEntropyMode mode) {
  return kind == LossKind::least_square ? least_square(x, w)
                                        : entropy_loss(x, w, mode);
}

std::pair<Matrix, Matrix> l1_subgradient_split(const WeightMatrix& w) {
  const Matrix& v = w.values();
  Matrix plus = v.cwiseMax(0.0);
  Matrix minus = (-v).cwiseMax(0.0);
  return {std::move(plus), std::move(minus)};
}

}  // namespace entdag
