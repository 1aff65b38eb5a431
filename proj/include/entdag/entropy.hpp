#pragma once

#include "entdag/types.hpp"

namespace entdag {

// Constants of the maximum-entropy approximation
//   H(X) ~= H(nu) - [k1 (E{G1(X)})^2 + k2 (E{G2(X)} - E{G2(nu)})^2]
// with G1(x) = x exp(-x^2/2), G2(x) = exp(-x^2/2) and nu standard normal.
struct EntropyConstants {
  double k1;     // 36 / (8 sqrt(3) - 9)
  double k2;     // 24 / (16 sqrt(3) - 27)
  double g2_nu;  // E{G2(nu)} = sqrt(1/2)
  double h_nu;   // H(nu) = (1 + log(2 pi)) / 2

  static const EntropyConstants& get();
};

// Residual scale below which entropy of a column is treated as degenerate.
inline constexpr double kSigmaFloor = 1e-8;

// Exact differential entropy of N(0, sigma^2); test oracle.
double gaussian_entropy(double sigma);

// Estimator on an already zero-mean unit-variance sample. Never exceeds
// H(nu): the bracketed correction is a sum of squares.
double entropy_standardized(const Vector& x);

// Componentwise derivative of entropy_standardized w.r.t. each sample.
Vector entropy_gradient_standardized(const Vector& x);

// Standardizes first, then adds log(sigma_hat) back: H(aX) = H(X) + log a.
// sigma_hat uses divisor m, matching the estimator's 1/m expectations.
double standardize_entropy(const Vector& x);

// Entropy of a raw residual column together with its gradient w.r.t. the
// raw entries. The standardized mode chain-rules through the sample mean
// and sigma_hat (the log sigma_hat term included); the raw mode applies
// the estimator to the column as-is.
struct ColumnEntropy {
  double value = 0.0;
  Vector d_raw;  // dH / d r_k
  double sigma = 0.0;
};

ColumnEntropy column_entropy_standardized(const Vector& raw);
ColumnEntropy column_entropy_raw(const Vector& raw);

}  // namespace entdag
