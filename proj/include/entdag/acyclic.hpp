#pragma once

#include "entdag/types.hpp"

namespace entdag {

// Backend for the smooth acyclicity function.
//   expm:       h(W) = tr(exp(W o W)) - d        (reference characterization)
//   polynomial: h(W) = tr((I + W o W / d)^d) - d (cross-check variant)
enum class AcyclicityKernel { expm, polynomial };

struct AcyclicityEval {
  double value = 0.0;
  Matrix gradient;
};

// Matrix exponential by scaling-and-squaring over a fixed-order truncated
// Taylor kernel. Accurate far beyond solver tolerance for the entry
// magnitudes seen here (nonnegative W o W, d <= ~100).
Matrix matrix_exponential(const Matrix& a);

// h(W); zero exactly on acyclic supports, strictly positive otherwise.
double h_value(const Matrix& w, AcyclicityKernel kernel = AcyclicityKernel::expm);

// grad h = exp(W o W)^T o 2W (polynomial backend analogous).
Matrix h_gradient(const Matrix& w, AcyclicityKernel kernel = AcyclicityKernel::expm);

// Value and gradient sharing one exponential evaluation.
AcyclicityEval h_eval(const Matrix& w, AcyclicityKernel kernel = AcyclicityKernel::expm);

}  // namespace entdag
