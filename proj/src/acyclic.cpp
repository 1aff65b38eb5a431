#include "entdag/acyclic.hpp"

#include <cmath>
#include <stdexcept>

namespace entdag {

namespace {

constexpr int kTaylorOrder = 18;

void check_square_finite(const Matrix& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("h(W): matrix must be square");
  if (!w.allFinite()) throw std::invalid_argument("h(W): non-finite entries");
}

// exp of the scaled matrix via Horner evaluation of the degree-18 Taylor
// polynomial, then repeated squaring. The scaled infinity norm is kept at
// or below 1, where the order-18 truncation error is ~1e-17.
Matrix expm_taylor_ss(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 1.0) {
    squarings = static_cast<int>(std::ceil(std::log2(norm)));
  }
  const Matrix s = a / std::ldexp(1.0, squarings);

  Matrix e = Matrix::Identity(d, d);
  for (int k = kTaylorOrder; k >= 1; --k) {
    e = Matrix::Identity(d, d) + (s * e) / k;
  }
  for (int i = 0; i < squarings; ++i) e = e * e;
  return e;
}

// (I + A/d)^(d-1) and its trace-completing final multiply, by repeated
// multiplication; d is small enough that this stays cheap and exact.
Matrix poly_power(const Matrix& base, int exponent) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  Matrix acc = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * acc;
    e >>= 1;
    if (e > 0) acc = acc * acc;
  }
  return result;
}

}  // namespace

Matrix matrix_exponential(const Matrix& a) {
  check_square_finite(a);
  return expm_taylor_ss(a);
}

AcyclicityEval h_eval(const Matrix& w, AcyclicityKernel kernel) {
  check_square_finite(w);
  const int d = static_cast<int>(w.rows());
  const Matrix a = w.cwiseProduct(w);

  AcyclicityEval out;
  if (kernel == AcyclicityKernel::expm) {
    const Matrix e = expm_taylor_ss(a);
    out.value = e.trace() - d;
    out.gradient = e.transpose().cwiseProduct(2.0 * w);
  } else {
    const Matrix base = Matrix::Identity(d, d) + a / d;
    const Matrix p = poly_power(base, d - 1);
    out.value = (p * base).trace() - d;
    out.gradient = p.transpose().cwiseProduct(2.0 * w);
  }
  // Clamp the tiny negative values the trace subtraction can leave behind.
  if (out.value < 0.0 && out.value > -1e-12) out.value = 0.0;
  return out;
}

double h_value(const Matrix& w, AcyclicityKernel kernel) {
  return h_eval(w, kernel).value;
}

Matrix h_gradient(const Matrix& w, AcyclicityKernel kernel) {
  return h_eval(w, kernel).gradient;
}

}  // namespace entdag
