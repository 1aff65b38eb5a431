#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "entdag/acyclic.hpp"
#include "entdag/loss.hpp"
#include "entdag/types.hpp"

namespace entdag {

struct SolverConfig {
  double omega = 0.3;           // edge threshold on |w_est|
  double h_tol = 1e-8;          // epsilon: acyclicity tolerance
  double progress_rate = 0.25;  // c: required shrink factor of h per outer step
  double alpha0 = 0.0;          // initial Lagrange multiplier
  double rho0 = 1.0;            // initial penalty weight
  double rho_factor = 10.0;     // penalty escalation factor
  double rho_max = 1e16;        // penalty ceiling; reaching it stops the loop
  double lambda1 = 0.1;         // l1 strength
  // Ridge on MLP layer weights (biases excluded); the linear solver ignores
  // it. Without it the group penalty sees only first-layer norms, so the
  // optimizer can shrink them toward zero and let the second layer blow up
  // to compensate, erasing the induced adjacency.
  double lambda2 = 0.01;
  int max_outer_iters = 100;
  int lbfgs_memory = 10;
  double lbfgs_tol = 1e-8;      // projected-gradient infinity-norm stop
  int lbfgs_max_iters = 500;
  std::uint64_t seed = 123;
  AcyclicityKernel kernel = AcyclicityKernel::expm;
  ResidualEntropyMode entropy_mode = ResidualEntropyMode::standardized;
  // Rescale every data column to unit variance before solving. Off by
  // default: scale differences are exactly what separates the two losses.
  bool standardize_columns = false;

  void validate() const;
};

struct OuterIterRecord {
  int iter = 0;          // 1-based outer iteration
  double loss_value = 0.0;  // data-fit term at the iterate
  double h_value = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  int inner_iterations = 0;
};

struct SolveReport {
  WeightMatrix w_est = WeightMatrix::zero(1);
  Digraph est_graph;
  std::vector<OuterIterRecord> trace;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

// Smooth objective over a flat parameter vector: fills `grad` (resized by
// the callee) and returns the value.
using ObjectiveFn = std::function<double(const Vector& v, Vector& grad)>;

struct InnerResult {
  Vector v;
  int iterations = 0;
  bool line_search_failed = false;
  double projected_grad_norm = 0.0;
};

// Limited-memory BFGS with optional nonnegativity bounds: two-loop
// recursion, gradient projection at the active bounds, backtracking Armijo
// line search. On line-search failure returns the best iterate found so far
// with the flag set.
InnerResult inner_minimize(const ObjectiveFn& objective, Vector v0,
                           bool nonnegative, const SolverConfig& cfg);

// Augmented-Lagrangian DAG search: min F(W) + lambda1*||W||_1 subject to
// h(W) = 0, with the l1 term handled by splitting W into nonnegative halves
// and the diagonal excluded from the parameter vector.
SolveReport solve(const Dataset& x, LossKind loss_kind, const SolverConfig& cfg);

}  // namespace entdag
