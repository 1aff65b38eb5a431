#include "entdag/solver.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entdag/entropy.hpp"
#include "entdag/metrics.hpp"

namespace entdag {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr int kMaxProbes = 40;
// Curvature pairs with s.y below this (relative) floor would destabilize
// the two-loop recursion and are skipped.
constexpr double kCurvatureFloor = 1e-10;

struct CurvaturePair {
  Vector s;
  Vector y;
  double inv_sy = 0.0;
};

// Two-loop recursion: returns H*g for the implicit inverse-Hessian H.
Vector apply_inverse_hessian(const Vector& g,
                             const std::deque<CurvaturePair>& hist) {
  Vector q = g;
  std::vector<double> coef(hist.size());
  for (int i = static_cast<int>(hist.size()) - 1; i >= 0; --i) {
    coef[static_cast<std::size_t>(i)] =
        hist[static_cast<std::size_t>(i)].inv_sy *
        hist[static_cast<std::size_t>(i)].s.dot(q);
    q -= coef[static_cast<std::size_t>(i)] * hist[static_cast<std::size_t>(i)].y;
  }
  if (!hist.empty()) {
    const CurvaturePair& last = hist.back();
    q *= last.s.dot(last.y) / last.y.dot(last.y);
  }
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double beta = hist[i].inv_sy * hist[i].y.dot(q);
    q += (coef[i] - beta) * hist[i].s;
  }
  return q;
}

// Gradient with the components frozen by the active lower bounds zeroed.
Vector project_gradient(const Vector& v, const Vector& g, bool nonnegative) {
  if (!nonnegative) return g;
  Vector pg = g;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] <= 0.0 && g[i] > 0.0) pg[i] = 0.0;
  return pg;
}

int offdiag_count(int d) { return d * (d - 1); }

// v holds the positive half then the negative half, column-major over
// off-diagonal entries; the diagonal is structurally zero.
Matrix unpack_weights(const Vector& v, int d) {
  const int n = offdiag_count(d);
  Matrix w(d, d);
  int k = 0;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (i == j) {
        w(i, j) = 0.0;
        continue;
      }
      w(i, j) = v[k] - v[n + k];
      ++k;
    }
  return w;
}

Vector pack_gradient(const Matrix& gw, double lambda1, int d) {
  const int n = offdiag_count(d);
  Vector g(2 * n);
  int k = 0;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (i == j) continue;
      g[k] = gw(i, j) + lambda1;
      g[n + k] = -gw(i, j) + lambda1;
      ++k;
    }
  return g;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(progress_rate > 0.0 && progress_rate < 1.0))
    throw std::invalid_argument("solver config: progress_rate must lie in (0,1)");
  if (!(rho_factor > 1.0))
    throw std::invalid_argument("solver config: rho_factor must exceed 1");
  if (!(h_tol > 0.0) || !(lbfgs_tol > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("solver config: tolerances must be positive");
  if (!(rho0 > 0.0) || !(rho_max > rho0))
    throw std::invalid_argument("solver config: need 0 < rho0 < rho_max");
  if (lambda1 < 0.0)
    throw std::invalid_argument("solver config: lambda1 must be nonnegative");
  if (lambda2 < 0.0)
    throw std::invalid_argument("solver config: lambda2 must be nonnegative");
  if (max_outer_iters < 1 || lbfgs_memory < 1 || lbfgs_max_iters < 1)
    throw std::invalid_argument("solver config: iteration limits must be >= 1");
}

InnerResult inner_minimize(const ObjectiveFn& objective, Vector v0,
                           bool nonnegative, const SolverConfig& cfg) {
  Vector v = std::move(v0);
  if (nonnegative) v = v.cwiseMax(0.0);

  Vector g;
  double f = objective(v, g);
  if (!std::isfinite(f) || !g.allFinite())
    throw std::runtime_error("inner solver: objective not finite at the starting point");

  std::deque<CurvaturePair> hist;
  InnerResult out;

  // Backtracking Armijo along `dir` with projection onto the bounds.
  // Returns true and fills (v_new, g_new, f_new) on acceptance.
  Vector v_new, g_new;
  double f_new = 0.0;
  const auto line_search = [&](const Vector& dir, double t) -> bool {
    for (int probe = 0; probe < kMaxProbes; ++probe, t *= 0.5) {
      v_new = v + t * dir;
      if (nonnegative) v_new = v_new.cwiseMax(0.0);
      const Vector delta = v_new - v;
      if (delta.isZero(0.0)) return false;  // step underflow
      f_new = objective(v_new, g_new);
      if (!std::isfinite(f_new) || !g_new.allFinite()) continue;
      if (f_new <= f + kArmijoC1 * g.dot(delta)) return true;
    }
    return false;
  };

  for (int it = 0; it < cfg.lbfgs_max_iters; ++it) {
    Vector pg = project_gradient(v, g, nonnegative);
    out.projected_grad_norm = pg.lpNorm<Eigen::Infinity>();
    if (out.projected_grad_norm <= cfg.lbfgs_tol) break;
    out.iterations = it + 1;

    Vector dir = -apply_inverse_hessian(pg, hist);
    if (nonnegative)
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] <= 0.0 && g[i] > 0.0) dir[i] = 0.0;
    bool steepest = hist.empty();
    if (!(dir.dot(pg) < 0.0)) {  // not a descent direction; drop the memory
      dir = -pg;
      hist.clear();
      steepest = true;
    }

    const double t0 =
        steepest ? std::min(1.0, 1.0 / std::max(1.0, out.projected_grad_norm))
                 : 1.0;
    bool accepted = line_search(dir, t0);
    if (!accepted && !steepest) {
      // The quasi-Newton direction stalled; retry once from scratch.
      hist.clear();
      dir = -pg;
      accepted = line_search(
          dir, std::min(1.0, 1.0 / std::max(1.0, out.projected_grad_norm)));
    }
    if (!accepted) {
      out.line_search_failed = true;
      break;
    }

    const Vector s = v_new - v;
    const Vector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > kCurvatureFloor * s.norm() * y.norm()) {
      hist.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(hist.size()) > cfg.lbfgs_memory) hist.pop_front();
    }
    v = v_new;
    g = g_new;
    f = f_new;
  }

  out.projected_grad_norm =
      project_gradient(v, g, nonnegative).lpNorm<Eigen::Infinity>();
  out.v = std::move(v);
  return out;
}

SolveReport solve(const Dataset& x, LossKind loss_kind, const SolverConfig& cfg) {
  cfg.validate();
  if (x.d() < 2)
    throw std::invalid_argument("solve: need at least two variables");
  const auto t_start = std::chrono::steady_clock::now();

  const int d = x.d();
  const int m = x.m();

  // Entropy runs on centered columns (the estimator is shift-invariant, so
  // this only conditions the numbers); unit-variance scaling is opt-in.
  Matrix values = x.values();
  if (loss_kind == LossKind::entropy || cfg.standardize_columns)
    for (int j = 0; j < d; ++j) values.col(j).array() -= values.col(j).mean();
  if (cfg.standardize_columns) {
    for (int j = 0; j < d; ++j) {
      const double sigma = std::sqrt(values.col(j).squaredNorm() / m);
      if (sigma <= kSigmaFloor)
        throw std::runtime_error("solve: data column '" + x.names()[j] +
                                 "' is constant; cannot standardize");
      values.col(j) /= sigma;
    }
  }
  const Dataset xs(std::move(values), x.names());

  const int n = offdiag_count(d);
  Vector v = Vector::Zero(2 * n);
  double rho = cfg.rho0;
  double alpha = cfg.alpha0;
  double h_prev = 0.0;  // h at the zero initializer
  double h_new = 0.0;

  SolveReport report;
  for (int outer = 1; outer <= cfg.max_outer_iters; ++outer) {
    const ObjectiveFn objective = [&](const Vector& vv, Vector& grad) -> double {
      const WeightMatrix w(unpack_weights(vv, d));
      const LossEval loss = evaluate_loss(loss_kind, xs, w, cfg.entropy_mode);
      const AcyclicityEval acyc = h_eval(w.values(), cfg.kernel);
      const Matrix gw =
          loss.gradient + (rho * acyc.value + alpha) * acyc.gradient;
      grad = pack_gradient(gw, cfg.lambda1, d);
      return loss.value + cfg.lambda1 * vv.sum() +
             0.5 * rho * acyc.value * acyc.value + alpha * acyc.value;
    };

    InnerResult inner;
    double loss_at_iterate = 0.0;
    try {
      inner = inner_minimize(objective, v, /*nonnegative=*/true, cfg);
      v = std::move(inner.v);
      const WeightMatrix w(unpack_weights(v, d));
      loss_at_iterate = evaluate_loss(loss_kind, xs, w, cfg.entropy_mode).value;
      h_new = h_value(w.values(), cfg.kernel);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("solve: outer iteration " +
                               std::to_string(outer) + ": " + e.what());
    }
    report.trace.push_back(
        {outer, loss_at_iterate, h_new, rho, alpha, inner.iterations});

    if (h_new > cfg.progress_rate * h_prev)
      rho = std::min(rho * cfg.rho_factor, cfg.rho_max);
    else
      alpha += rho * h_new;
    h_prev = h_new;

    if (h_new <= cfg.h_tol) break;
    if (rho >= cfg.rho_max) break;
  }

  report.converged = h_new <= cfg.h_tol;
  report.w_est = WeightMatrix(unpack_weights(v, d));
  report.est_graph = threshold(report.w_est, cfg.omega);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace entdag
