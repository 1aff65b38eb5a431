#include "entdag/nonlinear.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "entdag/acyclic.hpp"
#include "entdag/entropy.hpp"
#include "entdag/metrics.hpp"
#include "entdag/rng.hpp"

namespace entdag {
namespace {

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

// Adds coef * d||first[j] col i|| / d(col i) for every column, skipping
// exactly-zero columns (subgradient 0 there). `scale(i)` supplies the
// per-column coefficient.
template <typename ScaleFn>
void add_column_norm_gradient(const Matrix& first_j, ScaleFn scale,
                              Eigen::Ref<Matrix> grad_j) {
  for (int i = 0; i < first_j.cols(); ++i) {
    const double norm = first_j.col(i).norm();
    if (norm > 0.0) grad_j.col(i) += (scale(i) / norm) * first_j.col(i);
  }
}

}  // namespace

MlpModel MlpModel::init(int d, int hidden_width, std::uint64_t seed) {
  if (d < 1 || hidden_width < 1)
    throw std::invalid_argument("mlp: d and hidden_width must be positive");
  Rng rng(derive_seed(seed, 17));
  Vector row_weight(hidden_width), bias(hidden_width), out_weight(hidden_width);
  for (int r = 0; r < hidden_width; ++r) row_weight[r] = rng.uniform(-0.1, 0.1);
  for (int r = 0; r < hidden_width; ++r) bias[r] = rng.uniform(-0.1, 0.1);
  for (int r = 0; r < hidden_width; ++r) out_weight[r] = rng.uniform(-0.1, 0.1);
  const double out_bias = rng.uniform(-0.1, 0.1);

  MlpModel model;
  model.d = d;
  model.hidden_width = hidden_width;
  model.first.assign(static_cast<std::size_t>(d),
                     row_weight.replicate(1, d).eval());
  model.hidden_bias.assign(static_cast<std::size_t>(d), bias);
  model.second.assign(static_cast<std::size_t>(d), out_weight);
  model.output_bias = Vector::Constant(d, out_bias);
  for (int j = 0; j < d; ++j) model.first[static_cast<std::size_t>(j)].col(j).setZero();
  return model;
}

void MlpModel::validate() const {
  if (d < 1 || hidden_width < 1)
    throw std::invalid_argument("mlp: d and hidden_width must be positive");
  if (static_cast<int>(first.size()) != d ||
      static_cast<int>(hidden_bias.size()) != d ||
      static_cast<int>(second.size()) != d || output_bias.size() != d)
    throw std::invalid_argument("mlp: per-target containers must have d entries");
  for (int j = 0; j < d; ++j) {
    const Matrix& a = first[static_cast<std::size_t>(j)];
    if (a.rows() != hidden_width || a.cols() != d)
      throw std::invalid_argument("mlp: first layer must be hidden_width x d");
    if (!a.col(j).isZero(0.0))
      throw std::invalid_argument("mlp: first-layer column " +
                                  std::to_string(j) +
                                  " of target " + std::to_string(j) +
                                  " must be structurally zero");
    if (hidden_bias[static_cast<std::size_t>(j)].size() != hidden_width ||
        second[static_cast<std::size_t>(j)].size() != hidden_width)
      throw std::invalid_argument("mlp: layer vectors must have hidden_width entries");
  }
}

Vector MlpModel::pack() const {
  const int h = hidden_width;
  Vector v(parameter_count());
  int at = 0;
  for (int j = 0; j < d; ++j) {
    const std::size_t sj = static_cast<std::size_t>(j);
    Eigen::Map<Matrix>(v.data() + at, h, d) = first[sj];
    at += h * d;
    v.segment(at, h) = hidden_bias[sj];
    at += h;
    v.segment(at, h) = second[sj];
    at += h;
    v[at++] = output_bias[j];
  }
  return v;
}

MlpModel MlpModel::unpack(const Vector& v, int d, int hidden_width) {
  const int h = hidden_width;
  MlpModel model;
  model.d = d;
  model.hidden_width = h;
  if (v.size() != model.parameter_count())
    throw std::invalid_argument("mlp: parameter vector has wrong length");
  model.first.resize(static_cast<std::size_t>(d));
  model.hidden_bias.resize(static_cast<std::size_t>(d));
  model.second.resize(static_cast<std::size_t>(d));
  model.output_bias.resize(d);
  int at = 0;
  for (int j = 0; j < d; ++j) {
    const std::size_t sj = static_cast<std::size_t>(j);
    model.first[sj] = Eigen::Map<const Matrix>(v.data() + at, h, d);
    at += h * d;
    model.hidden_bias[sj] = v.segment(at, h);
    at += h;
    model.second[sj] = v.segment(at, h);
    at += h;
    model.output_bias[j] = v[at++];
  }
  return model;
}

Matrix induced_adjacency(const MlpModel& model) {
  model.validate();
  Matrix w(model.d, model.d);
  for (int j = 0; j < model.d; ++j)
    for (int i = 0; i < model.d; ++i)
      w(i, j) = model.first[static_cast<std::size_t>(j)].col(i).norm();
  return w;
}

MlpForward mlp_forward(const MlpModel& model, const Dataset& x) {
  model.validate();
  if (x.d() != model.d)
    throw std::invalid_argument("mlp: model is for " + std::to_string(model.d) +
                                " variables but data has " +
                                std::to_string(x.d()) + " columns");
  const Matrix& data = x.values();
  const int m = x.m();

  MlpForward out;
  out.predictions.resize(m, model.d);
  for (int j = 0; j < model.d; ++j) {
    const std::size_t sj = static_cast<std::size_t>(j);
    Matrix pre = data * model.first[sj].transpose();
    pre.rowwise() += model.hidden_bias[sj].transpose();
    out.predictions.col(j) =
        pre.unaryExpr([](double u) { return sigmoid(u); }) * model.second[sj];
    out.predictions.col(j).array() += model.output_bias[j];
  }
  out.residuals = data - out.predictions;
  return out;
}

MlpLossEval mlp_loss_and_grad(const MlpModel& model, const Dataset& x,
                              LossKind loss_kind, double lambda1,
                              ResidualEntropyMode mode) {
  model.validate();
  if (x.d() != model.d)
    throw std::invalid_argument("mlp: model is for " + std::to_string(model.d) +
                                " variables but data has " +
                                std::to_string(x.d()) + " columns");
  if (lambda1 < 0.0)
    throw std::invalid_argument("mlp: lambda1 must be nonnegative");

  const Matrix& data = x.values();
  const int m = x.m();
  const int d = model.d;
  const int h = model.hidden_width;

  MlpLossEval out;
  out.gradient = Vector::Zero(model.parameter_count());
  const int block = h * d + 2 * h + 1;

  for (int j = 0; j < d; ++j) {
    const std::size_t sj = static_cast<std::size_t>(j);
    // Forward, keeping the hidden activations for the backward pass.
    Matrix pre = data * model.first[sj].transpose();
    pre.rowwise() += model.hidden_bias[sj].transpose();
    const Matrix z = pre.unaryExpr([](double u) { return sigmoid(u); });
    Vector residual = data.col(j) - z * model.second[sj];
    residual.array() -= model.output_bias[j];

    // Per-column data fit and its derivative w.r.t. the residual.
    Vector d_residual;
    if (loss_kind == LossKind::least_square) {
      out.data_fit += 0.5 / m * residual.squaredNorm();
      d_residual = residual / static_cast<double>(m);
    } else {
      ColumnEntropy col;
      try {
        col = mode == ResidualEntropyMode::standardized
                  ? column_entropy_standardized(residual)
                  : column_entropy_raw(residual);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("mlp loss: column '" + x.names()[j] +
                                 "' (index " + std::to_string(j) +
                                 "): " + e.what());
      }
      out.data_fit += col.value;
      d_residual = std::move(col.d_raw);
    }

    // Reverse pass: residual = x_j - (z * second + output_bias).
    const Vector d_pred = -d_residual;
    const Vector d_second = z.transpose() * d_pred;
    const double d_out_bias = d_pred.sum();
    const Matrix d_pre = ((d_pred * model.second[sj].transpose()).array() *
                          (z.array() * (1.0 - z.array())))
                             .matrix();
    const Vector d_hidden_bias = d_pre.colwise().sum().transpose();
    Matrix d_first = d_pre.transpose() * data;

    // Group penalty on the first-layer column norms.
    const Matrix& a = model.first[sj];
    for (int i = 0; i < d; ++i) {
      const double norm = a.col(i).norm();
      out.value += lambda1 * norm;
      if (norm > 0.0) d_first.col(i) += (lambda1 / norm) * a.col(i);
    }
    d_first.col(j).setZero();  // structurally absent parameters

    const int at = j * block;
    Eigen::Map<Matrix>(out.gradient.data() + at, h, d) = d_first;
    out.gradient.segment(at + h * d, h) = d_hidden_bias;
    out.gradient.segment(at + h * d + h, h) = d_second;
    out.gradient[at + h * d + 2 * h] = d_out_bias;
  }
  out.value += out.data_fit;
  return out;
}

SolveReport mlp_solve(const Dataset& x, LossKind loss_kind,
                      const SolverConfig& cfg, int hidden_width) {
  cfg.validate();
  if (x.d() < 2)
    throw std::invalid_argument("mlp solve: need at least two variables");
  if (hidden_width < 1)
    throw std::invalid_argument("mlp solve: hidden width must be positive");
  const auto t_start = std::chrono::steady_clock::now();

  const int d = x.d();
  const int m = x.m();
  const int h = hidden_width;

  // Same preprocessing as the linear solver: center for entropy, scale only
  // on request.
  Matrix values = x.values();
  if (loss_kind == LossKind::entropy || cfg.standardize_columns)
    for (int j = 0; j < d; ++j) values.col(j).array() -= values.col(j).mean();
  if (cfg.standardize_columns) {
    for (int j = 0; j < d; ++j) {
      const double sigma = std::sqrt(values.col(j).squaredNorm() / m);
      if (sigma <= kSigmaFloor)
        throw std::runtime_error("mlp solve: data column '" + x.names()[j] +
                                 "' is constant; cannot standardize");
      values.col(j) /= sigma;
    }
  }
  const Dataset xs(std::move(values), x.names());

  Vector v = MlpModel::init(d, h, cfg.seed).pack();
  double rho = cfg.rho0;
  double alpha = cfg.alpha0;
  double h_prev =
      h_value(induced_adjacency(MlpModel::unpack(v, d, h)), cfg.kernel);
  double h_new = h_prev;

  SolveReport report;
  for (int outer = 1; outer <= cfg.max_outer_iters; ++outer) {
    const ObjectiveFn objective = [&](const Vector& vv, Vector& grad) -> double {
      const MlpModel model = MlpModel::unpack(vv, d, h);
      MlpLossEval loss = mlp_loss_and_grad(model, xs, loss_kind, cfg.lambda1,
                                           cfg.entropy_mode);
      const Matrix w_ind = induced_adjacency(model);
      const AcyclicityEval acyc = h_eval(w_ind, cfg.kernel);
      const double coef = rho * acyc.value + alpha;

      // Back-propagate coef * dh/dW through the column norms, and add the
      // ridge on both weight layers (biases excluded). The group penalty
      // sees only first-layer norms, so without the ridge the minimizer
      // shrinks them toward zero and lets the second layer compensate,
      // erasing the induced adjacency; the ridge pins the scale split.
      double ridge = 0.0;
      const int block = h * d + 2 * h + 1;
      for (int j = 0; j < d; ++j) {
        const std::size_t sj = static_cast<std::size_t>(j);
        Eigen::Map<Matrix> d_first(loss.gradient.data() + j * block, h, d);
        add_column_norm_gradient(
            model.first[sj],
            [&](int i) { return coef * acyc.gradient(i, j); }, d_first);
        d_first += cfg.lambda2 * model.first[sj];
        loss.gradient.segment(j * block + h * d + h, h) +=
            cfg.lambda2 * model.second[sj];
        ridge +=
            model.first[sj].squaredNorm() + model.second[sj].squaredNorm();
      }
      grad = std::move(loss.gradient);
      return loss.value + 0.5 * cfg.lambda2 * ridge +
             0.5 * rho * acyc.value * acyc.value + alpha * acyc.value;
    };

    InnerResult inner;
    double loss_at_iterate = 0.0;
    try {
      inner = inner_minimize(objective, v, /*nonnegative=*/false, cfg);
      v = std::move(inner.v);
      const MlpModel model = MlpModel::unpack(v, d, h);
      loss_at_iterate =
          mlp_loss_and_grad(model, xs, loss_kind, cfg.lambda1, cfg.entropy_mode)
              .data_fit;
      h_new = h_value(induced_adjacency(model), cfg.kernel);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("mlp solve: outer iteration " +
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
  report.w_est = WeightMatrix(induced_adjacency(MlpModel::unpack(v, d, h)));
  report.est_graph = threshold(report.w_est, cfg.omega);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace entdag
