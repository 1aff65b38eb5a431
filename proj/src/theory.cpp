#include "entdag/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "entdag/entropy.hpp"

namespace entdag {
namespace {

// -log of the standard Gaussian density at u.
double gaussian_cross_entropy_term(double u) {
  return 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * u * u;
}

double neg_mean_log_q(const Vector& v) {
  double sum = 0.0;
  for (int i = 0; i < v.size(); ++i) sum += gaussian_cross_entropy_term(v[i]);
  return sum / static_cast<double>(v.size());
}

}  // namespace

void BivariatePopulation::validate() const {
  if (!(var_nx > 0.0) || !(var_ny > 0.0)) {
    throw std::invalid_argument("population noise variances must be positive");
  }
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("population alpha must be finite");
  }
}

PopulationRegression population_regression(const BivariatePopulation& p) {
  p.validate();
  PopulationRegression r;
  r.var_x_marginal = p.var_nx;
  r.beta_y_given_x = p.alpha;
  r.var_y_given_x = p.var_ny;
  r.var_y_marginal = p.alpha * p.alpha * p.var_nx + p.var_ny;
  r.beta_x_given_y = p.alpha * p.var_nx / r.var_y_marginal;
  r.var_x_given_y = p.var_nx * p.var_ny / r.var_y_marginal;
  return r;
}

PopulationLsLosses population_ls_losses(const BivariatePopulation& p) {
  const PopulationRegression r = population_regression(p);
  PopulationLsLosses losses;
  losses.causal = r.var_x_marginal + r.var_y_given_x;
  losses.anticausal = r.var_y_marginal + r.var_x_given_y;
  return losses;
}

bool ls_failure_predicted(const BivariatePopulation& p) {
  p.validate();
  return p.alpha * p.alpha < 1.0 - p.var_ny / p.var_nx;
}

CrossEntropyPair mc_gaussian_mi_bias(const Vector& x, const Vector& y,
                                     const Vector& resid_y_given_x,
                                     const Vector& resid_x_given_y) {
  if (x.size() != y.size() || x.size() != resid_y_given_x.size() ||
      x.size() != resid_x_given_y.size() || x.size() == 0) {
    throw std::invalid_argument(
        "cross-entropy inputs must share a positive length");
  }
  CrossEntropyPair pair;
  pair.iq_causal = neg_mean_log_q(x) + neg_mean_log_q(resid_y_given_x);
  pair.iq_anticausal = neg_mean_log_q(y) + neg_mean_log_q(resid_x_given_y);
  return pair;
}

double noise_entropy(NoiseFamily family, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  switch (family) {
    case NoiseFamily::gaussian:
      return gaussian_entropy(sigma);
    case NoiseFamily::uniform:
      // Width 2*sqrt(3)*sigma gives variance sigma^2.
      return std::log(2.0 * std::numbers::sqrt3 * sigma);
    case NoiseFamily::gumbel: {
      const double scale = sigma * std::sqrt(6.0) / std::numbers::pi;
      return std::log(scale) + std::numbers::egamma + 1.0;
    }
  }
  throw std::invalid_argument("unknown noise family");
}

double noise_log_density(NoiseFamily family, double sigma, double value) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  switch (family) {
    case NoiseFamily::gaussian: {
      const double z = value / sigma;
      return -0.5 * std::log(2.0 * std::numbers::pi) - std::log(sigma) -
             0.5 * z * z;
    }
    case NoiseFamily::uniform: {
      const double half_width = std::numbers::sqrt3 * sigma;
      // Tiny slack so support-boundary samples do not fall out in FP.
      if (std::abs(value) > half_width * (1.0 + 1e-12)) {
        return -std::numeric_limits<double>::infinity();
      }
      return -std::log(2.0 * half_width);
    }
    case NoiseFamily::gumbel: {
      const double scale = sigma * std::sqrt(6.0) / std::numbers::pi;
      const double z = value / scale;
      return -std::log(scale) - z - std::exp(-z);
    }
  }
  throw std::invalid_argument("unknown noise family");
}

ConsistencyCheck check_entropy_likelihood_consistency(const ScmSpec& scm,
                                                      int m) {
  scm.validate();
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const GeneratedData generated = generate(scm, m);
  const int d = scm.dag.d();

  ConsistencyCheck check;
  for (int j = 0; j < d; ++j) {
    const double sigma = scm.noise_scales[j];
    check.entropy_score += noise_entropy(scm.noise_family, sigma);
    double loglik = 0.0;
    for (int i = 0; i < m; ++i) {
      loglik += noise_log_density(scm.noise_family, sigma,
                                  generated.noise(i, j));
    }
    check.neg_avg_loglik -= loglik / static_cast<double>(m);
    check.estimator_score += standardize_entropy(generated.noise.col(j));
  }
  return check;
}

double uniform_estimator_bias() {
  const EntropyConstants& c = EntropyConstants::get();
  // E{G2(U)} on U(-sqrt(3), sqrt(3)): integral of exp(-u^2/2)/(2 sqrt(3))
  // = sqrt(2 pi) erf(sqrt(3/2)) / (2 sqrt(3)). The odd G1 term vanishes.
  const double e_g2 = std::sqrt(2.0 * std::numbers::pi) *
                      std::erf(std::sqrt(1.5)) /
                      (2.0 * std::numbers::sqrt3);
  const double dev = e_g2 - c.g2_nu;
  const double estimator_value = c.h_nu - c.k2 * dev * dev;
  return estimator_value - std::log(2.0 * std::numbers::sqrt3);
}

}  // namespace entdag
