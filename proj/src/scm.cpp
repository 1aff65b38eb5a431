#include "entdag/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entdag/metrics.hpp"

namespace entdag {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Nonzero pattern of `m` must be exactly the DAG's edge set.
void check_support(const Matrix& m, const BinMatrix& adj, const char* what) {
  if (m.rows() != adj.rows() || m.cols() != adj.cols())
    throw std::invalid_argument(std::string(what) + ": shape mismatch with graph");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const bool has_edge = adj(i, j) != 0;
      const bool has_weight = m(i, j) != 0.0;
      if (has_edge != has_weight)
        throw std::invalid_argument(std::string(what) +
                                    ": support does not match graph edges");
    }
}

Matrix draw_strengths(const Dag& dag, double lo, double hi, bool random_sign,
                      Rng& rng) {
  const int d = dag.d();
  Matrix out = Matrix::Zero(d, d);
  const BinMatrix& adj = dag.graph().adjacency;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (adj(i, j) == 0) continue;
      double beta = rng.uniform(lo, hi);
      if (random_sign && rng.next_double() < 0.5) beta = -beta;
      out(i, j) = beta;
    }
  return out;
}

std::vector<std::string> default_names(int d) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

}  // namespace

const char* to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::uniform: return "uniform";
    case NoiseFamily::gumbel: return "gumbel";
    case NoiseFamily::gaussian: return "gaussian";
  }
  return "?";
}

const char* to_string(ScmKind k) {
  return k == ScmKind::linear ? "linear" : "nonlinear";
}

NoiseFamily noise_family_from_string(const std::string& s) {
  if (s == "uniform") return NoiseFamily::uniform;
  if (s == "gumbel") return NoiseFamily::gumbel;
  if (s == "gaussian") return NoiseFamily::gaussian;
  throw std::invalid_argument("unknown noise family: " + s);
}

ScmKind scm_kind_from_string(const std::string& s) {
  if (s == "linear") return ScmKind::linear;
  if (s == "nonlinear") return ScmKind::nonlinear;
  throw std::invalid_argument("unknown model kind: " + s);
}

void ScmSpec::validate() const {
  const int d = dag.d();
  const BinMatrix& adj = dag.graph().adjacency;
  check_support(strengths[0], adj, "strengths[0]");
  if (kind == ScmKind::nonlinear) {
    check_support(strengths[1], adj, "strengths[1]");
    check_support(strengths[2], adj, "strengths[2]");
  }
  if (noise_scales.size() != d)
    throw std::invalid_argument("noise_scales must have one entry per variable");
  for (int j = 0; j < d; ++j)
    if (!(noise_scales[j] > 0.0))
      throw std::invalid_argument("noise scales must be positive");
}

Dag random_dag(int d, int expected_in_degree, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_dag: d must be >= 1");
  if (expected_in_degree < 1)
    throw std::invalid_argument("random_dag: expected in-degree must be >= 1");
  if (expected_in_degree > d - 1)
    throw std::invalid_argument(
        "random_dag: expected in-degree " + std::to_string(expected_in_degree) +
        " cannot be realized with " + std::to_string(d) + " variables");

  Rng rng(seed);
  // Random topological order: perm[r] is the variable at rank r.
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = d - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }

  // Expected edge count d * k over d(d-1)/2 candidate pairs.
  const double p =
      std::min(1.0, 2.0 * expected_in_degree / static_cast<double>(d - 1));
  BinMatrix adj = BinMatrix::Zero(d, d);
  for (int r = 1; r < d; ++r)
    for (int s = 0; s < r; ++s)
      if (rng.next_double() < p)
        adj(perm[static_cast<std::size_t>(s)], perm[static_cast<std::size_t>(r)]) = 1;
  return Dag(std::move(adj));
}

Vector sample_noise(NoiseFamily family, double sigma, int m, Rng& rng) {
  if (!(sigma > 0.0)) throw std::invalid_argument("noise scale must be positive");
  if (m < 1) throw std::invalid_argument("sample size must be >= 1");
  Vector out(m);
  switch (family) {
    case NoiseFamily::uniform:
      for (int i = 0; i < m; ++i) out[i] = sigma * rng.uniform(-kSqrt3, kSqrt3);
      break;
    case NoiseFamily::gumbel: {
      // Scale sqrt(6)/pi gives unit variance; the location stays 0, so the
      // draws keep the Gumbel mean (Euler-gamma times the scale).
      const double s = sigma * std::sqrt(6.0) / std::numbers::pi;
      for (int i = 0; i < m; ++i) out[i] = rng.gumbel(0.0, s);
      break;
    }
    case NoiseFamily::gaussian:
      for (int i = 0; i < m; ++i) out[i] = sigma * rng.normal();
      break;
  }
  return out;
}

ScmSpec make_scm_spec(Dag dag, ScmKind kind, NoiseFamily family,
                      std::uint64_t seed, std::optional<double> fixed_sigma) {
  const int d = dag.d();
  ScmSpec spec;
  spec.kind = kind;
  spec.noise_family = family;
  spec.seed = seed;

  Rng strength_rng(derive_seed(seed, 1));
  if (kind == ScmKind::linear) {
    spec.strengths[0] = draw_strengths(dag, 0.4, 0.8, /*random_sign=*/true,
                                       strength_rng);
    spec.strengths[1] = Matrix::Zero(d, d);
    spec.strengths[2] = Matrix::Zero(d, d);
  } else {
    for (auto& s : spec.strengths)
      s = draw_strengths(dag, 0.5, 2.0, /*random_sign=*/false, strength_rng);
  }

  Rng scale_rng(derive_seed(seed, 2));
  spec.noise_scales = Vector(d);
  for (int j = 0; j < d; ++j)
    spec.noise_scales[j] = fixed_sigma ? *fixed_sigma : scale_rng.uniform(0.5, 1.0);

  spec.dag = std::move(dag);
  spec.validate();
  return spec;
}

GeneratedData generate(const ScmSpec& spec, int m) {
  spec.validate();
  if (m < 2) throw std::invalid_argument("need at least two samples");
  const int d = spec.dag.d();

  Matrix noise(m, d);
  for (int j = 0; j < d; ++j) {
    Rng rng(derive_seed(spec.seed, 3 + static_cast<std::uint64_t>(j)));
    noise.col(j) = sample_noise(spec.noise_family, spec.noise_scales[j], m, rng);
  }

  Matrix x = Matrix::Zero(m, d);
  const BinMatrix& adj = spec.dag.graph().adjacency;
  const auto order = topological_order(adj);
  for (int j : order) {
    bool has_parent = false;
    for (int i = 0; i < d; ++i)
      if (adj(i, j) != 0) { has_parent = true; break; }
    if (!has_parent) {
      x.col(j) = noise.col(j);
      continue;
    }
    if (spec.kind == ScmKind::linear) {
      x.col(j) = x * spec.strengths[0].col(j) + noise.col(j);
    } else {
      const Vector u1 = x * spec.strengths[0].col(j);
      const Vector u2 = x * spec.strengths[1].col(j);
      const Vector u3 = x * spec.strengths[2].col(j);
      x.col(j) = u1.array().tanh() + u2.array().cos() + u3.array().sin() +
                 noise.col(j).array();
    }
  }

  return GeneratedData{Dataset(std::move(x), default_names(d)), std::move(noise)};
}

Dataset generate_linear(const ScmSpec& spec, int m) {
  if (spec.kind != ScmKind::linear)
    throw std::invalid_argument("generate_linear: spec is not linear");
  return generate(spec, m).data;
}

Dataset generate_nonlinear(const ScmSpec& spec, int m) {
  if (spec.kind != ScmKind::nonlinear)
    throw std::invalid_argument("generate_nonlinear: spec is not nonlinear");
  return generate(spec, m).data;
}

Dataset generate_bivariate(const BivariateSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("need at least two samples");
  if (!(spec.sigma_nx > 0.0) || !(spec.sigma_ny > 0.0))
    throw std::invalid_argument("noise scales must be positive");

  Rng rng_x(derive_seed(spec.seed, 3));
  Rng rng_y(derive_seed(spec.seed, 4));
  const Vector nx = sample_noise(spec.noise_family, spec.sigma_nx, spec.m, rng_x);
  const Vector ny = sample_noise(spec.noise_family, spec.sigma_ny, spec.m, rng_y);

  Matrix values(spec.m, 2);
  values.col(0) = nx;
  values.col(1) = spec.alpha * nx + ny;
  return Dataset(std::move(values), {"X", "Y"});
}

Dag bivariate_truth() {
  BinMatrix adj = BinMatrix::Zero(2, 2);
  adj(0, 1) = 1;
  return Dag(std::move(adj));
}

}  // namespace entdag
