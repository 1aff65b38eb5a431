#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "entdag/metrics.hpp"
#include "entdag/scm.hpp"

using namespace entdag;

namespace {

double column_mean(const Matrix& m, int j) { return m.col(j).mean(); }

double column_var(const Matrix& m, int j) {
  const double mu = column_mean(m, j);
  return (m.col(j).array() - mu).square().mean();
}

double column_cov(const Matrix& m, int i, int j) {
  return ((m.col(i).array() - column_mean(m, i)) *
          (m.col(j).array() - column_mean(m, j)))
      .mean();
}

}  // namespace

TEST_CASE("random_dag: degenerate and boundary cases") {
  const Dag d2 = random_dag(2, 1, 7);
  CHECK(d2.edge_count() == 1);  // p = 1: the single pair always gets its edge

  CHECK_THROWS_AS(random_dag(3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_dag(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_dag(5, 0, 0), std::invalid_argument);
}

TEST_CASE("random_dag: always acyclic, expected edge count holds") {
  double total_edges = 0.0;
  const int draws = 400;
  for (int t = 0; t < draws; ++t) {
    const Dag dag = random_dag(15, 2, 1000 + static_cast<std::uint64_t>(t));
    CHECK(is_acyclic(dag.adjacency()));
    total_edges += dag.edge_count();
  }
  // Edge count per draw is Binomial(105, 2/7): mean 30, sd 4.63. The mean
  // of 400 draws has sd 0.23, so +-1 is a > 4-sigma corridor.
  CHECK(total_edges / draws == doctest::Approx(30.0).epsilon(1.0 / 30.0));
}

TEST_CASE("noise families produce the requested variance") {
  const int m = 200000;
  for (const auto family :
       {NoiseFamily::uniform, NoiseFamily::gumbel, NoiseFamily::gaussian}) {
    Rng rng(11);
    const double sigma = 0.8;
    const Vector n = sample_noise(family, sigma, m, rng);
    const double mean = n.mean();
    const double var = (n.array() - mean).square().mean();
    CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.02));
    if (family == NoiseFamily::uniform) {
      CHECK(std::abs(mean) < 0.01);
      CHECK(n.cwiseAbs().maxCoeff() <= sigma * std::sqrt(3.0));
    }
    if (family == NoiseFamily::gumbel) {
      // Location 0 keeps the Gumbel mean: Euler-gamma times the scale.
      const double scale = sigma * std::sqrt(6.0) / std::numbers::pi;
      CHECK(mean == doctest::Approx(0.5772156649 * scale).epsilon(0.03));
    }
    if (family == NoiseFamily::gaussian) CHECK(std::abs(mean) < 0.01);
  }
}

TEST_CASE("linear chain matches the analytic covariance") {
  BinMatrix adj = BinMatrix::Zero(2, 2);
  adj(0, 1) = 1;
  ScmSpec spec;
  spec.dag = Dag(adj);
  spec.kind = ScmKind::linear;
  spec.noise_family = NoiseFamily::gaussian;
  spec.strengths[0] = Matrix::Zero(2, 2);
  spec.strengths[0](0, 1) = 0.5;
  spec.strengths[1] = Matrix::Zero(2, 2);
  spec.strengths[2] = Matrix::Zero(2, 2);
  spec.noise_scales = Vector::Ones(2);
  spec.seed = 99;

  const GeneratedData gen = generate(spec, 200000);
  const Matrix& x = gen.data.values();
  CHECK(column_var(x, 0) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(column_var(x, 1) == doctest::Approx(1.25).epsilon(0.02));
  CHECK(column_cov(x, 0, 1) == doctest::Approx(0.5).epsilon(0.05));
  // The returned noise is the exact draw: X0 == N0, X1 - 0.5 X0 == N1.
  CHECK((x.col(0) - gen.noise.col(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((x.col(1) - 0.5 * x.col(0) - gen.noise.col(1)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("fork covariance: shared parent induces the product correlation") {
  BinMatrix adj = BinMatrix::Zero(3, 3);
  adj(0, 1) = 1;
  adj(0, 2) = 1;
  ScmSpec spec;
  spec.dag = Dag(adj);
  spec.kind = ScmKind::linear;
  spec.noise_family = NoiseFamily::uniform;
  spec.strengths[0] = Matrix::Zero(3, 3);
  spec.strengths[0](0, 1) = 0.6;
  spec.strengths[0](0, 2) = -0.7;
  spec.strengths[1] = Matrix::Zero(3, 3);
  spec.strengths[2] = Matrix::Zero(3, 3);
  spec.noise_scales = Vector::Ones(3);
  spec.seed = 5;

  const Matrix x = generate(spec, 200000).data.values();
  CHECK(column_var(x, 1) == doctest::Approx(1.36).epsilon(0.02));
  CHECK(column_var(x, 2) == doctest::Approx(1.49).epsilon(0.02));
  CHECK(column_cov(x, 1, 2) == doctest::Approx(-0.42).epsilon(0.05));
}

TEST_CASE("root columns are uncorrelated") {
  ScmSpec spec;
  spec.dag = Dag::empty(3);
  spec.kind = ScmKind::linear;
  spec.noise_family = NoiseFamily::uniform;
  for (auto& s : spec.strengths) s = Matrix::Zero(3, 3);
  spec.noise_scales = Vector::Ones(3);
  spec.seed = 17;

  const int m = 10000;
  const Matrix x = generate(spec, m).data.values();
  const double bound = 4.0 / std::sqrt(static_cast<double>(m));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double corr = column_cov(x, i, j) /
                          std::sqrt(column_var(x, i) * column_var(x, j));
      CHECK(std::abs(corr) < bound);
    }
}

TEST_CASE("make_scm_spec draws strengths and scales from the stated ranges") {
  const Dag dag = random_dag(10, 3, 3);

  const ScmSpec lin = make_scm_spec(dag, ScmKind::linear, NoiseFamily::uniform, 42);
  bool saw_negative = false, saw_positive = false;
  for (const auto& [i, j] : dag.graph().edges()) {
    const double b = lin.strengths[0](i, j);
    CHECK(std::abs(b) >= 0.4);
    CHECK(std::abs(b) <= 0.8);
    (b < 0 ? saw_negative : saw_positive) = true;
  }
  CHECK(saw_negative);
  CHECK(saw_positive);
  for (int j = 0; j < 10; ++j) {
    CHECK(lin.noise_scales[j] >= 0.5);
    CHECK(lin.noise_scales[j] <= 1.0);
  }

  const ScmSpec non =
      make_scm_spec(dag, ScmKind::nonlinear, NoiseFamily::uniform, 42, 3.0);
  for (const auto& s : non.strengths)
    for (const auto& [i, j] : dag.graph().edges()) {
      CHECK(s(i, j) >= 0.5);
      CHECK(s(i, j) <= 2.0);
    }
  CHECK(non.noise_scales.minCoeff() == 3.0);
  CHECK(non.noise_scales.maxCoeff() == 3.0);
}

TEST_CASE("generation is deterministic in the seed") {
  const Dag dag = random_dag(5, 2, 8);
  const ScmSpec spec = make_scm_spec(dag, ScmKind::linear, NoiseFamily::gumbel, 1234);
  const Matrix a = generate(spec, 500).data.values();
  const Matrix b = generate(spec, 500).data.values();
  CHECK(a == b);

  const ScmSpec other = make_scm_spec(dag, ScmKind::linear, NoiseFamily::gumbel, 1235);
  CHECK(generate(other, 500).data.values() != a);
}

TEST_CASE("nonlinear generation: parentless columns are pure noise") {
  const Dag dag = random_dag(4, 2, 21);
  const ScmSpec spec =
      make_scm_spec(dag, ScmKind::nonlinear, NoiseFamily::uniform, 77, 1.0);
  const GeneratedData gen = generate(spec, 1000);
  for (int j = 0; j < 4; ++j) {
    bool has_parent = false;
    for (int i = 0; i < 4; ++i) has_parent |= dag.adjacency()(i, j) != 0;
    if (!has_parent)
      CHECK((gen.data.values().col(j) - gen.noise.col(j)).cwiseAbs().maxCoeff() ==
            0.0);
  }
  // Nonlinear responses are bounded additions: tanh + cos + sin within +-3.
  for (int j = 0; j < 4; ++j) {
    const Vector diff = gen.data.values().col(j) - gen.noise.col(j);
    CHECK(diff.cwiseAbs().maxCoeff() <= 3.0);
  }
}

TEST_CASE("spec validation rejects support violations") {
  BinMatrix adj = BinMatrix::Zero(2, 2);
  adj(0, 1) = 1;
  ScmSpec spec;
  spec.dag = Dag(adj);
  spec.kind = ScmKind::linear;
  spec.strengths[0] = Matrix::Zero(2, 2);
  spec.strengths[0](1, 0) = 0.5;  // weight where there is no edge
  spec.strengths[1] = Matrix::Zero(2, 2);
  spec.strengths[2] = Matrix::Zero(2, 2);
  spec.noise_scales = Vector::Ones(2);
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec.strengths[0](1, 0) = 0.0;  // now the edge (0,1) is missing its weight
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec.strengths[0](0, 1) = 0.6;
  CHECK_NOTHROW(spec.validate());
  spec.noise_scales[1] = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("bivariate generator: moments, names, and ground truth") {
  BivariateSpec bs;
  bs.alpha = 0.5;
  bs.sigma_nx = 2.0;
  bs.sigma_ny = 1.0;
  bs.noise_family = NoiseFamily::uniform;
  bs.m = 100000;
  bs.seed = 3;

  const Dataset data = generate_bivariate(bs);
  CHECK(data.names() == std::vector<std::string>{"X", "Y"});
  const Matrix& x = data.values();
  CHECK(column_var(x, 0) == doctest::Approx(4.0).epsilon(0.03));
  CHECK(column_var(x, 1) == doctest::Approx(2.0).epsilon(0.03));
  CHECK(column_cov(x, 0, 1) == doctest::Approx(2.0).epsilon(0.05));

  const Dag truth = bivariate_truth();
  CHECK(truth.edge_count() == 1);
  CHECK(truth.adjacency()(0, 1) == 1);
}
