#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "entdag/rng.hpp"
#include "entdag/types.hpp"

namespace entdag {

enum class NoiseFamily { uniform, gumbel, gaussian };
enum class ScmKind { linear, nonlinear };

const char* to_string(NoiseFamily f);
const char* to_string(ScmKind k);
NoiseFamily noise_family_from_string(const std::string& s);
ScmKind scm_kind_from_string(const std::string& s);

// Full generative description of a synthetic SCM. Strength matrices carry
// nonzeros exactly on the DAG's edges; generation is pure given the spec.
struct ScmSpec {
  Dag dag;
  ScmKind kind = ScmKind::linear;
  // linear uses strengths[0]; nonlinear uses all three coefficient sets.
  std::array<Matrix, 3> strengths;
  NoiseFamily noise_family = NoiseFamily::uniform;
  Vector noise_scales;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BivariateSpec {
  double alpha = 0.5;
  double sigma_nx = 2.0;
  double sigma_ny = 1.0;
  NoiseFamily noise_family = NoiseFamily::uniform;
  int m = 400;
  std::uint64_t seed = 0;
};

// Erdos-Renyi over a random permutation's lower triangle. The edge
// probability is chosen so the expected edge count is d * expected_in_degree
// (15 variables at in-degree 2 carry 30 edges on average), clamped
// to 1 when the triangle cannot hold that many.
Dag random_dag(int d, int expected_in_degree, std::uint64_t seed);

// One i.i.d. noise column. The uniform and Gumbel variants have variance
// sigma^2 exactly in expectation; Gumbel keeps its nonzero mean.
Vector sample_noise(NoiseFamily family, double sigma, int m, Rng& rng);

// Draws causal strengths (|beta| in [0.4, 0.8] linear, [0.5, 2.0] per set
// nonlinear) and noise scales (U(0.5, 1.0) unless fixed_sigma pins them)
// from streams derived off the seed.
ScmSpec make_scm_spec(Dag dag, ScmKind kind, NoiseFamily family,
                      std::uint64_t seed,
                      std::optional<double> fixed_sigma = std::nullopt);

struct GeneratedData {
  Dataset data;
  Matrix noise;  // the exact noise draws, column j for variable j
};

GeneratedData generate(const ScmSpec& spec, int m);
Dataset generate_linear(const ScmSpec& spec, int m);
Dataset generate_nonlinear(const ScmSpec& spec, int m);

// X = N_X, Y = alpha X + N_Y; columns named X, Y.
Dataset generate_bivariate(const BivariateSpec& spec);

// The two-node ground truth {X -> Y}.
Dag bivariate_truth();

}  // namespace entdag
