#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "deptol/numerics.hpp"

namespace deptol {

// Value-type RNG identity. Equal (seed, stream) pairs always reproduce the
// same draw sequence; callers derive child streams instead of sharing state.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Deterministic sub-stream for a labeled piece of work (replication id,
  // evaluation index, ...). Uses splitmix64 finalization, so distinct labels
  // land on distinct streams.
  RngState child(std::uint64_t label) const;

  bool operator==(const RngState&) const = default;
};

// Uniform draw source backed by mt19937_64; all samplers below consume
// uniforms from here so sequences are fully determined by RngState.
class UniformSource {
 public:
  explicit UniformSource(RngState state);

  // Uniform on the open interval (0, 1).
  double open01();
  // Uniform on [0, 1).
  double halfopen01();
  // Standard normal, Box-Muller (two uniforms per pair, pair is cached).
  double standard_normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// Benchmark distributions of the tolerance-region experiments.
enum class DistTag {
  kBivariateNormalStd,   // N(0, I2)
  kNormal,               // N(mu, sigma), any small p
  kBivariateCauchyStd,   // elliptical standard Cauchy in the plane
  kBivariateExponential  // independent Exp(1) marginals
};

struct Distribution {
  DistTag tag = DistTag::kBivariateNormalStd;
  Vec mu;        // used by kNormal
  Matrix sigma;  // used by kNormal

  static Distribution std_bivariate_normal();
  static Distribution normal(Vec mu, Matrix sigma);
  static Distribution std_bivariate_cauchy();
  static Distribution bivariate_exponential();

  std::size_t dim() const;
  // Population mean and dispersion when both exist (normal, exponential).
  std::optional<std::pair<Vec, Matrix>> moments() const;
  const char* name() const;
};

// n independent draws. Deterministic given rng.
Dataset sample_dist(const Distribution& dist, std::size_t n, RngState rng);

}  // namespace deptol
