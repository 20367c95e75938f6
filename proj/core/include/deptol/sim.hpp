#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "deptol/tolerance.hpp"

namespace deptol {

// One full coverage experiment: fit on a fresh sample, score the region on
// fresh evaluation samples, repeat.
struct SimConfig {
  Distribution dist = Distribution::std_bivariate_normal();
  DepthKind depth_kind = DepthKind::kSimplicial;
  std::size_t n = 100;          // fitting (and evaluation) sample size
  std::size_t inner_reps = 20;  // evaluation samples per replication
  std::size_t outer_reps = 200; // replications
  ToleranceSpec spec;
  std::uint64_t seed = 0;
  unsigned threads = 1;         // replications are independent; any count
                                // yields identical results

  void validate() const;
};

struct SimulationReport {
  SimConfig config;
  double estimate = 0.0;        // gamma-hat (content) or beta-hat (expectation)
  double std_error = 0.0;       // binomial SE or sample-mean SE
  std::vector<double> coverages; // per-replication averaged coverage
  double elapsed_seconds = 0.0;  // wall time; informational, not reproducible
};

// Steps of one replication: fit on a fresh size-n sample, then average the
// in-region fractions of inner_reps fresh size-n samples. Deterministic in
// (config.seed, rep).
double run_replication(const SimConfig& config, std::size_t rep);

SimulationReport run_simulation(const SimConfig& config);

// Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

struct LawCheck {
  double ks = 0.0;
  double mean_coverage = 0.0;
};

// Coverage law of the depth region that keeps the r deepest points, under a
// known planar normal with population mahalanobis depth. Coverage per
// replication is exact via the chi-square tail, and its law is
// Beta(r, n+1-r); the innermost spacing (r = 1) checks the spacing law.
LawCheck verify_beta_law(std::size_t n, std::size_t r, std::size_t reps, RngState rng);

// Coverage law of the distribution-free interval (X_[r], X_[n-r+1]] under
// U(0,1): Beta(n-2r+1, 2r).
LawCheck verify_wilks(std::size_t n, std::size_t r, std::size_t reps, RngState rng);

}  // namespace deptol
