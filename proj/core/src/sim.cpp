#include "deptol/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace deptol {

void SimConfig::validate() const {
  spec.validate();
  if (n < dist.dim() + 1) throw DomainError("n must be at least p+1");
  if (inner_reps < 1 || outer_reps < 1)
    throw DomainError("replication counts must be >= 1");
  if (dist.tag == DistTag::kBivariateCauchyStd &&
      depth_kind == DepthKind::kMahalanobis)
    throw Unsupported(
        "cauchy samples have no dispersion moments; use simplicial depth");
}

double run_replication(const SimConfig& config, std::size_t rep) {
  const RngState rep_rng = RngState{config.seed, 0}.child(rep);
  const Dataset fit_sample = sample_dist(config.dist, config.n, rep_rng.child(0));
  const ToleranceRegion region = fit_region(fit_sample, config.spec, config.depth_kind);

  double sum = 0.0;
  for (std::size_t j = 1; j <= config.inner_reps; ++j) {
    const Dataset eval_sample = sample_dist(config.dist, config.n, rep_rng.child(j));
    sum += in_region_fraction(region, eval_sample);
  }
  return sum / static_cast<double>(config.inner_reps);
}

SimulationReport run_simulation(const SimConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  SimulationReport report;
  report.config = config;
  report.coverages.assign(config.outer_reps, 0.0);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads,
                                      static_cast<unsigned>(config.outer_reps)));
  if (workers == 1) {
    for (std::size_t rep = 0; rep < config.outer_reps; ++rep)
      report.coverages[rep] = run_replication(config, rep);
  } else {
    // Replications are pure in (seed, rep); results land in their own slots
    // so the reduction below is identical for any worker count.
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t rep = next.fetch_add(1); rep < config.outer_reps;
             rep = next.fetch_add(1))
          report.coverages[rep] = run_replication(config, rep);
      });
    }
    for (auto& t : pool) t.join();
  }

  const double m = static_cast<double>(config.outer_reps);
  if (config.spec.kind == ToleranceKind::kContent) {
    std::size_t hits = 0;
    for (double c : report.coverages)
      if (c > config.spec.beta) ++hits;
    report.estimate = static_cast<double>(hits) / m;
    report.std_error = std::sqrt(report.estimate * (1.0 - report.estimate) / m);
  } else {
    double mean = 0.0;
    for (double c : report.coverages) mean += c;
    mean /= m;
    double ss = 0.0;
    for (double c : report.coverages) ss += (c - mean) * (c - mean);
    report.estimate = mean;
    report.std_error = config.outer_reps > 1 ? std::sqrt(ss / (m - 1.0) / m) : 0.0;
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

double ks_distance(std::vector<double> sample,
                   const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_distance of empty sample");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    ks = std::max(ks, std::abs((i + 1.0) / m - f));
    ks = std::max(ks, std::abs(static_cast<double>(i) / m - f));
  }
  return ks;
}

namespace {

LawCheck law_check_against_beta(std::vector<double> coverages, double a, double b) {
  double mean = 0.0;
  for (double c : coverages) mean += c;
  mean /= static_cast<double>(coverages.size());
  LawCheck out;
  out.mean_coverage = mean;
  out.ks = ks_distance(std::move(coverages),
                       [a, b](double x) { return reg_inc_beta(a, b, x); });
  return out;
}

}  // namespace

LawCheck verify_beta_law(std::size_t n, std::size_t r, std::size_t reps, RngState rng) {
  if (r < 1 || r > n) throw DomainError("rank must satisfy 1 <= r <= n");
  if (reps < 1) throw DomainError("reps must be >= 1");
  const Distribution dist = Distribution::std_bivariate_normal();

  std::vector<double> coverages;
  coverages.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const Dataset sample = sample_dist(dist, n, rng.child(rep));
    // r-th largest population depth = r-th smallest squared radius.
    std::vector<double> quad(n);
    for (std::size_t i = 0; i < n; ++i)
      quad[i] = sample[i][0] * sample[i][0] + sample[i][1] * sample[i][1];
    std::nth_element(quad.begin(), quad.begin() + (r - 1), quad.end());
    const double level = quad[r - 1];
    // Exact coverage of {depth > threshold}: chi-square(2) CDF at the level.
    coverages.push_back(1.0 - std::exp(-0.5 * level));
  }
  return law_check_against_beta(std::move(coverages), static_cast<double>(r),
                                static_cast<double>(n) + 1.0 - static_cast<double>(r));
}

LawCheck verify_wilks(std::size_t n, std::size_t r, std::size_t reps, RngState rng) {
  if (r < 1 || 2 * r >= n + 1)
    throw DomainError("wilks rank must satisfy 1 <= r < (n+1)/2");
  if (reps < 1) throw DomainError("reps must be >= 1");

  std::vector<double> coverages;
  coverages.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    UniformSource u(rng.child(rep));
    std::vector<double> sample(n);
    for (auto& v : sample) v = u.open01();
    const WilksInterval iv = wilks_interval(sample, r);
    // Under U(0,1) the coverage is the plain interval length.
    coverages.push_back(iv.upper - iv.lower);
  }
  return law_check_against_beta(std::move(coverages),
                                static_cast<double>(n) - 2.0 * r + 1.0, 2.0 * r);
}

}  // namespace deptol
