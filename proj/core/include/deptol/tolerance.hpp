#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "deptol/geometry.hpp"
#include "deptol/spacings.hpp"

namespace deptol {

enum class ToleranceKind { kContent, kExpectation };

const char* to_string(ToleranceKind kind);
ToleranceKind tolerance_kind_from_string(const std::string& name);

// What the caller asked for: cover beta of the mass, either with confidence
// gamma (content) or on average (expectation).
struct ToleranceSpec {
  double beta = 0.9;
  double gamma = 0.95;  // content kind only
  ToleranceKind kind = ToleranceKind::kContent;

  void validate() const;
};

// How many inner shells the region keeps.
struct RegionPlan {
  std::size_t threshold_rank = 1;  // rank of the depth order statistic used
  std::size_t sample_size = 0;
  // Content: achieved P(Beta(rank, n+1-rank) >= beta). Expectation: the
  // achieved mean rank/(n+1).
  double achieved = 0.0;
};

// Expectation target: rank = round((n+1) beta), half up, clamped to [1, n].
RegionPlan plan_expectation(std::size_t n, double beta);

// Content target: start from the normal approximation
// n beta + z_gamma sqrt(n beta (1-beta)), then pick floor or ceil by whose
// Beta tail probability lands closer to gamma.
RegionPlan plan_content(std::size_t n, double beta, double gamma);

RegionPlan make_plan(std::size_t n, const ToleranceSpec& spec);

// Fitted region: all points whose depth w.r.t. the reference sample exceeds
// the threshold (strictly). The stored threshold is the r_n-th largest depth
// of the reference points themselves. Simplicial depth of a member counts
// the C(n-1, p) simplices pinned at that vertex, a (p+1)/n share an outside
// query can never collect, so membership of non-reference queries compares
// against the threshold minus that share; reference-point queries use the
// stored value unchanged. Mahalanobis depth has no such offset.
struct ToleranceRegion {
  RegionPlan plan;
  ToleranceSpec spec;
  DepthKind depth_kind = DepthKind::kSimplicial;
  double threshold = 0.0;
  Dataset reference;
  std::optional<Polygon2D> hull;  // retained points, p = 2 only

  std::size_t dim() const { return reference.empty() ? 0 : reference.front().size(); }
  // Threshold on the scale of queries outside the reference sample.
  double query_threshold() const;
};

ToleranceRegion fit_region(const Dataset& data, const ToleranceSpec& spec,
                           DepthKind kind);

bool contains(const ToleranceRegion& region, const Vec& x);

// Fraction of a sample inside the region; one evaluator for the whole batch.
double in_region_fraction(const ToleranceRegion& region, const Dataset& sample);

// Indices of reference points with depth strictly above the threshold.
std::vector<std::size_t> retained_indices(const ToleranceRegion& region);

// The ideal depth level set {x : depth > eta} with eta the (1-beta) depth
// quantile. Closed form for planar normal distributions with mahalanobis
// depth; the boundary is the ellipse quad_form = 1/eta - 1.
struct PopulationRegion {
  Distribution dist;
  DepthKind depth_kind = DepthKind::kMahalanobis;
  double beta = 0.9;
  double eta = 0.0;        // depth threshold
  double quad_level = 0.0; // matching quadratic-form level
  double area = 0.0;       // Lebesgue measure of the region (p = 2)

  bool contains(const Vec& x) const;
};

PopulationRegion population_region(const Distribution& dist, double beta,
                                   DepthKind kind);

// Monte-Carlo coverage of a fitted region under dist.
double coverage_of_region(const ToleranceRegion& region, const Distribution& dist,
                          std::size_t reps, RngState rng);
// Population regions use the exact closed form (the coverage is beta).
double coverage_of_region(const PopulationRegion& region, const Distribution& dist,
                          std::size_t reps, RngState rng);

// Monte-Carlo estimate of the symmetric difference between a fitted region
// and the matching population region, probed uniformly over the reference
// bounding box inflated by half its width per side.
struct MinimalityGap {
  double sym_diff_area = 0.0;
  double population_area = 0.0;
  double ratio = 0.0;
  double probe_box_area = 0.0;
};

MinimalityGap minimality_gap(const ToleranceRegion& region, const Distribution& dist,
                             std::size_t probes, RngState rng);

// Distance between the r-th sample and population depth order statistics of
// one dataset (bounded by the sup-norm depth error, which a grid probe
// estimates from below).
struct RankGap {
  double rank_gap = 0.0;  // |sample stat - population stat| at rank r
  double grid_sup = 0.0;  // max |sample depth - population depth| on a 41x41 grid
};

RankGap depth_rank_gap(const Dataset& data, const Distribution& dist, std::size_t r);

}  // namespace deptol
