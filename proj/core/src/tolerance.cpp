#include "deptol/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace deptol {

const char* to_string(ToleranceKind kind) {
  return kind == ToleranceKind::kContent ? "content" : "expectation";
}

ToleranceKind tolerance_kind_from_string(const std::string& name) {
  if (name == "content") return ToleranceKind::kContent;
  if (name == "expectation") return ToleranceKind::kExpectation;
  throw DomainError("unknown tolerance kind: " + name);
}

void ToleranceSpec::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (kind == ToleranceKind::kContent && !(gamma > 0.0 && gamma < 1.0))
    throw DomainError("gamma must lie in (0, 1) for content regions");
}

RegionPlan plan_expectation(std::size_t n, double beta) {
  if (n < 1) throw DomainError("plan_expectation requires n >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  const double raw = (static_cast<double>(n) + 1.0) * beta;
  auto rank = static_cast<long long>(std::floor(raw + 0.5));  // half up
  rank = std::clamp<long long>(rank, 1, static_cast<long long>(n));
  RegionPlan plan;
  plan.threshold_rank = static_cast<std::size_t>(rank);
  plan.sample_size = n;
  plan.achieved = beta_mean(static_cast<double>(rank),
                            static_cast<double>(n) + 1.0 - static_cast<double>(rank));
  return plan;
}

namespace {

// P(Beta(rank, n+1-rank) >= beta): the chance the region with this rank
// covers at least beta of the mass.
double content_tail(std::size_t rank, std::size_t n, double beta) {
  return 1.0 - reg_inc_beta(static_cast<double>(rank),
                            static_cast<double>(n) + 1.0 - static_cast<double>(rank),
                            beta);
}

}  // namespace

RegionPlan plan_content(std::size_t n, double beta, double gamma) {
  if (n < 1) throw DomainError("plan_content requires n >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");

  const double nd = static_cast<double>(n);
  const double raw = nd * beta + normal_quantile(gamma) * std::sqrt(nd * beta * (1.0 - beta));

  auto clamp_rank = [&](double r) {
    return static_cast<std::size_t>(std::clamp(r, 1.0, nd));
  };
  const std::size_t lo = clamp_rank(std::floor(raw));
  const std::size_t hi = clamp_rank(std::ceil(raw));

  const double tail_lo = content_tail(lo, n, beta);
  const double tail_hi = lo == hi ? tail_lo : content_tail(hi, n, beta);

  RegionPlan plan;
  plan.sample_size = n;
  if (std::abs(tail_lo - gamma) <= std::abs(tail_hi - gamma)) {
    plan.threshold_rank = lo;
    plan.achieved = tail_lo;
  } else {
    plan.threshold_rank = hi;
    plan.achieved = tail_hi;
  }

  // Even keeping every shell cannot get near the requested confidence.
  if (content_tail(n, n, beta) < gamma - 0.5)
    throw Infeasible("sample too small for the requested content/confidence");
  return plan;
}

RegionPlan make_plan(std::size_t n, const ToleranceSpec& spec) {
  spec.validate();
  return spec.kind == ToleranceKind::kContent
             ? plan_content(n, spec.beta, spec.gamma)
             : plan_expectation(n, spec.beta);
}

ToleranceRegion fit_region(const Dataset& data, const ToleranceSpec& spec,
                           DepthKind kind) {
  const std::size_t p = dimension(data);
  if (data.size() < p + 1) throw TooFewPoints("need at least p+1 observations");

  ToleranceRegion region;
  region.plan = make_plan(data.size(), spec);
  region.spec = spec;
  region.depth_kind = kind;
  region.reference = data;

  const DepthOrder order = depth_order(data, kind);
  region.threshold = order.depth_at_rank(region.plan.threshold_rank);

  if (p == 2) {
    std::vector<Point2> retained;
    for (const auto& e : order.ranked) {
      if (e.depth > region.threshold)
        retained.push_back({data[e.index][0], data[e.index][1]});
    }
    if (!retained.empty()) region.hull = convex_hull_2d(retained);
  }
  return region;
}

double ToleranceRegion::query_threshold() const {
  if (depth_kind == DepthKind::kMahalanobis) return threshold;
  const double n = static_cast<double>(reference.size());
  const double p = static_cast<double>(dim());
  return threshold - (p + 1.0) / n;
}

namespace {

bool is_reference_point(const ToleranceRegion& region, const Vec& x) {
  for (const auto& ref : region.reference)
    if (ref == x) return true;
  return false;
}

}  // namespace

bool contains(const ToleranceRegion& region, const Vec& x) {
  if (x.size() != region.dim()) throw DimensionMismatch("query dimension mismatch");
  const double bar =
      is_reference_point(region, x) ? region.threshold : region.query_threshold();
  return depth_wrt_sample(x, region.reference, region.depth_kind) > bar;
}

double in_region_fraction(const ToleranceRegion& region, const Dataset& sample) {
  const DepthEvaluator eval(region.reference, region.depth_kind);
  std::size_t hits = 0;
  for (const auto& x : sample) {
    if (x.size() != region.dim()) throw DimensionMismatch("query dimension mismatch");
    const double bar =
        is_reference_point(region, x) ? region.threshold : region.query_threshold();
    if (eval(x) > bar) ++hits;
  }
  return sample.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(sample.size());
}

std::vector<std::size_t> retained_indices(const ToleranceRegion& region) {
  const DepthEvaluator eval(region.reference, region.depth_kind);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < region.reference.size(); ++i)
    if (eval(region.reference[i]) > region.threshold) out.push_back(i);
  return out;
}

bool PopulationRegion::contains(const Vec& x) const {
  return population_depth(x, dist, depth_kind) > eta;
}

PopulationRegion population_region(const Distribution& dist, double beta,
                                   DepthKind kind) {
  if (kind != DepthKind::kMahalanobis)
    throw Unsupported("population region requires mahalanobis depth");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  const bool normal =
      dist.tag == DistTag::kBivariateNormalStd || dist.tag == DistTag::kNormal;
  if (!normal || dist.dim() != 2)
    throw Unsupported("population region is implemented for planar normal only");

  // For a planar normal the depth quantile reduces to the chi-square(2)
  // tail: quad level t with P(Q <= t) = beta is t = -2 log(1 - beta).
  PopulationRegion region;
  region.dist = dist;
  region.depth_kind = kind;
  region.beta = beta;
  region.quad_level = -2.0 * std::log1p(-beta);
  region.eta = 1.0 / (1.0 + region.quad_level);

  double det = 1.0;
  if (dist.tag == DistTag::kNormal) {
    const Matrix lower = cholesky(dist.sigma);
    det = lower.at(0, 0) * lower.at(0, 0) * lower.at(1, 1) * lower.at(1, 1);
  }
  region.area = std::numbers::pi * region.quad_level * std::sqrt(det);
  return region;
}

double coverage_of_region(const ToleranceRegion& region, const Distribution& dist,
                          std::size_t reps, RngState rng) {
  const Dataset draws = sample_dist(dist, reps, rng);
  return in_region_fraction(region, draws);
}

double coverage_of_region(const PopulationRegion& region, const Distribution& dist,
                          std::size_t reps, RngState rng) {
  const bool same_normal =
      dist.tag == region.dist.tag &&
      (dist.tag != DistTag::kNormal ||
       (dist.mu == region.dist.mu && dist.sigma == region.dist.sigma));
  if (same_normal &&
      (dist.tag == DistTag::kBivariateNormalStd || dist.tag == DistTag::kNormal)) {
    // Exact: the region was built as the beta level set of this very law.
    return region.beta;
  }
  const Dataset draws = sample_dist(dist, reps, rng);
  std::size_t hits = 0;
  for (const auto& x : draws)
    if (region.contains(x)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reps);
}

MinimalityGap minimality_gap(const ToleranceRegion& region, const Distribution& dist,
                             std::size_t probes, RngState rng) {
  if (region.dim() != 2) throw Unsupported("minimality probing is planar only");
  if (probes < 1) throw DomainError("minimality_gap requires probes >= 1");
  const PopulationRegion pop = population_region(dist, region.spec.beta,
                                                 region.depth_kind);

  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& v : region.reference) {
    lo_x = std::min(lo_x, v[0]);
    hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]);
    hi_y = std::max(hi_y, v[1]);
  }
  const double pad_x = 0.5 * (hi_x - lo_x);
  const double pad_y = 0.5 * (hi_y - lo_y);
  lo_x -= pad_x;
  hi_x += pad_x;
  lo_y -= pad_y;
  hi_y += pad_y;

  const DepthEvaluator eval(region.reference, region.depth_kind);
  UniformSource u(rng);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < probes; ++i) {
    const Vec x{lo_x + (hi_x - lo_x) * u.halfopen01(),
                lo_y + (hi_y - lo_y) * u.halfopen01()};
    const bool in_fit = eval(x) > region.threshold;
    const bool in_pop = pop.contains(x);
    if (in_fit != in_pop) ++mismatches;
  }

  MinimalityGap gap;
  gap.probe_box_area = (hi_x - lo_x) * (hi_y - lo_y);
  gap.sym_diff_area =
      gap.probe_box_area * static_cast<double>(mismatches) / static_cast<double>(probes);
  gap.population_area = pop.area;
  gap.ratio = gap.sym_diff_area / gap.population_area;
  return gap;
}

RankGap depth_rank_gap(const Dataset& data, const Distribution& dist, std::size_t r) {
  const std::size_t n = data.size();
  if (r < 1 || r > n) throw DomainError("rank out of range");
  const auto mom = dist.moments();
  if (!mom) throw Unsupported("population depth unavailable for this distribution");
  if (dist.tag == DistTag::kBivariateCauchyStd)
    throw Unsupported("population depth unavailable for this distribution");

  const DepthOrder sample_order = depth_order(data, DepthKind::kMahalanobis);

  std::vector<double> pop_depths;
  pop_depths.reserve(n);
  for (const auto& x : data)
    pop_depths.push_back(population_depth(x, dist, DepthKind::kMahalanobis));
  std::sort(pop_depths.begin(), pop_depths.end(), std::greater<>());

  RankGap out;
  out.rank_gap = std::abs(sample_order.depth_at_rank(r) - pop_depths[r - 1]);

  // Grid probe of sup |sample depth - population depth| over the inflated
  // data bounding box; a lower estimate of the true sup. Planar data only.
  if (dimension(data) != 2) return out;
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  for (const auto& v : data) {
    lo_x = std::min(lo_x, v[0]);
    hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]);
    hi_y = std::max(hi_y, v[1]);
  }
  const double pad_x = 0.5 * (hi_x - lo_x);
  const double pad_y = 0.5 * (hi_y - lo_y);
  lo_x -= pad_x;
  hi_x += pad_x;
  lo_y -= pad_y;
  hi_y += pad_y;

  const DepthEvaluator eval(data, DepthKind::kMahalanobis);
  constexpr int kGrid = 41;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Vec x{lo_x + (hi_x - lo_x) * i / (kGrid - 1.0),
                  lo_y + (hi_y - lo_y) * j / (kGrid - 1.0)};
      const double diff =
          std::abs(eval(x) - population_depth(x, dist, DepthKind::kMahalanobis));
      out.grid_sup = std::max(out.grid_sup, diff);
    }
  }
  return out;
}

}  // namespace deptol
