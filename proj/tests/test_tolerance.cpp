#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "deptol/tolerance.hpp"
#include "oracles.hpp"

using namespace deptol;

namespace {
const Dataset kFive{{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}};

ToleranceSpec expectation_spec(double beta) {
  ToleranceSpec s;
  s.beta = beta;
  s.kind = ToleranceKind::kExpectation;
  return s;
}
}  // namespace

TEST_CASE("plan_expectation: exact arithmetic and rounding") {
  const auto p9 = plan_expectation(9, 0.5);
  CHECK(p9.threshold_rank == 5);
  CHECK(p9.achieved == doctest::Approx(0.5));

  const auto p299 = plan_expectation(299, 0.9);
  CHECK(p299.threshold_rank == 270);
  CHECK(p299.achieved == doctest::Approx(0.9));

  // (n+1) beta = 270.9 rounds half-up to 271
  const auto p300 = plan_expectation(300, 0.9);
  CHECK(p300.threshold_rank == 271);
  CHECK(p300.achieved == doctest::Approx(beta_mean(271, 301 - 271)));

  CHECK(plan_expectation(1, 0.99).threshold_rank == 1);  // clamped
}

TEST_CASE("plan_content: candidate choice by the closer Beta tail") {
  // n=300: raw rank 270 + 1.644854 * sqrt(27) = 278.55
  const auto p300 = plan_content(300, 0.9, 0.95);
  CHECK((p300.threshold_rank == 278 || p300.threshold_rank == 279));
  const double t278 = 1.0 - reg_inc_beta(278, 23, 0.9);
  const double t279 = 1.0 - reg_inc_beta(279, 22, 0.9);
  const double chosen = 1.0 - reg_inc_beta(p300.threshold_rank,
                                           301.0 - p300.threshold_rank, 0.9);
  CHECK(p300.achieved == doctest::Approx(chosen));
  CHECK(std::abs(chosen - 0.95) <=
        std::min(std::abs(t278 - 0.95), std::abs(t279 - 0.95)) + 1e-15);

  // n=1000: raw rank 900 + 1.644854 * sqrt(90) = 915.60
  const auto p1000 = plan_content(1000, 0.9, 0.95);
  CHECK((p1000.threshold_rank == 915 || p1000.threshold_rank == 916));

  // gamma = 0.5 has a vanishing normal quantile: raw rank = n beta
  const auto phalf = plan_content(200, 0.9, 0.5);
  CHECK(phalf.threshold_rank == 180);
}

TEST_CASE("plan_content: infeasible tiny samples fail loudly") {
  CHECK_THROWS_AS(plan_content(5, 0.9, 0.99), Infeasible);
}

TEST_CASE("fit_region: threshold is the r_n-th largest depth") {
  const auto region = fit_region(kFive, expectation_spec(0.5), DepthKind::kMahalanobis);
  CHECK(region.plan.threshold_rank == 3);
  const DepthOrder order = depth_order(kFive, DepthKind::kMahalanobis);
  CHECK(region.threshold == order.depth_at_rank(3));

  // deepest sample point is in, the threshold point is out (strict >)
  CHECK(contains(region, kFive[4]));
  const Vec at_rank = kFive[order.ranked[2].index];
  CHECK(!contains(region, at_rank));
}

TEST_CASE("contains: external simplicial queries recheck against the oracle") {
  const Dataset data = sample_dist(Distribution::std_bivariate_normal(), 40, {71, 0});
  const auto region = fit_region(data, expectation_spec(0.8), DepthKind::kSimplicial);

  CHECK(!contains(region, {50, 50}));  // depth zero far outside

  UniformSource u({71, 1});
  for (int probe = 0; probe < 1000; ++probe) {
    const Vec x{u.open01() * 6 - 3, u.open01() * 6 - 3};
    const bool in = contains(region, x);
    const double oracle_depth = simplicial_depth_naive(x, data).value();
    CHECK(in == (oracle_depth > region.query_threshold()));
  }

  // every retained sample point sits inside the stored hull
  REQUIRE(region.hull.has_value());
  for (std::size_t idx : retained_indices(region))
    CHECK(point_in_polygon(*region.hull, {data[idx][0], data[idx][1]}));
}

TEST_CASE("region nesting in the threshold rank") {
  const Dataset data = sample_dist(Distribution::std_bivariate_normal(), 60, {72, 0});
  const DepthOrder order = depth_order(data, DepthKind::kSimplicial);

  ToleranceRegion inner, outer;
  inner.spec = outer.spec = expectation_spec(0.5);
  inner.depth_kind = outer.depth_kind = DepthKind::kSimplicial;
  inner.reference = outer.reference = data;
  inner.plan = {30, 60, 0.0};
  outer.plan = {45, 60, 0.0};
  inner.threshold = order.depth_at_rank(30);
  outer.threshold = order.depth_at_rank(45);

  CHECK(outer.threshold <= inner.threshold);
  UniformSource u({72, 1});
  for (int probe = 0; probe < 400; ++probe) {
    const Vec x{u.open01() * 6 - 3, u.open01() * 6 - 3};
    if (contains(inner, x)) CHECK(contains(outer, x));
  }
}

TEST_CASE("affine maps keep the retained index set") {
  const Dataset data = sample_dist(Distribution::std_bivariate_normal(), 50, {73, 0});
  for (DepthKind kind : {DepthKind::kMahalanobis, DepthKind::kSimplicial}) {
    const auto region = fit_region(data, expectation_spec(0.8), kind);
    const auto base = retained_indices(region);

    Dataset mapped;
    for (const auto& v : data)
      mapped.push_back({2.0 * v[0] + 0.5 * v[1] - 3.0, -0.25 * v[0] + 1.5 * v[1] + 8.0});
    const auto mapped_region = fit_region(mapped, expectation_spec(0.8), kind);
    CHECK(retained_indices(mapped_region) == base);
  }
}

TEST_CASE("population_region: planar normal closed form") {
  const auto region = population_region(Distribution::std_bivariate_normal(), 0.9,
                                        DepthKind::kMahalanobis);
  CHECK(region.quad_level == doctest::Approx(4.605170).epsilon(1e-6));
  CHECK(region.eta == doctest::Approx(0.178407).epsilon(1e-5));
  CHECK(region.area == doctest::Approx(3.14159265358979 * 4.6051701859880914).epsilon(1e-9));

  // beta -> 0 shrinks the region to the center
  const auto tiny = population_region(Distribution::std_bivariate_normal(), 1e-9,
                                      DepthKind::kMahalanobis);
  CHECK(tiny.eta == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(population_region(Distribution::std_bivariate_normal(), 0.9,
                                    DepthKind::kSimplicial),
                  Unsupported);
  CHECK_THROWS_AS(population_region(Distribution::std_bivariate_cauchy(), 0.9,
                                    DepthKind::kMahalanobis),
                  Unsupported);
}

TEST_CASE("population_region: fresh-draw coverage matches beta") {
  const auto dist = Distribution::std_bivariate_normal();
  const auto region = population_region(dist, 0.9, DepthKind::kMahalanobis);
  const std::size_t reps = 100000;
  std::size_t hits = 0;
  const Dataset draws = sample_dist(dist, reps, {74, 0});
  for (const auto& x : draws)
    if (region.contains(x)) ++hits;
  const double frac = static_cast<double>(hits) / reps;
  CHECK(std::abs(frac - 0.9) <= 3.0 * std::sqrt(0.9 * 0.1 / reps));

  // closed form beats Monte Carlo when the law matches
  CHECK(coverage_of_region(region, dist, 10, {74, 1}) == 0.9);
}

TEST_CASE("coverage_of_region: fitted expectation region near its target") {
  const auto dist = Distribution::std_bivariate_normal();
  const Dataset data = sample_dist(dist, 300, {75, 0});
  const auto region = fit_region(data, expectation_spec(0.9), DepthKind::kMahalanobis);
  const double cov = coverage_of_region(region, dist, 20000, {75, 1});
  CHECK(cov > 0.8);
  CHECK(cov < 0.97);
}

TEST_CASE("minimality_gap: a region equal to the population region has no gap") {
  const auto dist = Distribution::std_bivariate_normal();
  Dataset data = sample_dist(dist, 400, {76, 0});
  // standardize so the sample moments are the population moments; with the
  // threshold forced to eta the fitted set IS the population ellipse
  const auto [mean, cov] = sample_cov(data);
  const Matrix lower = cholesky(cov);
  for (auto& v : data) v = forward_solve(lower, {v[0] - mean[0], v[1] - mean[1]});

  auto region = fit_region(data, expectation_spec(0.9), DepthKind::kMahalanobis);
  const auto pop = population_region(dist, 0.9, DepthKind::kMahalanobis);
  region.threshold = pop.eta;

  const auto self_gap = minimality_gap(region, dist, 50000, {76, 9});
  const double box_se = self_gap.probe_box_area / (2.0 * std::sqrt(50000.0));
  CHECK(self_gap.sym_diff_area <= 3.0 * box_se);
  CHECK(self_gap.sym_diff_area <= 0.02 * self_gap.population_area);
  CHECK(self_gap.population_area == doctest::Approx(pop.area));

  // an honestly fitted region at n=400 keeps a modest but positive gap
  const auto fitted = fit_region(data, expectation_spec(0.9), DepthKind::kMahalanobis);
  const auto gap = minimality_gap(fitted, dist, 50000, {76, 1});
  CHECK(gap.sym_diff_area >= 0.0);
  CHECK(gap.ratio < 0.35);
}

TEST_CASE("minimality_gap: median ratio shrinks with n") {
  const auto dist = Distribution::std_bivariate_normal();
  auto median_ratio = [&](std::size_t n) {
    std::vector<double> ratios;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      const RngState rng = RngState{77, 0}.child(rep + (n << 8));
      const Dataset data = sample_dist(dist, n, rng.child(0));
      const auto region = fit_region(data, expectation_spec(0.9), DepthKind::kMahalanobis);
      ratios.push_back(minimality_gap(region, dist, 20000, rng.child(1)).ratio);
    }
    return oracles::median(ratios);
  };
  const double at100 = median_ratio(100);
  const double at1000 = median_ratio(1000);
  CHECK(at1000 < at100);
  CHECK(at1000 < 0.10);
}

TEST_CASE("depth rank gap: standardized sample collapses the gap") {
  const auto dist = Distribution::std_bivariate_normal();
  Dataset data = sample_dist(dist, 200, {78, 0});
  // force sample moments to the population values
  const auto [mean, cov] = sample_cov(data);
  const Matrix lower = cholesky(cov);
  for (auto& v : data) {
    const Vec y = forward_solve(lower, {v[0] - mean[0], v[1] - mean[1]});
    v = y;
  }
  const auto gap = depth_rank_gap(data, dist, 180);
  CHECK(gap.rank_gap <= 1e-9);

  // boundary ranks run fine
  const Dataset small = sample_dist(dist, 50, {78, 1});
  CHECK(depth_rank_gap(small, dist, 1).rank_gap >= 0.0);
  CHECK(depth_rank_gap(small, dist, 50).rank_gap >= 0.0);
  CHECK_THROWS_AS(depth_rank_gap(small, dist, 0), DomainError);
  CHECK_THROWS_AS(depth_rank_gap(small, dist, 51), DomainError);
}

TEST_CASE("depth rank gap: larger samples track the population order stat") {
  const auto dist = Distribution::std_bivariate_normal();
  auto median_gap = [&](std::size_t n) {
    std::vector<double> gaps;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const Dataset data =
          sample_dist(dist, n, RngState{79, 0}.child(rep + (n << 10)));
      const std::size_t r = static_cast<std::size_t>(std::ceil(0.9 * n));
      gaps.push_back(depth_rank_gap(data, dist, r).rank_gap);
    }
    return oracles::median(gaps);
  };
  CHECK(median_gap(2000) < median_gap(100));
}

TEST_CASE("spec validation") {
  ToleranceSpec bad;
  bad.beta = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.beta = 0.9;
  bad.gamma = 0.0;
  bad.kind = ToleranceKind::kContent;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.kind = ToleranceKind::kExpectation;
  CHECK_NOTHROW(bad.validate());
}
