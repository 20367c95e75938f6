#include "deptol/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace deptol {

DepthOrder depth_order(const Dataset& data, DepthKind kind) {
  const DepthEvaluator eval(data, kind);
  DepthOrder order;
  order.ranked.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    order.ranked.push_back({i, eval(data[i])});
  std::stable_sort(order.ranked.begin(), order.ranked.end(),
                   [](const DepthOrder::Entry& a, const DepthOrder::Entry& b) {
                     if (a.depth != b.depth) return a.depth > b.depth;
                     return a.index < b.index;
                   });
  return order;
}

std::vector<Spacing> multivariate_spacings(const DepthOrder& order) {
  const std::size_t n = order.size();
  std::vector<Spacing> out;
  out.reserve(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    Spacing s;
    s.index = i;
    s.upper = (i == 1) ? std::optional<double>{} : order.depth_at_rank(i - 1);
    s.lower = order.depth_at_rank(i);
    out.push_back(s);
  }
  Spacing outer;
  outer.index = n + 1;
  outer.upper = n > 0 ? order.depth_at_rank(n) : 0.0;
  outer.lower = 0.0;
  outer.outermost = true;
  out.push_back(outer);
  return out;
}

std::size_t spacing_index_of(const std::vector<Spacing>& spacings, double depth) {
  for (const auto& s : spacings)
    if (s.contains_depth(depth)) return s.index;
  // Unreachable for a well-formed list: the shells partition depth space.
  throw DomainError("depth value matched no spacing");
}

double spacing_coverage(const Spacing& spacing, const Distribution& dist,
                        DepthKind kind, std::size_t reps, RngState rng) {
  if (reps < 1) throw DomainError("spacing_coverage requires reps >= 1");
  const Dataset draws = sample_dist(dist, reps, rng);
  std::size_t hits = 0;
  for (const auto& x : draws)
    if (spacing.contains_depth(population_depth(x, dist, kind))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reps);
}

double spacing_coverage(const Spacing& spacing, const Distribution& dist,
                        const Dataset& reference, DepthKind kind,
                        std::size_t reps, RngState rng) {
  if (reps < 1) throw DomainError("spacing_coverage requires reps >= 1");
  const DepthEvaluator eval(reference, kind);
  const Dataset draws = sample_dist(dist, reps, rng);
  std::size_t hits = 0;
  for (const auto& x : draws)
    if (spacing.contains_depth(eval(x))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(reps);
}

UnivariateSpacings univariate_spacings(const std::vector<double>& data,
                                       double support_lo, double support_hi,
                                       bool allow_unsorted) {
  std::vector<double> sorted = data;
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    if (!allow_unsorted) throw SupportViolation("sample is not sorted ascending");
    std::sort(sorted.begin(), sorted.end());
  }
  if (support_lo > support_hi) throw SupportViolation("support is empty");
  if (!sorted.empty() &&
      (support_lo > sorted.front() || support_hi < sorted.back()))
    throw SupportViolation("support does not cover the sample range");

  UnivariateSpacings out;
  out.support_lo = support_lo;
  out.support_hi = support_hi;
  double prev = support_lo;
  for (double v : sorted) {
    out.gaps.push_back(v - prev);
    out.intervals.emplace_back(prev, v);
    prev = v;
  }
  out.gaps.push_back(support_hi - prev);
  out.intervals.emplace_back(prev, support_hi);
  return out;
}

std::vector<double> exponential_spacings(std::size_t n, RngState rng) {
  UniformSource u(rng);
  std::vector<double> draws(n + 1);
  double sum = 0.0;
  for (auto& d : draws) {
    d = -std::log(u.open01());
    sum += d;
  }
  std::vector<double> w(n + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = draws[i] / sum;
    acc += w[i];
  }
  w[n] = 1.0 - acc;  // close the simplex exactly
  return w;
}

WilksInterval wilks_interval(std::vector<double> data, std::size_t r) {
  const std::size_t n = data.size();
  if (r < 1 || 2 * r >= n + 1)
    throw DomainError("wilks_interval requires 1 <= r < (n+1)/2");
  std::sort(data.begin(), data.end());
  return {data[r - 1], data[n - r]};
}

}  // namespace deptol
