#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "deptol/depth.hpp"
#include "deptol/rng.hpp"

namespace deptol {

// Sample indices sorted by descending depth; ties keep ascending index order.
struct DepthOrder {
  struct Entry {
    std::size_t index;  // position in the original dataset
    double depth;
  };
  std::vector<Entry> ranked;

  std::size_t size() const { return ranked.size(); }
  // Depth of the r-th deepest point, 1-based.
  double depth_at_rank(std::size_t r) const { return ranked.at(r - 1).depth; }
};

// One depth shell: depths in (lower, upper], with the innermost shell open
// above (upper bound is the sup of the depth, kept symbolic) and the
// outermost shell covering everything at or below the last order statistic.
struct Spacing {
  std::size_t index = 1;                // 1..n+1, center outward
  std::optional<double> upper;          // nullopt = sup of the depth
  double lower = 0.0;
  bool outermost = false;               // membership flips to depth <= upper

  bool contains_depth(double depth) const {
    if (outermost) return depth <= *upper;
    if (upper && depth > *upper) return false;
    return depth > lower;
  }
};

DepthOrder depth_order(const Dataset& data, DepthKind kind);

// The n+1 center-outward shells determined by a depth ordering.
std::vector<Spacing> multivariate_spacings(const DepthOrder& order);

// Index (1..n+1) of the unique spacing whose membership rule a depth value
// satisfies. A sample point's own depth lands one shell out (strict lower
// bounds), so the r-th deepest point reports spacing r+1.
std::size_t spacing_index_of(const std::vector<Spacing>& spacings, double depth);

// Monte-Carlo estimate of the probability mass a shell carries under dist,
// using population depth (mahalanobis with known moments).
double spacing_coverage(const Spacing& spacing, const Distribution& dist,
                        DepthKind kind, std::size_t reps, RngState rng);

// Same estimate with depths taken against a frozen reference sample, for
// distributions without a population depth.
double spacing_coverage(const Spacing& spacing, const Distribution& dist,
                        const Dataset& reference, DepthKind kind,
                        std::size_t reps, RngState rng);

// Gaps between consecutive order statistics of a univariate sample.
struct UnivariateSpacings {
  std::vector<double> gaps;                         // n+1 lengths
  std::vector<std::pair<double, double>> intervals; // matching (lo, hi)
  double support_lo = 0.0;
  double support_hi = 1.0;
};

// Requires data sorted ascending unless allow_unsorted, and support
// covering the sample range.
UnivariateSpacings univariate_spacings(const std::vector<double>& data,
                                       double support_lo, double support_hi,
                                       bool allow_unsorted = false);

// Uniform spacings realized as normalized exponentials; the n+1 values sum
// to one exactly.
std::vector<double> exponential_spacings(std::size_t n, RngState rng);

// Wilks' distribution-free interval (X_[r], X_[n-r+1]].
struct WilksInterval {
  double lower;  // exclusive
  double upper;  // inclusive
};

WilksInterval wilks_interval(std::vector<double> data, std::size_t r);

}  // namespace deptol
