#pragma once

#include <cstdint>
#include <string>

#include "deptol/numerics.hpp"
#include "deptol/rng.hpp"

namespace deptol {

enum class DepthKind { kMahalanobis, kSimplicial, kSimplicialNaive };

const char* to_string(DepthKind kind);
DepthKind depth_kind_from_string(const std::string& name);

// Default notion per dimension: simplicial in the plane, mahalanobis above.
DepthKind default_depth_kind(std::size_t p);

// Simplicial depth as an exact count over the C(n, p+1) closed simplices.
struct SimplicialCount {
  std::uint64_t contained = 0;
  std::uint64_t total = 0;
  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(contained) / static_cast<double>(total);
  }
};

// Sign with a scaled zero band (tol::kOrientTol); exact on inputs whose
// products are exactly representable (small integers in particular).
int orient_sign(double ox, double oy, double ax, double ay, double bx, double by);

// Closed-simplex membership, boundary inclusive, degenerate simplices
// handled as their lower-dimensional hulls. vertices.size() must be p+1.
bool point_in_simplex(const Vec& x, const Dataset& vertices);

// Exhaustive enumeration over all C(n, p+1) simplices. The reference oracle
// for any p; the only simplicial path for p >= 3.
SimplicialCount simplicial_depth_naive(const Vec& x, const Dataset& data);

// O(n log n) planar path via direction classes around x. Agrees with the
// naive count exactly, including duplicates, collinear runs and queries on
// simplex boundaries.
SimplicialCount simplicial_depth_fast2d(const Vec& x, const Dataset& data);

// [1 + (x - mu)' sigma^{-1} (x - mu)]^{-1}.
double mahalanobis_depth(const Vec& x, const Vec& mu, const Matrix& sigma);

// Depth of x with respect to a sample; mahalanobis uses sample moments.
double depth_wrt_sample(const Vec& x, const Dataset& data, DepthKind kind);

// Population depth for distributions with known location and dispersion.
// Simplicial population depth has no closed form and is rejected.
double population_depth(const Vec& x, const Distribution& dist, DepthKind kind);

// Precomputed evaluator for many queries against one fixed sample.
class DepthEvaluator {
 public:
  DepthEvaluator(const Dataset& data, DepthKind kind);

  double operator()(const Vec& x) const;
  DepthKind kind() const { return kind_; }

 private:
  const Dataset* data_;
  DepthKind kind_;
  Vec mean_;
  Matrix chol_;
};

}  // namespace deptol
