#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "deptol/errors.hpp"

namespace deptol {

// A p-dimensional observation. Dimension is carried by the length.
using Vec = std::vector<double>;

// An ordered sample of p-dimensional observations.
using Dataset = std::vector<Vec>;

// Dense square matrix, row major. Small p only (covariances, transforms).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Dimension of a dataset; verifies all rows agree.
std::size_t dimension(const Dataset& data);

// Lower-triangular L with L * L^T = m. Throws NotPositiveDefinite when a
// pivot drops to tol::kCholeskyPivotMin or the input is visibly asymmetric.
Matrix cholesky(const Matrix& m);

// Solves L * y = b for lower-triangular L.
Vec forward_solve(const Matrix& lower, const Vec& b);

// Solves L^T * x = b for lower-triangular L.
Vec backward_solve_transposed(const Matrix& lower, const Vec& b);

// (x - mu)' sigma^{-1} (x - mu), evaluated through a Cholesky factor.
double quad_form_inv(const Vec& x, const Vec& mu, const Matrix& sigma);

// Same quadratic form when the factor is already available.
double quad_form_chol(const Vec& x, const Vec& mu, const Matrix& chol_lower);

// Regularized incomplete beta I_x(a, b). Continued fraction with the
// symmetry switch at x > (a+1)/(a+b+2); absolute accuracy ~1e-10.
double reg_inc_beta(double a, double b, double x);

// Mean of Beta(a, b), i.e. a / (a + b).
double beta_mean(double a, double b);

// Standard normal CDF via erfc.
double normal_cdf(double z);

// Standard normal quantile; inverse of normal_cdf to ~1e-9.
double normal_quantile(double gamma);

// Sample mean and unbiased covariance (n-1 denominator). Throws
// DegenerateSample when the covariance is not positive definite.
std::pair<Vec, Matrix> sample_cov(const Dataset& data);

}  // namespace deptol
