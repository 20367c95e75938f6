#include "deptol/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "deptol/constants.hpp"

namespace deptol {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  n_ = rows.size();
  a_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionMismatch("Matrix initializer is not square");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

std::size_t dimension(const Dataset& data) {
  if (data.empty()) throw EmptyInput("dataset is empty");
  const std::size_t p = data.front().size();
  for (const auto& row : data)
    if (row.size() != p) throw DimensionMismatch("dataset rows have mixed dimensions");
  return p;
}

Matrix cholesky(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw EmptyInput("cholesky of empty matrix");

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(m.at(i, j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > tol::kSymmetryTol * std::max(1.0, scale))
        throw NotPositiveDefinite("matrix is not symmetric");

  Matrix lower(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower.at(j, k) * lower.at(j, k);
    if (d <= tol::kCholeskyPivotMin)
      throw NotPositiveDefinite("pivot " + std::to_string(j) + " is not positive");
    const double ljj = std::sqrt(d);
    lower.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
      lower.at(i, j) = s / ljj;
    }
  }
  return lower;
}

Vec forward_solve(const Matrix& lower, const Vec& b) {
  const std::size_t n = lower.size();
  if (b.size() != n) throw DimensionMismatch("forward_solve size mismatch");
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower.at(i, k) * y[k];
    y[i] = s / lower.at(i, i);
  }
  return y;
}

Vec backward_solve_transposed(const Matrix& lower, const Vec& b) {
  const std::size_t n = lower.size();
  if (b.size() != n) throw DimensionMismatch("backward_solve size mismatch");
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower.at(k, ii) * x[k];
    x[ii] = s / lower.at(ii, ii);
  }
  return x;
}

double quad_form_chol(const Vec& x, const Vec& mu, const Matrix& chol_lower) {
  const std::size_t n = chol_lower.size();
  if (x.size() != n || mu.size() != n)
    throw DimensionMismatch("quad_form dimension mismatch");
  Vec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - mu[i];
  const Vec y = forward_solve(chol_lower, d);
  double q = 0.0;
  for (double v : y) q += v * v;
  return q;
}

double quad_form_inv(const Vec& x, const Vec& mu, const Matrix& sigma) {
  return quad_form_chol(x, mu, cholesky(sigma));
}

namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for I_x(a,b), modified Lentz. Converges fast for
// x < (a+1)/(a+b+2); the caller applies the symmetry switch.
double inc_beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < tol::kIncBetaTarget) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("reg_inc_beta requires a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * inc_beta_cf(a, b, x) / a;
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

double beta_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_mean requires a > 0 and b > 0");
  return a / (a + b);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation to the standard normal quantile
// (relative error ~1.15e-9 before refinement).
double acklam_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("normal_quantile requires gamma in (0, 1)");
  double z = acklam_quantile(gamma);
  // One Halley step against the erfc-based CDF pins the result well below
  // the kNormalQuantileTol contract.
  for (int it = 0; it < 2; ++it) {
    const double e = normal_cdf(z) - gamma;
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf == 0.0) break;
    const double u = e / pdf;
    z -= u / (1.0 + 0.5 * z * u);
    if (std::abs(e) < tol::kNormalQuantileTol * 1e-3) break;
  }
  return z;
}

std::pair<Vec, Matrix> sample_cov(const Dataset& data) {
  const std::size_t p = dimension(data);
  const std::size_t n = data.size();
  if (n < 2) throw DegenerateSample("need at least two observations");

  Vec mean(p, 0.0);
  for (const auto& x : data)
    for (std::size_t j = 0; j < p; ++j) mean[j] += x[j];
  for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(n);

  Matrix cov(p);
  for (const auto& x : data)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        cov.at(i, j) += (x[i] - mean[i]) * (x[j] - mean[j]);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) cov.at(i, j) /= static_cast<double>(n - 1);

  try {
    cholesky(cov);
  } catch (const NotPositiveDefinite&) {
    throw DegenerateSample("sample covariance is not positive definite");
  }
  return {std::move(mean), std::move(cov)};
}

}  // namespace deptol
