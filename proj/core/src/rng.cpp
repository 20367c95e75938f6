#include "deptol/rng.hpp"

#include <cmath>
#include <numbers>

namespace deptol {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngState RngState::child(std::uint64_t label) const {
  return {seed, splitmix64(stream ^ splitmix64(label + 0x632be59bd9b4e019ULL))};
}

UniformSource::UniformSource(RngState state) : engine_(0) {
  std::seed_seq seq{static_cast<std::uint32_t>(state.seed),
                    static_cast<std::uint32_t>(state.seed >> 32),
                    static_cast<std::uint32_t>(state.stream),
                    static_cast<std::uint32_t>(state.stream >> 32)};
  engine_.seed(seq);
}

double UniformSource::halfopen01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double UniformSource::open01() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double UniformSource::standard_normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  const double u1 = open01();
  const double u2 = open01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  return r * std::cos(theta);
}

Distribution Distribution::std_bivariate_normal() {
  return {DistTag::kBivariateNormalStd, {}, {}};
}

Distribution Distribution::normal(Vec mu, Matrix sigma) {
  if (mu.size() != sigma.size()) throw DimensionMismatch("normal(): mu/sigma mismatch");
  Distribution d;
  d.tag = DistTag::kNormal;
  d.mu = std::move(mu);
  d.sigma = std::move(sigma);
  return d;
}

Distribution Distribution::std_bivariate_cauchy() {
  return {DistTag::kBivariateCauchyStd, {}, {}};
}

Distribution Distribution::bivariate_exponential() {
  return {DistTag::kBivariateExponential, {}, {}};
}

std::size_t Distribution::dim() const {
  return tag == DistTag::kNormal ? mu.size() : 2;
}

std::optional<std::pair<Vec, Matrix>> Distribution::moments() const {
  switch (tag) {
    case DistTag::kBivariateNormalStd:
      return std::make_pair(Vec{0.0, 0.0}, Matrix::identity(2));
    case DistTag::kNormal:
      return std::make_pair(mu, sigma);
    case DistTag::kBivariateExponential:
      // Independent Exp(1) marginals: unit means, unit variances.
      return std::make_pair(Vec{1.0, 1.0}, Matrix::identity(2));
    case DistTag::kBivariateCauchyStd:
      return std::nullopt;
  }
  return std::nullopt;
}

const char* Distribution::name() const {
  switch (tag) {
    case DistTag::kBivariateNormalStd: return "normal";
    case DistTag::kNormal: return "normal-custom";
    case DistTag::kBivariateCauchyStd: return "cauchy";
    case DistTag::kBivariateExponential: return "exponential";
  }
  return "?";
}

Dataset sample_dist(const Distribution& dist, std::size_t n, RngState rng) {
  if (n < 1) throw DomainError("sample_dist requires n >= 1");
  UniformSource u(rng);
  Dataset out;
  out.reserve(n);

  switch (dist.tag) {
    case DistTag::kBivariateNormalStd: {
      for (std::size_t i = 0; i < n; ++i)
        out.push_back({u.standard_normal(), u.standard_normal()});
      break;
    }
    case DistTag::kNormal: {
      const std::size_t p = dist.mu.size();
      const Matrix lower = cholesky(dist.sigma);
      for (std::size_t i = 0; i < n; ++i) {
        Vec z(p);
        for (auto& zi : z) zi = u.standard_normal();
        Vec x = dist.mu;
        for (std::size_t r = 0; r < p; ++r)
          for (std::size_t c = 0; c <= r; ++c) x[r] += lower.at(r, c) * z[c];
        out.push_back(std::move(x));
      }
      break;
    }
    case DistTag::kBivariateCauchyStd: {
      // Z / sqrt(W) with Z ~ N(0, I2) and W ~ chi-square(1).
      for (std::size_t i = 0; i < n; ++i) {
        const double z1 = u.standard_normal();
        const double z2 = u.standard_normal();
        const double g = normal_quantile(u.open01());
        const double w = std::max(g * g, 1e-300);
        const double s = 1.0 / std::sqrt(w);
        out.push_back({z1 * s, z2 * s});
      }
      break;
    }
    case DistTag::kBivariateExponential: {
      for (std::size_t i = 0; i < n; ++i)
        out.push_back({-std::log(u.open01()), -std::log(u.open01())});
      break;
    }
  }
  return out;
}

}  // namespace deptol
