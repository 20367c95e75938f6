#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "deptol/depth.hpp"
#include "deptol/numerics.hpp"
#include "deptol/rng.hpp"
#include "oracles.hpp"

using namespace deptol;

namespace {

const Dataset kSquare{{0, 0}, {2, 0}, {0, 2}, {2, 2}};

Dataset apply_affine(const Dataset& data, double a, double b, double c, double d,
                     double tx, double ty) {
  Dataset out;
  out.reserve(data.size());
  for (const auto& v : data)
    out.push_back({a * v[0] + b * v[1] + tx, c * v[0] + d * v[1] + ty});
  return out;
}

}  // namespace

TEST_CASE("point_in_simplex: triangle interior, boundary, exterior") {
  const Dataset tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(point_in_simplex({0.25, 0.25}, tri));
  CHECK(point_in_simplex({0.5, 0.0}, tri));   // closed edge
  CHECK(point_in_simplex({0.0, 0.0}, tri));   // vertex
  CHECK(!point_in_simplex({1.0, 1.0}, tri));
  CHECK_THROWS_AS(point_in_simplex({0.5, 0.5}, Dataset{{0, 0}, {1, 0}}),
                  DimensionMismatch);
}

TEST_CASE("point_in_simplex: degenerate triangles collapse to their hulls") {
  const Dataset collinear{{0, 0}, {1, 0}, {2, 0}};
  CHECK(point_in_simplex({1.5, 0}, collinear));
  CHECK(!point_in_simplex({3, 0}, collinear));
  CHECK(!point_in_simplex({1, 0.1}, collinear));

  const Dataset doubled{{0, 0}, {0, 0}, {1, 1}};
  CHECK(point_in_simplex({0.5, 0.5}, doubled));
  CHECK(!point_in_simplex({2, 2}, doubled));

  const Dataset singular{{1, 1}, {1, 1}, {1, 1}};
  CHECK(point_in_simplex({1, 1}, singular));
  CHECK(!point_in_simplex({1, 2}, singular));
}

TEST_CASE("point_in_simplex: 1-D and 3-D paths") {
  CHECK(point_in_simplex({0.5}, Dataset{{0}, {1}}));
  CHECK(!point_in_simplex({1.5}, Dataset{{0}, {1}}));

  const Dataset tet{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(point_in_simplex({0.2, 0.2, 0.2}, tet));
  CHECK(point_in_simplex({0.5, 0.5, 0.0}, tet));  // face
  CHECK(!point_in_simplex({0.5, 0.5, 0.5}, tet));

  // flat tetrahedron: hull is a planar quadrilateral
  const Dataset flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(point_in_simplex({0.5, 0.5, 0.0}, flat));
  CHECK(!point_in_simplex({0.5, 0.5, 0.1}, flat));
}

TEST_CASE("simplicial_depth_naive: frozen enumeration values") {
  // single triangle containing its centroid
  const Dataset tri{{0, 0}, {3, 0}, {0, 3}};
  CHECK(simplicial_depth_naive({1, 1}, tri).value() == doctest::Approx(1.0));

  // all four triangles of the square contain the center (closed diagonals)
  const auto center = simplicial_depth_naive({1, 1}, kSquare);
  CHECK(center.contained == 4);
  CHECK(center.total == 4);

  const auto off = simplicial_depth_naive({0.5, 0.5}, kSquare);
  CHECK(off.contained == 3);
  CHECK(off.value() == doctest::Approx(0.75));

  CHECK_THROWS_AS(simplicial_depth_naive({0, 0}, Dataset{{1, 1}, {2, 2}}),
                  TooFewPoints);
}

TEST_CASE("simplicial fast2d equals naive on the frozen examples") {
  CHECK(simplicial_depth_fast2d({1, 1}, kSquare).contained == 4);
  CHECK(simplicial_depth_fast2d({0.5, 0.5}, kSquare).contained == 3);
}

TEST_CASE("simplicial fast2d equals naive on random configurations") {
  int checked = 0;
  for (int cfg = 0; cfg < 500; ++cfg) {
    UniformSource u({501, static_cast<std::uint64_t>(cfg)});
    const int n = 3 + static_cast<int>(u.halfopen01() * 58);
    Dataset data;
    for (int i = 0; i < n; ++i)
      data.push_back({u.open01() * 4 - 2, u.open01() * 4 - 2});
    const Vec probe{u.open01() * 4 - 2, u.open01() * 4 - 2};
    const auto a = simplicial_depth_naive(probe, data);
    const auto b = simplicial_depth_fast2d(probe, data);
    REQUIRE(a.contained == b.contained);
    // query coincident with a sample point
    const auto c = simplicial_depth_naive(data[0], data);
    const auto d = simplicial_depth_fast2d(data[0], data);
    REQUIRE(c.contained == d.contained);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("simplicial fast2d equals naive on adversarial configurations") {
  const Dataset adv{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {2, 1},
                    {1, 1}, {0, 2}, {2, 2}, {1, 3}, {2, 0}, {0, 0}, {3, 3}};
  for (double x = -1; x <= 4; x += 0.25) {
    for (double y = -1; y <= 4; y += 0.25) {
      const auto a = simplicial_depth_naive({x, y}, adv);
      const auto b = simplicial_depth_fast2d({x, y}, adv);
      REQUIRE(a.contained == b.contained);
    }
  }
  // collinear triples with the query on an edge
  const Dataset rows{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {2, 1}};
  for (double x = -0.5; x <= 4.5; x += 0.5) {
    const auto a = simplicial_depth_naive({x, 0}, rows);
    const auto b = simplicial_depth_fast2d({x, 0}, rows);
    REQUIRE(a.contained == b.contained);
  }
}

TEST_CASE("simplicial depth values are multiples of 1/C(n,3) in [0,1]") {
  UniformSource u({61, 0});
  Dataset data;
  for (int i = 0; i < 24; ++i) data.push_back({u.open01(), u.open01()});
  const double total = 24.0 * 23.0 * 22.0 / 6.0;
  for (int q = 0; q < 24; ++q) {
    const auto d = simplicial_depth_fast2d(data[q], data);
    CHECK(d.total == static_cast<std::uint64_t>(total));
    const double v = d.value();
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(std::abs(v * total - std::round(v * total)) <= 1e-9);
  }
}

TEST_CASE("mahalanobis_depth: closed-form spot values") {
  CHECK(mahalanobis_depth({0, 0}, {0, 0}, Matrix::identity(2)) == doctest::Approx(1.0));
  CHECK(mahalanobis_depth({1, 0}, {0, 0}, Matrix::identity(2)) == doctest::Approx(0.5));
  CHECK(mahalanobis_depth({3, 4}, {0, 0}, Matrix::identity(2)) ==
        doctest::Approx(1.0 / 26.0));
}

TEST_CASE("mahalanobis affine invariance") {
  UniformSource u({91, 2});
  const Matrix sigma{{3, 1}, {1, 1}};
  const Vec mu{1, -1};
  for (int trial = 0; trial < 25; ++trial) {
    const double a = 0.5 + u.open01() * 2, b = u.open01() - 0.5;
    const double c = u.open01() - 0.5, d = 0.5 + u.open01() * 2;
    const double tx = u.open01() * 4 - 2, ty = u.open01() * 4 - 2;
    const Vec x{u.open01() * 4 - 2, u.open01() * 4 - 2};

    const Vec ax{a * x[0] + b * x[1] + tx, c * x[0] + d * x[1] + ty};
    const Vec amu{a * mu[0] + b * mu[1] + tx, c * mu[0] + d * mu[1] + ty};
    // A sigma A'
    const double s00 = sigma.at(0, 0), s01 = sigma.at(0, 1), s11 = sigma.at(1, 1);
    Matrix asig(2);
    asig.at(0, 0) = a * (a * s00 + b * s01) + b * (a * s01 + b * s11);
    asig.at(0, 1) = c * (a * s00 + b * s01) + d * (a * s01 + b * s11);
    asig.at(1, 0) = asig.at(0, 1);
    asig.at(1, 1) = c * (c * s00 + d * s01) + d * (c * s01 + d * s11);

    CHECK(mahalanobis_depth(ax, amu, asig) ==
          doctest::Approx(mahalanobis_depth(x, mu, sigma)).epsilon(1e-9));
  }
}

TEST_CASE("simplicial affine invariance is exact on counts") {
  UniformSource u({92, 5});
  Dataset data;
  for (int i = 0; i < 30; ++i) data.push_back({u.open01() * 2, u.open01() * 2});
  const Vec x{1.0, 1.0};
  const auto base = simplicial_depth_fast2d(x, data);
  // well-conditioned maps only
  const double maps[][6] = {{2, 0, 0, 2, 3, -1},
                            {1, 0.5, -0.5, 1, 0, 0},
                            {0.6, -0.8, 0.8, 0.6, 10, 10},
                            {3, 1, 0, 2, -5, 2}};
  for (const auto& m : maps) {
    const Dataset td = apply_affine(data, m[0], m[1], m[2], m[3], m[4], m[5]);
    const Vec tx{m[0] * x[0] + m[1] * x[1] + m[4], m[2] * x[0] + m[3] * x[1] + m[5]};
    CHECK(simplicial_depth_fast2d(tx, td).contained == base.contained);
  }
}

TEST_CASE("depth_wrt_sample: contracts per kind") {
  const Dataset data = sample_dist(Distribution::std_bivariate_normal(), 40, {7, 7});
  const auto [mean, cov] = sample_cov(data);
  CHECK(depth_wrt_sample(mean, data, DepthKind::kMahalanobis) == doctest::Approx(1.0));

  CHECK(depth_wrt_sample({100, 100}, data, DepthKind::kSimplicial) == 0.0);

  // sample-point query agrees with the exhaustive oracle
  const auto oracle = simplicial_depth_naive(kSquare[0], kSquare);
  CHECK(depth_wrt_sample(kSquare[0], kSquare, DepthKind::kSimplicial) ==
        doctest::Approx(oracle.value()));
  CHECK(oracle.contained == 3);  // 3 of the 4 triangles touch the corner
}

TEST_CASE("population_depth: closed forms and unsupported combinations") {
  const auto std2 = Distribution::std_bivariate_normal();
  CHECK(population_depth({0, 0}, std2, DepthKind::kMahalanobis) == doctest::Approx(1.0));
  CHECK(population_depth({1, 0}, std2, DepthKind::kMahalanobis) == doctest::Approx(0.5));

  const auto inv = oracles::invert_2x2(3, 1, 1, 1);
  const double expect = 1.0 / (1.0 + oracles::quad_form_2x2(1, 1, inv));
  const auto custom = Distribution::normal({0, 0}, Matrix{{3, 1}, {1, 1}});
  CHECK(population_depth({1, 1}, custom, DepthKind::kMahalanobis) ==
        doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(population_depth({0, 0}, std2, DepthKind::kSimplicial), Unsupported);
  CHECK_THROWS_AS(
      population_depth({0, 0}, Distribution::std_bivariate_cauchy(), DepthKind::kMahalanobis),
      Unsupported);
}

TEST_CASE("sample mahalanobis depth converges uniformly on a grid") {
  const auto dist = Distribution::std_bivariate_normal();
  auto grid_gap = [&](std::size_t n, std::uint64_t stream) {
    const Dataset data = sample_dist(dist, n, {333, stream});
    const DepthEvaluator eval(data, DepthKind::kMahalanobis);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const Vec x{-3.0 + 0.3 * i, -3.0 + 0.3 * j};
        worst = std::max(worst,
                         std::abs(eval(x) - population_depth(x, dist, DepthKind::kMahalanobis)));
      }
    return worst;
  };
  std::vector<double> small, large;
  for (std::uint64_t s = 0; s < 20; ++s) {
    small.push_back(grid_gap(100, s));
    large.push_back(grid_gap(10000, 1000 + s));
  }
  CHECK(oracles::median(large) < oracles::median(small));
}
