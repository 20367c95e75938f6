#include "deptol/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "deptol/constants.hpp"

namespace deptol {

const char* to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::kMahalanobis: return "mahalanobis";
    case DepthKind::kSimplicial: return "simplicial";
    case DepthKind::kSimplicialNaive: return "simplicial-naive";
  }
  return "?";
}

DepthKind depth_kind_from_string(const std::string& name) {
  if (name == "mahalanobis") return DepthKind::kMahalanobis;
  if (name == "simplicial") return DepthKind::kSimplicial;
  if (name == "simplicial-naive") return DepthKind::kSimplicialNaive;
  throw DomainError("unknown depth kind: " + name);
}

DepthKind default_depth_kind(std::size_t p) {
  return p == 2 ? DepthKind::kSimplicial : DepthKind::kMahalanobis;
}

namespace {

int sign_with_band(double v, double scale) {
  if (std::abs(v) <= tol::kOrientTol * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

// Sign of the 2-D cross product a x b around a common origin.
int cross_sign(double ax, double ay, double bx, double by) {
  const double v = ax * by - ay * bx;
  const double scale = (std::abs(ax) + std::abs(ay)) * (std::abs(bx) + std::abs(by));
  return sign_with_band(v, scale);
}

int dot_sign(double ax, double ay, double bx, double by) {
  const double v = ax * bx + ay * by;
  const double scale = (std::abs(ax) + std::abs(ay)) * (std::abs(bx) + std::abs(by));
  return sign_with_band(v, scale);
}

struct Dir {
  double x, y;
};

// Strictly counterclockwise of `base` by less than a half turn. Exactly a
// half turn (antipodal) is excluded, as is the same direction.
bool in_open_half(const Dir& base, const Dir& d) {
  return cross_sign(base.x, base.y, d.x, d.y) > 0;
}

bool same_direction(const Dir& base, const Dir& d) {
  return cross_sign(base.x, base.y, d.x, d.y) == 0 &&
         dot_sign(base.x, base.y, d.x, d.y) > 0;
}

// Containment of the origin in the closed hull of up to three nonzero
// direction vectors: the hull misses the origin iff some open half-plane
// through the origin holds every vector, i.e. iff one of them "leads" the
// rest within less than a half turn.
bool directions_admit_open_halfplane(const std::vector<Dir>& dirs) {
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    bool leader = true;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      if (j == i) continue;
      if (!(same_direction(dirs[i], dirs[j]) || in_open_half(dirs[i], dirs[j]))) {
        leader = false;
        break;
      }
    }
    if (leader) return true;
  }
  return false;
}

bool point_in_triangle_2d(const Vec& x, const Dataset& vertices) {
  std::vector<Dir> dirs;
  dirs.reserve(3);
  for (const auto& v : vertices) {
    const double dx = v[0] - x[0];
    const double dy = v[1] - x[1];
    if (dx == 0.0 && dy == 0.0) return true;  // x coincides with a vertex
    dirs.push_back({dx, dy});
  }
  return !directions_admit_open_halfplane(dirs);
}

bool point_in_segment_1d(double x, double a, double b) {
  return x >= std::min(a, b) && x <= std::max(a, b);
}

// Barycentric membership for k affinely independent points given in d = k-1
// coordinates: solve sum(lambda_i c_i) = cx, sum(lambda_i) = 1.
bool barycentric_contains(const std::vector<Vec>& coords, const Vec& cx) {
  const std::size_t m = coords.size();  // = d + 1
  std::vector<std::vector<double>> aug(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t j = 0; j + 1 < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug[j][i] = coords[i][j];
    aug[j][m] = cx[j];
  }
  for (std::size_t i = 0; i < m; ++i) aug[m - 1][i] = 1.0;
  aug[m - 1][m] = 1.0;

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    std::swap(aug[col], aug[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = aug[r][col] / aug[col][col];
      for (std::size_t c = col; c <= m; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (aug[i][m] / aug[i][i] < -1e-12) return false;
  return true;
}

// General p: project onto the affine span of the vertices, then use
// barycentric coordinates; affinely dependent sets fall back to Caratheodory
// (a point of the hull lies in the hull of some affinely independent subset).
bool hull_contains_general(const Vec& x, const Dataset& vertices) {
  const std::size_t p = x.size();
  const std::size_t k = vertices.size();

  double scale = 1.0;
  for (const auto& v : vertices)
    for (double c : v) scale = std::max(scale, std::abs(c));
  for (double c : x) scale = std::max(scale, std::abs(c));
  const double eps = 1e-12 * scale;

  if (k == 1) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = x[j] - vertices[0][j];
      r2 += d * d;
    }
    return std::sqrt(r2) <= eps;
  }

  // Orthonormal basis of span{v_i - v_0} by Gram-Schmidt with rank control.
  std::vector<Vec> basis;
  for (std::size_t i = 1; i < k; ++i) {
    Vec w(p);
    for (std::size_t j = 0; j < p; ++j) w[j] = vertices[i][j] - vertices[0][j];
    for (const auto& q : basis) {
      double dot = 0.0;
      for (std::size_t j = 0; j < p; ++j) dot += w[j] * q[j];
      for (std::size_t j = 0; j < p; ++j) w[j] -= dot * q[j];
    }
    double norm = 0.0;
    for (double c : w) norm += c * c;
    norm = std::sqrt(norm);
    if (norm > eps) {
      for (double& c : w) c /= norm;
      basis.push_back(std::move(w));
    }
  }
  const std::size_t d = basis.size();

  // x must lie in the affine span at all.
  Vec dx(p);
  for (std::size_t j = 0; j < p; ++j) dx[j] = x[j] - vertices[0][j];
  Vec cx(d, 0.0);
  Vec resid = dx;
  for (std::size_t b = 0; b < d; ++b) {
    double dot = 0.0;
    for (std::size_t j = 0; j < p; ++j) dot += dx[j] * basis[b][j];
    cx[b] = dot;
    for (std::size_t j = 0; j < p; ++j) resid[j] -= dot * basis[b][j];
  }
  double rn = 0.0;
  for (double c : resid) rn += c * c;
  if (std::sqrt(rn) > eps) return false;

  if (k == d + 1) {
    std::vector<Vec> coords(k, Vec(d, 0.0));
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t b = 0; b < d; ++b) {
        double dot = 0.0;
        for (std::size_t j = 0; j < p; ++j)
          dot += (vertices[i][j] - vertices[0][j]) * basis[b][j];
        coords[i][b] = dot;
      }
    return barycentric_contains(coords, cx);
  }

  // Affinely dependent: drop one vertex at a time.
  for (std::size_t drop = 0; drop < k; ++drop) {
    Dataset sub;
    sub.reserve(k - 1);
    for (std::size_t i = 0; i < k; ++i)
      if (i != drop) sub.push_back(vertices[i]);
    if (hull_contains_general(x, sub)) return true;
  }
  return false;
}

std::uint64_t choose3(std::uint64_t n) {
  return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

}  // namespace

int orient_sign(double ox, double oy, double ax, double ay, double bx, double by) {
  return cross_sign(ax - ox, ay - oy, bx - ox, by - oy);
}

bool point_in_simplex(const Vec& x, const Dataset& vertices) {
  const std::size_t p = x.size();
  if (vertices.size() != p + 1)
    throw DimensionMismatch("point_in_simplex expects p+1 vertices");
  for (const auto& v : vertices)
    if (v.size() != p) throw DimensionMismatch("vertex dimension mismatch");

  if (p == 1) {
    double lo = vertices[0][0], hi = vertices[0][0];
    for (const auto& v : vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return x[0] >= lo && x[0] <= hi;
  }
  if (p == 2) return point_in_triangle_2d(x, vertices);
  return hull_contains_general(x, vertices);
}

SimplicialCount simplicial_depth_naive(const Vec& x, const Dataset& data) {
  const std::size_t p = x.size();
  const std::size_t n = data.size();
  if (n < p + 1) throw TooFewPoints("simplicial depth needs at least p+1 points");
  for (const auto& v : data)
    if (v.size() != p) throw DimensionMismatch("data dimension mismatch");

  // Enumerate all (p+1)-subsets with a rolling index vector.
  std::vector<std::size_t> idx(p + 1);
  std::iota(idx.begin(), idx.end(), 0);
  SimplicialCount out;
  Dataset simplex(p + 1);
  while (true) {
    for (std::size_t i = 0; i <= p; ++i) simplex[i] = data[idx[i]];
    if (point_in_simplex(x, simplex)) ++out.contained;
    ++out.total;

    std::size_t i = p + 1;
    while (i-- > 0) {
      if (idx[i] != i + n - (p + 1)) {
        ++idx[i];
        for (std::size_t j = i + 1; j <= p; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

SimplicialCount simplicial_depth_fast2d(const Vec& x, const Dataset& data) {
  if (x.size() != 2) throw DimensionMismatch("fast 2-D path requires p = 2");
  const std::size_t n = data.size();
  if (n < 3) throw TooFewPoints("simplicial depth needs at least 3 points");
  for (const auto& v : data)
    if (v.size() != 2) throw DimensionMismatch("data dimension mismatch");

  // Directions from x to every non-coincident sample point. Triangles using
  // a coincident vertex always contain x, so only the rest need counting.
  std::vector<Dir> dirs;
  dirs.reserve(n);
  for (const auto& v : data) {
    const double dx = v[0] - x[0];
    const double dy = v[1] - x[1];
    if (dx == 0.0 && dy == 0.0) continue;
    dirs.push_back({dx, dy});
  }

  // Sort by angle: split at the x-axis ray, then order by cross sign.
  // Within a half turn the cross sign is a total order on distinct rays.
  auto half_of = [](const Dir& d) {
    if (d.y > 0.0) return 0;
    if (d.y < 0.0) return 1;
    return d.x > 0.0 ? 0 : 1;  // +x ray first, -x ray opens the lower half
  };
  std::sort(dirs.begin(), dirs.end(), [&](const Dir& a, const Dir& b) {
    const int ha = half_of(a), hb = half_of(b);
    if (ha != hb) return ha < hb;
    // Exact comparison keeps this a strict weak ordering; the tolerance
    // only enters when collapsing classes below.
    return a.x * b.y - a.y * b.x > 0.0;
  });

  // Collapse equal rays into classes with multiplicities.
  std::vector<Dir> ray;
  std::vector<std::uint64_t> mult;
  for (const auto& d : dirs) {
    if (!ray.empty() && same_direction(ray.back(), d)) {
      ++mult.back();
    } else {
      ray.push_back(d);
      mult.push_back(1);
    }
  }
  const std::size_t K = ray.size();

  // A triangle avoids x exactly when its three rays fit in an open half
  // plane; each such triple has a unique first ray ("leader"). For leader
  // class k the other two vertices come from ahead[k], the points strictly
  // within the open half turn past k. Sweep with a second pointer over the
  // doubled circular order.
  std::vector<std::uint64_t> prefix(2 * K + 1, 0);
  for (std::size_t i = 0; i < 2 * K; ++i) prefix[i + 1] = prefix[i] + mult[i % K];

  std::uint64_t bad = 0;
  std::size_t t = 1;
  for (std::size_t k = 0; k < K; ++k) {
    if (t < k + 1) t = k + 1;
    while (t < k + K && in_open_half(ray[k], ray[t % K])) ++t;
    const std::uint64_t ahead = prefix[t] - prefix[k + 1];
    bad += choose3(mult[k] + ahead) - choose3(ahead);
  }

  SimplicialCount out;
  out.total = choose3(n);
  out.contained = out.total - bad;
  return out;
}

double mahalanobis_depth(const Vec& x, const Vec& mu, const Matrix& sigma) {
  return 1.0 / (1.0 + quad_form_inv(x, mu, sigma));
}

double depth_wrt_sample(const Vec& x, const Dataset& data, DepthKind kind) {
  const std::size_t p = dimension(data);
  if (x.size() != p) throw DimensionMismatch("query dimension mismatch");
  switch (kind) {
    case DepthKind::kMahalanobis: {
      auto [mean, cov] = sample_cov(data);
      return mahalanobis_depth(x, mean, cov);
    }
    case DepthKind::kSimplicial:
      if (p == 2) return simplicial_depth_fast2d(x, data).value();
      return simplicial_depth_naive(x, data).value();
    case DepthKind::kSimplicialNaive:
      return simplicial_depth_naive(x, data).value();
  }
  throw DomainError("unknown depth kind");
}

double population_depth(const Vec& x, const Distribution& dist, DepthKind kind) {
  if (kind != DepthKind::kMahalanobis)
    throw Unsupported("population depth is only available for mahalanobis");
  const auto mom = dist.moments();
  if (!mom)
    throw Unsupported(std::string("no population moments for ") + dist.name());
  return mahalanobis_depth(x, mom->first, mom->second);
}

DepthEvaluator::DepthEvaluator(const Dataset& data, DepthKind kind)
    : data_(&data), kind_(kind) {
  if (kind_ == DepthKind::kMahalanobis) {
    auto [mean, cov] = sample_cov(data);
    mean_ = std::move(mean);
    chol_ = cholesky(cov);
  }
}

double DepthEvaluator::operator()(const Vec& x) const {
  switch (kind_) {
    case DepthKind::kMahalanobis:
      return 1.0 / (1.0 + quad_form_chol(x, mean_, chol_));
    case DepthKind::kSimplicial:
      if (x.size() == 2) return simplicial_depth_fast2d(x, *data_).value();
      return simplicial_depth_naive(x, *data_).value();
    case DepthKind::kSimplicialNaive:
      return simplicial_depth_naive(x, *data_).value();
  }
  throw DomainError("unknown depth kind");
}

}  // namespace deptol
