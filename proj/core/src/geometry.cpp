#include "deptol/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "deptol/depth.hpp"
#include "deptol/errors.hpp"

namespace deptol {

Polygon2D convex_hull_2d(const std::vector<Point2>& points) {
  if (points.empty()) throw EmptyInput("convex hull of no points");

  std::vector<Point2> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polygon2D out;
  if (pts.size() == 1) {
    out.vertices = pts;
    out.degenerate = true;
    return out;
  }

  const auto n = pts.size();
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  // Lower chain, then upper; strict left turns only, so collinear interior
  // points are dropped.
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient_sign(hull[k - 2][0], hull[k - 2][1], hull[k - 1][0],
                                 hull[k - 1][1], pts[i][0], pts[i][1]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && orient_sign(hull[k - 2][0], hull[k - 2][1], hull[k - 1][0],
                                  hull[k - 1][1], pts[i][0], pts[i][1]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first

  out.vertices = std::move(hull);
  out.degenerate = out.vertices.size() < 3;
  return out;
}

namespace {

bool on_segment(const Point2& a, const Point2& b, const Point2& x) {
  if (orient_sign(a[0], a[1], b[0], b[1], x[0], x[1]) != 0) return false;
  return x[0] >= std::min(a[0], b[0]) && x[0] <= std::max(a[0], b[0]) &&
         x[1] >= std::min(a[1], b[1]) && x[1] <= std::max(a[1], b[1]);
}

}  // namespace

bool point_in_polygon(const Polygon2D& poly, const Point2& x) {
  const auto& v = poly.vertices;
  if (v.empty()) throw EmptyInput("membership query on empty polygon");

  if (poly.degenerate || v.size() < 3) {
    if (v.size() == 1) return v[0] == x;
    if (orient_sign(v[0][0], v[0][1], v[1][0], v[1][1], x[0], x[1]) != 0)
      throw DegeneratePolygon("query off the line of a degenerate polygon");
    return on_segment(v[0], v[1], x);
  }

  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    if (orient_sign(a[0], a[1], b[0], b[1], x[0], x[1]) < 0) return false;
  }
  return true;
}

double polygon_area(const Polygon2D& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::abs(twice);
}

}  // namespace deptol
