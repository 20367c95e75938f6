#pragma once

#include <array>
#include <vector>

#include "deptol/numerics.hpp"

namespace deptol {

using Point2 = std::array<double, 2>;

// Convex polygon, counterclockwise, closing edge implicit. Fewer than three
// effective vertices (a point or a segment) set the degenerate flag.
struct Polygon2D {
  std::vector<Point2> vertices;
  bool degenerate = false;
};

// Minimal convex polygon over the inputs (monotone chain). Duplicates are
// ignored; collinear input collapses to a flagged 2-vertex segment.
Polygon2D convex_hull_2d(const std::vector<Point2>& points);

// Closed membership (boundary inclusive). A degenerate segment answers
// queries on its own line and throws DegeneratePolygon otherwise.
bool point_in_polygon(const Polygon2D& poly, const Point2& x);

// Shoelace area; zero for degenerate polygons.
double polygon_area(const Polygon2D& poly);

}  // namespace deptol
