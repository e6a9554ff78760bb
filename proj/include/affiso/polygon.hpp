#pragma once

#include <vector>

#include "affiso/circle_function.hpp"

namespace affiso {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Edge of a convex polygon described by its outward normal direction.
struct Edge {
    double normal_angle = 0.0;  // radians in [0, 2*pi)
    double length = 0.0;
};

/// Convex polygon, stored as the counter-clockwise convex hull of its input.
class Polygon {
public:
    /// Throws InputError for fewer than three points or collinear input.
    static Polygon from_vertices(std::vector<Point> points);

    const std::vector<Point>& vertices() const { return hull_; }
    std::vector<Edge> edges() const;
    double perimeter() const;
    /// max over vertices of (cos t, sin t) . v
    double support(double theta) const;

private:
    std::vector<Point> hull_;
};

/// Support function samples of the convex hull of `vertices`. The result is
/// flagged piecewise-smooth.
CircleFunction polygon_support(const std::vector<Point>& vertices, const Grid& grid = Grid{});
CircleFunction polygon_support(const Polygon& polygon, const Grid& grid = Grid{});

}  // namespace affiso
