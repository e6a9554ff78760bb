#include "affiso/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affiso/error.hpp"

namespace affiso {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; returns the hull counter-clockwise without
// collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

Polygon Polygon::from_vertices(std::vector<Point> points) {
    if (points.size() < 3) throw InputError("a polygon needs at least 3 vertices");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InputError("non-finite vertex");
    Polygon poly;
    poly.hull_ = convex_hull(std::move(points));
    if (poly.hull_.size() < 3) throw InputError("polygon vertices are collinear");
    return poly;
}

std::vector<Edge> Polygon::edges() const {
    std::vector<Edge> out;
    out.reserve(hull_.size());
    for (std::size_t i = 0; i < hull_.size(); ++i) {
        const Point& a = hull_[i];
        const Point& b = hull_[(i + 1) % hull_.size()];
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        // Outward normal of a counter-clockwise edge is (dy, -dx).
        out.push_back({wrap_angle(std::atan2(-dx, dy)), std::hypot(dx, dy)});
    }
    return out;
}

double Polygon::perimeter() const {
    double p = 0.0;
    for (const auto& e : edges()) p += e.length;
    return p;
}

double Polygon::support(double theta) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : hull_) best = std::max(best, c * v.x + s * v.y);
    return best;
}

CircleFunction polygon_support(const Polygon& polygon, const Grid& grid) {
    return CircleFunction::sample(
        grid, [&](double t) { return polygon.support(t); }, Regularity::piecewise);
}

CircleFunction polygon_support(const std::vector<Point>& vertices, const Grid& grid) {
    return polygon_support(Polygon::from_vertices(vertices), grid);
}

}  // namespace affiso
