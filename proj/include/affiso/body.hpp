#pragma once

#include <optional>

#include "affiso/circle_function.hpp"
#include "affiso/polygon.hpp"

namespace affiso {

/// A planar convex body: either a smooth support function or a polygon.
/// Polygons keep their exact vertex data so that h'' + h can be formed as
/// atoms instead of through spectral derivatives.
class Body {
public:
    static Body smooth(CircleFunction h);
    static Body polygon(Polygon p, const Grid& grid = Grid{});

    bool is_polygon() const { return polygon_.has_value(); }
    const CircleFunction& support() const { return support_; }
    const Polygon& polygon() const;
    const Grid& grid() const { return support_.grid(); }

    /// Translate by (c1, c2): h + c1 cos + c2 sin.
    Body translated(double c1, double c2) const;

private:
    Body(CircleFunction h, std::optional<Polygon> p)
        : support_(std::move(h)), polygon_(std::move(p)) {}

    CircleFunction support_;
    std::optional<Polygon> polygon_;
};

}  // namespace affiso
