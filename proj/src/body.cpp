#include "affiso/body.hpp"

#include "affiso/error.hpp"

namespace affiso {

Body Body::smooth(CircleFunction h) {
    if (!h.is_smooth()) throw InputError("smooth body built from a piecewise-smooth function");
    return Body(std::move(h), std::nullopt);
}

Body Body::polygon(Polygon p, const Grid& grid) {
    auto h = polygon_support(p, grid);
    return Body(std::move(h), std::move(p));
}

const Polygon& Body::polygon() const {
    if (!polygon_) throw InputError("body is not a polygon");
    return *polygon_;
}

Body Body::translated(double c1, double c2) const {
    if (polygon_) {
        auto verts = polygon_->vertices();
        for (auto& v : verts) {
            v.x += c1;
            v.y += c2;
        }
        return polygon(Polygon::from_vertices(std::move(verts)), grid());
    }
    const auto& g = grid();
    return smooth(support_ + (c1 * cos_function(g) + c2 * sin_function(g)));
}

}  // namespace affiso
