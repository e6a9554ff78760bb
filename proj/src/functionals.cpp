#include "affiso/functionals.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "affiso/error.hpp"
#include "affiso/measures.hpp"

namespace affiso {

namespace {

void require_convex(const CircleFunction& h, const char* who) {
    const double margin = convexity_margin(h);
    if (margin < -kConvexityTol)
        throw InputError(std::string(who) + ": h'' + h reaches " + std::to_string(margin) +
                         ", not a support function");
}

}  // namespace

double j_form(const CircleFunction& u) {
    const auto du = derivative(u, 1);
    double s = 0.0;
    for (std::size_t j = 0; j < u.values().size(); ++j)
        s += u.values()[j] * u.values()[j] - du.values()[j] * du.values()[j];
    return s * u.grid().step();
}

double area(const CircleFunction& h) {
    require_convex(h, "area");
    return 0.5 * j_form(h);
}

double area(const Body& body) {
    if (!body.is_polygon()) return area(body.support());
    const auto& poly = body.polygon();
    double s = 0.0;
    for (const auto& e : poly.edges()) s += poly.support(e.normal_angle) * e.length;
    return 0.5 * s;
}

double polar_area(const CircleFunction& h) {
    if (!(h.min() > kPositivityFloor))
        throw InputError("polar_area: h must be strictly positive (min " +
                         std::to_string(h.min()) + ")");
    double s = 0.0;
    for (double v : h.values()) s += 1.0 / (v * v);
    return 0.5 * s * h.grid().step();
}

double polar_area(const Body& body) {
    if (!body.is_polygon()) return polar_area(body.support());
    const auto edges = body.polygon().edges();
    std::vector<Point> dual;
    for (const auto& e : edges) {
        const double hv = body.polygon().support(e.normal_angle);
        if (!(hv > kPositivityFloor))
            throw InputError("polar_area: the origin is not interior to the polygon");
        dual.push_back({std::cos(e.normal_angle) / hv, std::sin(e.normal_angle) / hv});
    }
    double twice = 0.0;
    for (std::size_t i = 0; i < dual.size(); ++i) {
        const auto& p = dual[i];
        const auto& q = dual[(i + 1) % dual.size()];
        twice += p.x * q.y - p.y * q.x;
    }
    return 0.5 * twice;
}

double affine_perimeter(const CircleFunction& h) {
    const auto mu = second_derivative_measure(h);
    double s = 0.0;
    for (double d : mu.density()) {
        if (d < -kConvexityTol)
            throw InputError("affine_perimeter: h'' + h reaches " + std::to_string(d) +
                             ", not a support function");
        s += std::cbrt(std::max(d, 0.0) * std::max(d, 0.0));
    }
    return s * h.grid().step();
}

double affine_perimeter(const Body& body) {
    if (body.is_polygon()) return 0.0;
    return affine_perimeter(body.support());
}

double pairing(const CircleFunction& f, const CircleFunction& h) { return integrate(f * h); }

double functional_I(const CircleFunction& u, const CircleFunction& v) {
    if (!(u.grid() == v.grid())) throw InputError("u and v live on different grids");
    if (!(v.min() > 0.0)) throw InputError("functional_I: v must be strictly positive");
    double inv2 = 0.0;
    double cross = 0.0;
    for (std::size_t j = 0; j < v.values().size(); ++j) {
        const double vj = v.values()[j];
        inv2 += 1.0 / (vj * vj);
        cross += u.values()[j] / (vj * vj * vj);
    }
    inv2 *= v.grid().step();
    cross *= v.grid().step();
    if (!(std::abs(cross) > 1e-12)) throw InputError("functional_I: vanishing denominator");
    return std::pow(inv2, 3) * j_form(u) / (cross * cross);
}

BodyFunctionals body_functionals(const Body& body) {
    BodyFunctionals f;
    f.area = area(body);
    if (body.support().min() > kPositivityFloor) f.polar_area = polar_area(body);
    f.affine_perimeter = affine_perimeter(body);
    f.j_form = body.is_polygon() ? 2.0 * f.area : j_form(body.support());
    return f;
}

}  // namespace affiso
