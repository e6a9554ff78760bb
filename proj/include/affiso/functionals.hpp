#pragma once

#include <optional>

#include "affiso/body.hpp"
#include "affiso/circle_function.hpp"

namespace affiso {

/// Area A, polar area, affine perimeter Omega, and J = 2A.
struct BodyFunctionals {
    double area = 0.0;
    std::optional<double> polar_area;  // empty unless h > 0 (origin interior)
    double affine_perimeter = 0.0;
    double j_form = 0.0;
};

/// Tolerance below zero accepted for h'' + h before a body counts as non-convex.
inline constexpr double kConvexityTol = 1e-9;
/// polar_area and the positioning solver refuse functions at or below this.
inline constexpr double kPositivityFloor = 1e-8;

/// J(u) = integral of u^2 - u'^2 (spectral derivative, trapezoid rule).
double j_form(const CircleFunction& u);

/// A = J(h) / 2 for smooth convex h; for polygons (1/2) sum h(theta_i) l_i over
/// the edge atoms. Non-convex input is rejected.
double area(const CircleFunction& h);
double area(const Body& body);

/// (1/2) integral of h^-2: the area of the polar body about the origin.
double polar_area(const CircleFunction& h);
/// Polygons use the exact area of the polar polygon (vertices n_i / h_i).
double polar_area(const Body& body);

/// Integral of (D^2 h + h)^(2/3) over the absolutely continuous part only, so
/// polygons give zero.
double affine_perimeter(const CircleFunction& h);
double affine_perimeter(const Body& body);

/// Integral of F h.
double pairing(const CircleFunction& f, const CircleFunction& h);

/// I(u, v) = (int v^-2)^3 J(u) / (int u v^-3)^2.
double functional_I(const CircleFunction& u, const CircleFunction& v);

BodyFunctionals body_functionals(const Body& body);

}  // namespace affiso
