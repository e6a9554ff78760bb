#pragma once

#include "affiso/circle_function.hpp"

namespace affiso {

struct EllipseFit {
    EllipseParams params;   // a >= 1, alpha in [0, pi)
    double residual = 0.0;  // sup |data - model| / sup |data|
};

/// Least-squares fit of k psi_a(t - alpha) + c1 cos t + c2 sin t to h.
/// Initialised in closed form from the first harmonic of h and the
/// second harmonic of (h - first harmonic)^2, then refined by Gauss-Newton.
EllipseFit fit_ellipse_support(const CircleFunction& h);

/// Least-squares fit of k (a^2 cos^2(t - alpha) + a^-2 sin^2(t - alpha))^(-3/2)
/// to a positive density F.
EllipseFit fit_ellipse_density(const CircleFunction& f);

/// Distance between two axis directions, i.e. |a - b| modulo pi, in [0, pi/2].
double axis_angle_distance(double a, double b);

}  // namespace affiso
