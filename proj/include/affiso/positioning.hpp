#pragma once

#include <array>

#include "affiso/circle_function.hpp"

namespace affiso {

/// Translation (a, b) minimizing f(a, b) = integral (h + a cos + b sin)^-2.
/// At the minimizer the positioned function satisfies
/// integral cos/h^3 = integral sin/h^3 = 0.
struct PositionResult {
    double a = 0.0;
    double b = 0.0;
    CircleFunction positioned;
    double grad_norm = 0.0;
    double moment_cos = 0.0;  // integral cos / positioned^3
    double moment_sin = 0.0;  // integral sin / positioned^3
    int iterations = 0;
    bool converged = false;
};

struct Gradient {
    double a = 0.0;
    double b = 0.0;
};

/// Objective f(a, b). Throws InfeasibleError when the shifted function is not
/// above the feasibility margin at every node.
double position_objective(const CircleFunction& h, double a, double b);
/// -2 integral (cos, sin) / (h + a cos + b sin)^3
Gradient position_gradient(const CircleFunction& h, double a, double b);
/// 6 integral [cos^2, cos sin; cos sin, sin^2] / (h + a cos + b sin)^4, row-major.
std::array<double, 4> position_hessian(const CircleFunction& h, double a, double b);

/// Damped Newton from (0, 0), or from minus the Steiner point when the
/// origin is not interior. Throws InfeasibleError if neither start is
/// feasible; returns converged = false with the best iterate after 100 steps.
PositionResult position(const CircleFunction& h);

}  // namespace affiso
