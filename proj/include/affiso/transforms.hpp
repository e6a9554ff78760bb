#pragma once

#include <vector>

#include "affiso/circle_function.hpp"

namespace affiso {

inline constexpr double kLambdaMin = 1e-6;
inline constexpr double kLambdaMax = 1e6;

/// Parameters of the transform T_{lambda,q}. The default centre is 0.
struct TransformParams {
    double lambda = 1.0;
    double center = 0.0;

    void validate() const;
};

/// psi_lambda(t) = sqrt(lambda^2 cos^2 t + lambda^-2 sin^2 t).
double psi(double lambda, double theta);
double psi_derivative(double lambda, double theta);

/// m_lambda(t) = integral_0^t psi_lambda^-2, evaluated quadrant by quadrant
/// in closed form. Continuous, increasing, fixes every multiple of pi/2 and
/// is extended to all of R by m(t + 2*pi) = m(t) + 2*pi.
double m_map(double lambda, double theta);

/// Samples of psi_lambda(t - rotation) on a grid.
CircleFunction psi_function(double lambda, const Grid& grid = Grid{}, double rotation = 0.0);

/// (T_{lambda,q} u)(t) = u(q + m_lambda(t - q)) * psi_lambda(t - q), with u
/// evaluated through its trigonometric interpolant.
CircleFunction transform(const CircleFunction& u, const TransformParams& p);

/// T u and its exact derivative (chain rule through m and psi) at `points`
/// uniformly spaced nodes. Used for quadrature when the transformed function
/// is too concentrated for the base grid.
struct TransformSamples {
    Grid grid;
    std::vector<double> value;
    std::vector<double> derivative;
};
TransformSamples sample_transform(const CircleFunction& u, const TransformParams& p,
                                  int points);

/// Oversampling factor (power of two) so that psi_lambda is resolved to
/// round-off on a grid of size factor * base.
int quadrature_oversampling(double lambda, int base);

/// `scale` normalizes the relative residual: |reference| for positive
/// integrands, the integral of the absolute integrand for the moments.
struct Residual {
    double transformed = 0.0;
    double reference = 0.0;
    double scale = 0.0;

    double absolute() const { return transformed - reference; }
    double relative() const;
};

/// Transformed-minus-reference values of the invariant integrals.
struct InvarianceReport {
    Residual inverse_square;  // int (Tu)^-2            = int u^-2
    Residual pairing;         // int Tu / (Tv)^3         = int u / v^3
    Residual quadratic_form;  // int (Tu)^2 - (Tu)'^2    = int u^2 - u'^2
    Residual cos_moment;      // int cos(t-q) (Tu)^-3    = lambda^-1 int cos(t-q) u^-3
    Residual sin_moment;      // int sin(t-q) (Tu)^-3    = lambda   int sin(t-q) u^-3
    Residual functional_i;    // I(Tu, Tv)               = I(u, v)
};

InvarianceReport check_invariances(const CircleFunction& u, const CircleFunction& v,
                                   const TransformParams& p);

/// Point p near `near` with int_{p-pi/2}^{p} u^-2 = int_p^{p+pi/2} u^-2.
double balance_point(const CircleFunction& u, double near);

struct LambdaBalance {
    TransformParams params;
    double residual = 0.0;  // int_{B} (Tu)^-2 - int_{D} (Tu)^-2
    bool clamped = false;   // lambda hit the working range boundary
};

/// lambda for which T_{lambda,p} u carries as much u^-2 mass on
/// (p - delta, p + delta) as on the rest of [p - pi/2, p + pi/2].
LambdaBalance balance_lambda(const CircleFunction& u, double p, double delta = kPi / 4);

}  // namespace affiso
