#pragma once

#include <vector>

#include "affiso/body.hpp"
#include "affiso/circle_function.hpp"

namespace affiso {

struct Atom {
    double location = 0.0;  // radians in [0, 2*pi)
    double mass = 0.0;
};

/// Signed measure on the circle: an absolutely continuous density sampled on
/// a grid plus finitely many atoms. Atoms are kept exactly and never smeared
/// onto the grid.
class CircleMeasure {
public:
    CircleMeasure(Grid grid, std::vector<double> density, std::vector<Atom> atoms = {});
    static CircleMeasure zero(const Grid& grid);
    static CircleMeasure from_density(const CircleFunction& density);

    const Grid& grid() const { return grid_; }
    std::span<const double> density() const { return density_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    /// density >= -tol everywhere and every atom mass >= -tol.
    bool nonnegative(double tol = 0.0) const;
    /// Total mass, integral of 1 d(mu).
    double mass() const;
    /// Integral of phi d(mu); atoms contribute phi(location) * mass exactly.
    double integrate(const std::function<double(double)>& phi) const;

    CircleMeasure plus_density(std::span<const double> extra) const;

private:
    Grid grid_;
    std::vector<double> density_;
    std::vector<Atom> atoms_;
};

struct Moments {
    double cos = 0.0;
    double sin = 0.0;
};

struct JordanParts {
    CircleMeasure plus;
    CircleMeasure minus;
};

/// Output of the orthogonalization step: both parts shifted by the same
/// density (c - a cos - b sin) so that each has vanishing first moments.
struct OrthogonalPair {
    CircleMeasure plus;
    CircleMeasure minus;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// f = h1 - h2 with h1, h2 support functions.
struct SupportDecomposition {
    CircleFunction h1;
    CircleFunction h2;
    CircleMeasure mu1;  // h1'' + h1
    CircleMeasure mu2;  // h2'' + h2
    double ratio = 0.0;  // max_i ||h_i'' + h_i||_TV / ||f'' + f||_TV
    double reconstruction_error = 0.0;
};

/// h'' + h. Smooth input gives a density only; piecewise input is rejected.
CircleMeasure second_derivative_measure(const CircleFunction& f);
/// Polygon: zero density, one atom per edge at its outward normal with the
/// edge length as mass.
CircleMeasure second_derivative_measure(const Polygon& polygon, const Grid& grid = Grid{});
CircleMeasure second_derivative_measure(const Body& body);

double tv_norm(const CircleMeasure& mu);
JordanParts jordan_decompose(const CircleMeasure& mu);
Moments first_moments(const CircleMeasure& mu);

/// Throws InputError if the first moments of the two parts differ by more
/// than 1e-9 (relative to their total variation when that exceeds one).
OrthogonalPair orthogonalize_pair(const CircleMeasure& nu_plus, const CircleMeasure& nu_minus);

/// Solves h'' + h = mu with the first harmonic of h set to zero. The density
/// part is inverted mode by mode (divide by 1 - k^2); atoms use the closed-form
/// periodic Green's function, so the result is exact at the grid nodes.
/// Throws InputError if mu has first moments above tolerance.
CircleFunction solve_h_from_measure(const CircleMeasure& mu);

SupportDecomposition decompose_support(const CircleFunction& f);
SupportDecomposition decompose_support(const Body& body);

}  // namespace affiso
