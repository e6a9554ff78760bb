#pragma once

#include <span>

#include "affiso/circle_function.hpp"

// Data-parallel inner loops. Every kernel has a serial reference in
// `serial::` and an OpenMP version in `omp::`; the unqualified entry points
// dispatch to the OpenMP one. Tests compare the two and the benchmark target
// times them.
namespace affiso::kernels {

namespace serial {

/// values[i] = series(points[i]); derivatives[i] = series'(points[i]) when
/// `derivatives` is non-empty.
void eval_trig(const TrigCoefficients& c, std::span<const double> points,
               std::span<double> values, std::span<double> derivatives = {});

/// out[j] = sum_i mass_i * G(theta_j - location_i), where G is the periodic
/// Green's function of d^2/dt^2 + 1 with the first harmonic projected out.
void atom_green_sum(std::span<const double> nodes, std::span<const double> locations,
                    std::span<const double> masses, std::span<double> out);

}  // namespace serial

namespace omp {

void eval_trig(const TrigCoefficients& c, std::span<const double> points,
               std::span<double> values, std::span<double> derivatives = {});

void atom_green_sum(std::span<const double> nodes, std::span<const double> locations,
                    std::span<const double> masses, std::span<double> out);

}  // namespace omp

inline void eval_trig(const TrigCoefficients& c, std::span<const double> points,
                      std::span<double> values, std::span<double> derivatives = {}) {
    omp::eval_trig(c, points, values, derivatives);
}

inline void atom_green_sum(std::span<const double> nodes, std::span<const double> locations,
                           std::span<const double> masses, std::span<double> out) {
    omp::atom_green_sum(nodes, locations, masses, out);
}

/// Green's function value for a unit atom at distance x (any real x).
double atom_green(double x);

}  // namespace affiso::kernels
