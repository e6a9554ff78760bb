#include "affiso/kernels.hpp"

#include <cmath>
#include <complex>

namespace affiso::kernels {

namespace {

// Highest mode with a nonzero coefficient; band-limited inputs are common.
int effective_top(const TrigCoefficients& c) {
    int top = c.max_mode();
    while (top > 0 && c.cos[top] == 0.0 && c.sin[top] == 0.0) --top;
    return top;
}

// Re-anchor the rotation recurrence this often to bound drift.
constexpr int kReseed = 32;

inline void eval_point(const TrigCoefficients& c, int top, double x, double& value,
                       double* deriv) {
    const std::complex<double> z = std::polar(1.0, x);
    std::complex<double> w(1.0, 0.0);
    double v = c.cos[0];
    double d = 0.0;
    for (int k = 1; k <= top; ++k) {
        w = (k % kReseed == 0) ? std::polar(1.0, k * x) : w * z;
        const double ck = c.cos[k];
        const double sk = c.sin[k];
        v += ck * w.real() + sk * w.imag();
        d += k * (sk * w.real() - ck * w.imag());
    }
    value = v;
    if (deriv != nullptr) *deriv = d;
}

}  // namespace

double atom_green(double x) {
    double t = std::fmod(x, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return ((kPi - t) * std::sin(t) - 0.5 * std::cos(t)) / (kTwoPi);
}

namespace serial {

void eval_trig(const TrigCoefficients& c, std::span<const double> points,
               std::span<double> values, std::span<double> derivatives) {
    const int top = effective_top(c);
    const bool want_deriv = !derivatives.empty();
    for (std::size_t i = 0; i < points.size(); ++i)
        eval_point(c, top, points[i], values[i], want_deriv ? &derivatives[i] : nullptr);
}

void atom_green_sum(std::span<const double> nodes, std::span<const double> locations,
                    std::span<const double> masses, std::span<double> out) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < locations.size(); ++i)
            s += masses[i] * atom_green(nodes[j] - locations[i]);
        out[j] = s;
    }
}

}  // namespace serial

namespace omp {

void eval_trig(const TrigCoefficients& c, std::span<const double> points,
               std::span<double> values, std::span<double> derivatives) {
    const int top = effective_top(c);
    const bool want_deriv = !derivatives.empty();
    const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        eval_point(c, top, points[i], values[i], want_deriv ? &derivatives[i] : nullptr);
}

void atom_green_sum(std::span<const double> nodes, std::span<const double> locations,
                    std::span<const double> masses, std::span<double> out) {
    const auto n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < locations.size(); ++i)
            s += masses[i] * atom_green(nodes[j] - locations[i]);
        out[j] = s;
    }
}

}  // namespace omp

}  // namespace affiso::kernels
