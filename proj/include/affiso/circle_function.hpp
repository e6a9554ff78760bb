#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace affiso {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kDefaultGridSize = 2048;

/// Uniform grid theta_j = 2*pi*j/M on the circle. M is even and >= 16.
class Grid {
public:
    explicit Grid(int size = kDefaultGridSize);

    int size() const { return size_; }
    int nyquist() const { return size_ / 2; }
    double step() const { return kTwoPi / size_; }
    double node(int j) const { return kTwoPi * j / size_; }
    std::vector<double> nodes() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int size_;
};

Grid make_grid(int size);

/// f(theta) = sum_{k=0}^{M/2} cos[k] cos(k theta) + sin[k] sin(k theta).
/// cos[0] is the mean, sin[0] and sin[M/2] are always zero.
struct TrigCoefficients {
    std::vector<double> cos;
    std::vector<double> sin;

    int max_mode() const { return static_cast<int>(cos.size()) - 1; }
};

/// How far the samples may be trusted as a smooth function. Support
/// functions of polygons are only piecewise smooth, so anything that needs
/// h'' pointwise refuses them.
enum class Regularity { smooth, piecewise };

/// A 2*pi-periodic real function held as grid samples with the matching
/// trigonometric interpolant. Immutable once built.
class CircleFunction {
public:
    static CircleFunction from_samples(const Grid& grid, std::vector<double> values,
                                       Regularity regularity = Regularity::smooth);
    static CircleFunction from_coefficients(const Grid& grid, TrigCoefficients coeffs,
                                            Regularity regularity = Regularity::smooth);
    static CircleFunction sample(const Grid& grid, const std::function<double(double)>& f,
                                 Regularity regularity = Regularity::smooth);
    /// Samples and coefficients computed in long double, then rounded. Used
    /// for closed-form functions whose high derivatives must stay accurate.
    static CircleFunction sample_extended(const Grid& grid,
                                          const std::function<long double(long double)>& f,
                                          Regularity regularity = Regularity::smooth);
    static CircleFunction constant(const Grid& grid, double value);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double value(int j) const { return values_[static_cast<std::size_t>(j)]; }
    const TrigCoefficients& coeffs() const { return coeffs_; }
    Regularity regularity() const { return regularity_; }
    bool is_smooth() const { return regularity_ == Regularity::smooth; }

    /// Trigonometric interpolant evaluated off-grid.
    double operator()(double theta) const;

    double min() const;
    double max() const;
    bool is_positive() const { return min() > 0.0; }

    /// Pointwise map; the result is resampled so coefficients stay in sync.
    CircleFunction map(const std::function<double(double)>& f) const;
    /// Samples rotated by `steps` grid cells: result(theta) = f(theta - steps*dtheta).
    CircleFunction shifted(int steps) const;
    CircleFunction with_regularity(Regularity r) const;

    friend CircleFunction operator+(const CircleFunction& a, const CircleFunction& b);
    friend CircleFunction operator-(const CircleFunction& a, const CircleFunction& b);
    friend CircleFunction operator*(const CircleFunction& a, const CircleFunction& b);
    friend CircleFunction operator*(double s, const CircleFunction& f);
    friend CircleFunction operator+(const CircleFunction& f, double c);

private:
    static CircleFunction linear(const CircleFunction& a, double sa, const CircleFunction& b,
                                 double sb);
    CircleFunction(Grid grid, std::vector<double> values, TrigCoefficients coeffs,
                   Regularity regularity);

    Grid grid_;
    std::vector<double> values_;
    TrigCoefficients coeffs_;
    Regularity regularity_;
};

/// Semi-axis ratio parameter `a`, rotation `alpha`, scale `k` and an optional
/// translation. The centred support function is
/// k * sqrt(a^2 cos^2(t - alpha) + a^-2 sin^2(t - alpha)).
struct EllipseParams {
    double a = 1.0;
    double alpha = 0.0;
    double k = 1.0;
    std::pair<double, double> center{0.0, 0.0};

    void validate() const;
};

/// Exact derivative of the trigonometric interpolant. The Nyquist mode of odd
/// derivatives is dropped.
CircleFunction derivative(const CircleFunction& f, int order);

/// Periodic trapezoid rule, (2*pi/M) * sum of samples.
double integrate(const CircleFunction& f);
double integrate(const Grid& grid, std::span<const double> samples);

/// Antiderivative of the interpolant, x -> integral_0^x f. Build once and
/// evaluate many times when searching over interval endpoints.
class Primitive {
public:
    explicit Primitive(const CircleFunction& f);
    double operator()(double x) const;
    double integral(double from, double to) const { return (*this)(to) - (*this)(from); }

private:
    double mean_;
    double offset_ = 0.0;
    TrigCoefficients periodic_;
};

/// Integral of the interpolant over [from, to] (to may be less than from).
double integrate_interval(const CircleFunction& f, double from, double to);

CircleFunction ellipse_support(const EllipseParams& p, const Grid& grid = Grid{});
CircleFunction ellipse_density(const EllipseParams& p, const Grid& grid = Grid{});

/// Minimum over the grid of h'' + h. Piecewise-smooth input is rejected;
/// polygons go through the measure representation instead.
double convexity_margin(const CircleFunction& h);

/// h = 1 + sum_{k=2}^{modes} k^-decay (xi_k cos k t + eta_k sin k t) with
/// seeded normal xi, eta, damped until convexity_margin(h) >= 0.1.
CircleFunction random_smooth_body(std::uint64_t seed, double decay, int modes,
                                  const Grid& grid = Grid{});

CircleFunction cos_function(const Grid& grid, int k = 1);
CircleFunction sin_function(const Grid& grid, int k = 1);

/// Canonical angle in [0, 2*pi).
double wrap_angle(double theta);

}  // namespace affiso
