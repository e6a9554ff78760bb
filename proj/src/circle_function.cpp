#include "affiso/circle_function.hpp"

#include <fftw3.h>

#include <algorithm>
#include <limits>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "affiso/error.hpp"
#include "affiso/kernels.hpp"

namespace affiso {

namespace {

// FFTW planning is not thread safe; execution on fresh aligned buffers is.
struct FftPlans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

const FftPlans& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, FftPlans> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    double* real = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    FftPlans p;
    p.forward = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    fftw_free(real);
    fftw_free(spec);
    return cache.emplace(n, p).first->second;
}

struct RealBuffer {
    explicit RealBuffer(int n) : data(fftw_alloc_real(static_cast<std::size_t>(n))) {}
    ~RealBuffer() { fftw_free(data); }
    RealBuffer(const RealBuffer&) = delete;
    RealBuffer& operator=(const RealBuffer&) = delete;
    double* data;
};

struct ComplexBuffer {
    explicit ComplexBuffer(int n) : data(fftw_alloc_complex(static_cast<std::size_t>(n))) {}
    ~ComplexBuffer() { fftw_free(data); }
    ComplexBuffer(const ComplexBuffer&) = delete;
    ComplexBuffer& operator=(const ComplexBuffer&) = delete;
    fftw_complex* data;
};

TrigCoefficients analyze(const Grid& grid, std::span<const double> values) {
    const int n = grid.size();
    const int half = grid.nyquist();
    RealBuffer in(n);
    ComplexBuffer out(half + 1);
    std::copy(values.begin(), values.end(), in.data);
    fftw_execute_dft_r2c(plans_for(n).forward, in.data, out.data);

    TrigCoefficients c;
    c.cos.assign(static_cast<std::size_t>(half + 1), 0.0);
    c.sin.assign(static_cast<std::size_t>(half + 1), 0.0);
    c.cos[0] = out.data[0][0] / n;
    for (int k = 1; k < half; ++k) {
        c.cos[k] = 2.0 * out.data[k][0] / n;
        c.sin[k] = -2.0 * out.data[k][1] / n;
    }
    c.cos[half] = out.data[half][0] / n;
    return c;
}

std::vector<double> synthesize(const Grid& grid, const TrigCoefficients& c) {
    const int n = grid.size();
    const int half = grid.nyquist();
    ComplexBuffer in(half + 1);
    RealBuffer out(n);
    in.data[0][0] = c.cos[0];
    in.data[0][1] = 0.0;
    for (int k = 1; k < half; ++k) {
        in.data[k][0] = 0.5 * c.cos[k];
        in.data[k][1] = -0.5 * c.sin[k];
    }
    in.data[half][0] = c.cos[half];
    in.data[half][1] = 0.0;
    fftw_execute_dft_c2r(plans_for(n).backward, in.data, out.data);
    return {out.data, out.data + n};
}

fftwl_plan extended_plan_for(int n) {
    static std::mutex mutex;
    static std::map<int, fftwl_plan> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    long double* real = fftwl_alloc_real(static_cast<std::size_t>(n));
    fftwl_complex* spec = fftwl_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fftwl_plan p = fftwl_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    fftwl_free(real);
    fftwl_free(spec);
    return cache.emplace(n, p).first->second;
}

// Same normalization as analyze(), carried out in long double so that every
// coefficient is accurate relative to its own size rather than to the
// largest sample.
TrigCoefficients analyze_extended(const Grid& grid, std::span<const long double> values) {
    const int n = grid.size();
    const int half = grid.nyquist();
    long double* in = fftwl_alloc_real(static_cast<std::size_t>(n));
    fftwl_complex* out = fftwl_alloc_complex(static_cast<std::size_t>(half + 1));
    std::copy(values.begin(), values.end(), in);
    fftwl_execute_dft_r2c(extended_plan_for(n), in, out);

    TrigCoefficients c;
    c.cos.assign(static_cast<std::size_t>(half + 1), 0.0);
    c.sin.assign(static_cast<std::size_t>(half + 1), 0.0);
    c.cos[0] = static_cast<double>(out[0][0] / n);
    for (int k = 1; k < half; ++k) {
        c.cos[k] = static_cast<double>(2.0L * out[k][0] / n);
        c.sin[k] = static_cast<double>(-2.0L * out[k][1] / n);
    }
    c.cos[half] = static_cast<double>(out[half][0] / n);
    fftwl_free(in);
    fftwl_free(out);
    return c;
}

}  // namespace

Grid::Grid(int size) : size_(size) {
    if (size % 2 != 0) throw InputError("grid size must be even, got " + std::to_string(size));
    if (size < 16) throw InputError("grid size must be at least 16, got " + std::to_string(size));
}

std::vector<double> Grid::nodes() const {
    std::vector<double> t(static_cast<std::size_t>(size_));
    for (int j = 0; j < size_; ++j) t[j] = node(j);
    return t;
}

Grid make_grid(int size) { return Grid(size); }

CircleFunction::CircleFunction(Grid grid, std::vector<double> values, TrigCoefficients coeffs,
                               Regularity regularity)
    : grid_(grid),
      values_(std::move(values)),
      coeffs_(std::move(coeffs)),
      regularity_(regularity) {}

CircleFunction CircleFunction::from_samples(const Grid& grid, std::vector<double> values,
                                            Regularity regularity) {
    if (static_cast<int>(values.size()) != grid.size())
        throw InputError("sample count " + std::to_string(values.size()) +
                         " does not match grid size " + std::to_string(grid.size()));
    for (double v : values)
        if (!std::isfinite(v)) throw InputError("non-finite sample value");
    auto coeffs = analyze(grid, values);
    return CircleFunction(grid, std::move(values), std::move(coeffs), regularity);
}

CircleFunction CircleFunction::from_coefficients(const Grid& grid, TrigCoefficients coeffs,
                                                 Regularity regularity) {
    const auto len = static_cast<std::size_t>(grid.nyquist() + 1);
    if (coeffs.cos.size() > len || coeffs.sin.size() > len)
        throw InputError("more Fourier modes than the grid resolves");
    coeffs.cos.resize(len, 0.0);
    coeffs.sin.resize(len, 0.0);
    coeffs.sin.front() = 0.0;
    coeffs.sin.back() = 0.0;
    auto values = synthesize(grid, coeffs);
    return CircleFunction(grid, std::move(values), std::move(coeffs), regularity);
}

CircleFunction CircleFunction::sample(const Grid& grid, const std::function<double(double)>& f,
                                      Regularity regularity) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
    return from_samples(grid, std::move(v), regularity);
}

CircleFunction CircleFunction::sample_extended(
    const Grid& grid, const std::function<long double(long double)>& f, Regularity regularity) {
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    std::vector<long double> wide(static_cast<std::size_t>(grid.size()));
    std::vector<double> v(wide.size());
    for (int j = 0; j < grid.size(); ++j) {
        wide[j] = f(two_pi * j / grid.size());
        v[j] = static_cast<double>(wide[j]);
        if (!std::isfinite(v[j])) throw InputError("non-finite sample value");
    }
    auto coeffs = analyze_extended(grid, wide);
    return CircleFunction(grid, std::move(v), std::move(coeffs), regularity);
}

CircleFunction CircleFunction::constant(const Grid& grid, double value) {
    TrigCoefficients c;
    c.cos = {value};
    c.sin = {0.0};
    return from_coefficients(grid, std::move(c));
}

double CircleFunction::operator()(double theta) const {
    double out = 0.0;
    kernels::serial::eval_trig(coeffs_, std::span<const double>(&theta, 1),
                               std::span<double>(&out, 1));
    return out;
}

double CircleFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double CircleFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

CircleFunction CircleFunction::map(const std::function<double(double)>& f) const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), f);
    return from_samples(grid_, std::move(v), regularity_);
}

CircleFunction CircleFunction::shifted(int steps) const {
    const int n = grid_.size();
    std::vector<double> v(values_.size());
    for (int j = 0; j < n; ++j) v[j] = values_[static_cast<std::size_t>(((j - steps) % n + n) % n)];
    return from_samples(grid_, std::move(v), regularity_);
}

CircleFunction CircleFunction::with_regularity(Regularity r) const {
    return CircleFunction(grid_, values_, coeffs_, r);
}

namespace {

Regularity combine(Regularity a, Regularity b) {
    return (a == Regularity::smooth && b == Regularity::smooth) ? Regularity::smooth
                                                                 : Regularity::piecewise;
}

template <class Op>
CircleFunction zip(const CircleFunction& a, const CircleFunction& b, Op op) {
    if (!(a.grid() == b.grid())) throw InputError("circle functions live on different grids");
    std::vector<double> v(a.values().size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = op(a.values()[j], b.values()[j]);
    return CircleFunction::from_samples(a.grid(), std::move(v),
                                        combine(a.regularity(), b.regularity()));
}

}  // namespace

// Linear operations act on samples and coefficients alike, so no transform
// round-off is introduced.
CircleFunction CircleFunction::linear(const CircleFunction& a, double sa, const CircleFunction& b,
                                      double sb) {
    if (!(a.grid() == b.grid())) throw InputError("circle functions live on different grids");
    std::vector<double> v(a.values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = sa * a.values_[j] + sb * b.values_[j];
    TrigCoefficients c = a.coeffs_;
    for (std::size_t k = 0; k < c.cos.size(); ++k) {
        c.cos[k] = sa * a.coeffs_.cos[k] + sb * b.coeffs_.cos[k];
        c.sin[k] = sa * a.coeffs_.sin[k] + sb * b.coeffs_.sin[k];
    }
    return CircleFunction(a.grid_, std::move(v), std::move(c), combine(a.regularity_, b.regularity_));
}

CircleFunction operator+(const CircleFunction& a, const CircleFunction& b) {
    return CircleFunction::linear(a, 1.0, b, 1.0);
}
CircleFunction operator-(const CircleFunction& a, const CircleFunction& b) {
    return CircleFunction::linear(a, 1.0, b, -1.0);
}
CircleFunction operator*(const CircleFunction& a, const CircleFunction& b) {
    return zip(a, b, std::multiplies<>{});
}
CircleFunction operator*(double s, const CircleFunction& f) {
    return CircleFunction::linear(f, s, f, 0.0);
}
CircleFunction operator+(const CircleFunction& f, double c) {
    auto out = CircleFunction::linear(f, 1.0, f, 0.0);
    for (auto& v : out.values_) v += c;
    out.coeffs_.cos[0] += c;
    return out;
}

void EllipseParams::validate() const {
    if (!(a > 0.0)) throw InputError("ellipse parameter a must be positive");
    if (!(k > 0.0)) throw InputError("ellipse scale k must be positive");
}

CircleFunction derivative(const CircleFunction& f, int order) {
    if (order != 1 && order != 2) throw InputError("derivative order must be 1 or 2");
    const auto& c = f.coeffs();
    TrigCoefficients d;
    d.cos.assign(c.cos.size(), 0.0);
    d.sin.assign(c.sin.size(), 0.0);
    const int top = c.max_mode();
    for (int k = 1; k <= top; ++k) {
        const double kk = k;
        if (order == 1) {
            d.cos[k] = kk * c.sin[k];
            d.sin[k] = -kk * c.cos[k];
        } else {
            d.cos[k] = -kk * kk * c.cos[k];
            d.sin[k] = -kk * kk * c.sin[k];
        }
    }
    // The Nyquist sine mode vanishes on the grid; drop it.
    d.sin[top] = 0.0;
    return CircleFunction::from_coefficients(f.grid(), std::move(d), f.regularity());
}

double integrate(const Grid& grid, std::span<const double> samples) {
    double s = 0.0;
    for (double v : samples) s += v;
    return grid.step() * s;
}

double integrate(const CircleFunction& f) { return integrate(f.grid(), f.values()); }

Primitive::Primitive(const CircleFunction& f) : mean_(f.coeffs().cos[0]) {
    const auto& c = f.coeffs();
    periodic_.cos.assign(c.cos.size(), 0.0);
    periodic_.sin.assign(c.sin.size(), 0.0);
    for (int k = 1; k <= c.max_mode(); ++k) {
        periodic_.cos[k] = -c.sin[k] / k;
        periodic_.sin[k] = c.cos[k] / k;
    }
    const double zero = 0.0;
    kernels::serial::eval_trig(periodic_, std::span<const double>(&zero, 1),
                               std::span<double>(&offset_, 1));
}

double Primitive::operator()(double x) const {
    double p = 0.0;
    kernels::serial::eval_trig(periodic_, std::span<const double>(&x, 1), std::span<double>(&p, 1));
    return mean_ * x + p - offset_;
}

double integrate_interval(const CircleFunction& f, double from, double to) {
    return Primitive(f).integral(from, to);
}

CircleFunction ellipse_support(const EllipseParams& p, const Grid& grid) {
    p.validate();
    const long double a2 = static_cast<long double>(p.a) * p.a;
    const auto [c1, c2] = p.center;
    return CircleFunction::sample_extended(grid, [&](long double t) {
        const long double c = std::cos(t - p.alpha);
        const long double s = std::sin(t - p.alpha);
        return p.k * std::sqrt(a2 * c * c + s * s / a2) + c1 * std::cos(t) + c2 * std::sin(t);
    });
}

CircleFunction ellipse_density(const EllipseParams& p, const Grid& grid) {
    p.validate();
    const long double a2 = static_cast<long double>(p.a) * p.a;
    return CircleFunction::sample_extended(grid, [&](long double t) {
        const long double c = std::cos(t - p.alpha);
        const long double s = std::sin(t - p.alpha);
        return p.k * std::pow(a2 * c * c + s * s / a2, -1.5L);
    });
}

double convexity_margin(const CircleFunction& h) {
    if (!h.is_smooth())
        throw InputError("convexity_margin needs a smooth support function; "
                         "use the measure representation for polygons");
    const auto h2 = derivative(h, 2);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < h.values().size(); ++j)
        m = std::min(m, h2.values()[j] + h.values()[j]);
    return m;
}

CircleFunction random_smooth_body(std::uint64_t seed, double decay, int modes, const Grid& grid) {
    if (!(decay > 1.0)) throw InputError("random body decay must exceed 1");
    TrigCoefficients c;
    c.cos = {1.0};
    c.sin = {0.0};
    if (modes >= 2) {
        if (modes > grid.nyquist() - 1) throw InputError("too many modes for the grid");
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        c.cos.assign(static_cast<std::size_t>(modes + 1), 0.0);
        c.sin.assign(static_cast<std::size_t>(modes + 1), 0.0);
        for (int k = 2; k <= modes; ++k) {
            const double w = std::pow(static_cast<double>(k), -decay);
            c.cos[k] = w * normal(rng);
            c.sin[k] = w * normal(rng);
        }
        // h'' + h = 1 + P with P the perturbation's curvature part.
        TrigCoefficients curv = c;
        curv.cos[0] = 0.0;
        for (int k = 2; k <= modes; ++k) {
            curv.cos[k] *= 1.0 - k * k;
            curv.sin[k] *= 1.0 - k * k;
        }
        const auto p = CircleFunction::from_coefficients(grid, std::move(curv));
        const double low = p.min();
        if (1.0 + low < 0.1) {
            const double scale = 0.9 / -low;
            for (int k = 2; k <= modes; ++k) {
                c.cos[k] *= scale;
                c.sin[k] *= scale;
            }
        }
        c.cos[0] = 1.0;
    }
    return CircleFunction::from_coefficients(grid, std::move(c));
}

CircleFunction cos_function(const Grid& grid, int k) {
    k = std::abs(k);
    if (k > grid.nyquist())
        return CircleFunction::sample_extended(grid, [k](long double t) { return std::cos(k * t); });
    TrigCoefficients c;
    c.cos.assign(static_cast<std::size_t>(k + 1), 0.0);
    c.sin.assign(c.cos.size(), 0.0);
    c.cos[k] = 1.0;
    return CircleFunction::from_coefficients(grid, std::move(c));
}

CircleFunction sin_function(const Grid& grid, int k) {
    if (k < 0) return -1.0 * sin_function(grid, -k);
    if (k >= grid.nyquist())
        return CircleFunction::sample_extended(grid, [k](long double t) { return std::sin(k * t); });
    TrigCoefficients c;
    c.cos.assign(static_cast<std::size_t>(k + 1), 0.0);
    c.sin.assign(c.cos.size(), 0.0);
    c.sin[k] = 1.0;
    return CircleFunction::from_coefficients(grid, std::move(c));
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

}  // namespace affiso
