#include "affiso/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "affiso/error.hpp"
#include "affiso/functionals.hpp"
#include "affiso/kernels.hpp"

namespace affiso {

void TransformParams::validate() const {
    if (!(lambda >= kLambdaMin && lambda <= kLambdaMax))
        throw InputError("lambda outside the working range [1e-6, 1e6]: " + std::to_string(lambda));
    if (!std::isfinite(center)) throw InputError("transform centre must be finite");
}

double psi(double lambda, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return std::sqrt(lambda * lambda * c * c + s * s / (lambda * lambda));
}

double psi_derivative(double lambda, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return (1.0 / (lambda * lambda) - lambda * lambda) * s * c / psi(lambda, theta);
}

double m_map(double lambda, double theta) {
    constexpr double quarter = kPi / 2;
    const double turns = std::floor(theta / kTwoPi);
    const double r = theta - turns * kTwoPi;
    const int q = std::clamp(static_cast<int>(std::floor(r / quarter)), 0, 3);
    const double s = r - q * quarter;
    const double l2 = lambda * lambda;
    // On even quadrants m = atan(tan(s) / l^2); odd quadrants follow from
    // m(pi - s) = pi - m(s), which gives atan(l^2 tan(s)).
    const double inner = (q % 2 == 0) ? std::atan(std::tan(s) / l2) : std::atan(l2 * std::tan(s));
    return turns * kTwoPi + q * quarter + inner;
}

CircleFunction psi_function(double lambda, const Grid& grid, double rotation) {
    const long double l2 = static_cast<long double>(lambda) * lambda;
    return CircleFunction::sample_extended(grid, [=](long double t) {
        const long double c = std::cos(t - rotation);
        const long double s = std::sin(t - rotation);
        return std::sqrt(l2 * c * c + s * s / l2);
    });
}

namespace {

// Mapped evaluation points q + m(t_j - q) for the nodes of `grid`.
std::vector<double> mapped_points(const Grid& grid, const TransformParams& p) {
    std::vector<double> x(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j)
        x[j] = p.center + m_map(p.lambda, grid.node(j) - p.center);
    return x;
}

}  // namespace

CircleFunction transform(const CircleFunction& u, const TransformParams& p) {
    p.validate();
    const Grid& g = u.grid();
    const auto x = mapped_points(g, p);
    std::vector<double> v(x.size());
    kernels::eval_trig(u.coeffs(), x, v);
    for (int j = 0; j < g.size(); ++j) v[j] *= psi(p.lambda, g.node(j) - p.center);
    return CircleFunction::from_samples(g, std::move(v), u.regularity());
}

TransformSamples sample_transform(const CircleFunction& u, const TransformParams& p, int points) {
    p.validate();
    Grid fine(points);
    const auto x = mapped_points(fine, p);
    TransformSamples out{fine, std::vector<double>(x.size()), std::vector<double>(x.size())};
    kernels::eval_trig(u.coeffs(), x, out.value, out.derivative);
    for (int j = 0; j < fine.size(); ++j) {
        const double t = fine.node(j) - p.center;
        const double ps = psi(p.lambda, t);
        const double uval = out.value[j];
        // d/dt u(q + m(t)) psi(t) = u'(.) m'(t) psi + u psi', with m' = psi^-2.
        out.value[j] = uval * ps;
        out.derivative[j] = out.derivative[j] / ps + uval * psi_derivative(p.lambda, t);
    }
    return out;
}

int quadrature_oversampling(double lambda, int base) {
    const double l2 = std::min(lambda * lambda, 1.0 / (lambda * lambda));
    if (l2 >= 1.0) return 1;
    // psi_lambda has complex singularities at distance atanh(l2) from the
    // real axis; the trapezoid error decays like exp(-n * distance).
    const double distance = std::atanh(l2);
    int factor = 1;
    while (factor < 64 && base * factor * distance < 80.0) factor *= 2;
    return factor;
}

double Residual::relative() const {
    if (scale == 0.0) return absolute() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return absolute() / scale;
}

namespace {

struct TransformedIntegrals {
    double inverse_square = 0.0;
    double pairing = 0.0;
    double quadratic_form = 0.0;
    double cos_moment = 0.0;
    double sin_moment = 0.0;
    double v_inverse_square = 0.0;
};

TransformedIntegrals transformed_integrals(const CircleFunction& u, const CircleFunction& v,
                                           const TransformParams& p, int points) {
    const auto tu = sample_transform(u, p, points);
    const auto tv = sample_transform(v, p, points);
    TransformedIntegrals r;
    for (int j = 0; j < points; ++j) {
        const double a = tu.value[j];
        const double b = tv.value[j];
        const double t = tu.grid.node(j) - p.center;
        r.inverse_square += 1.0 / (a * a);
        r.pairing += a / (b * b * b);
        r.quadratic_form += a * a - tu.derivative[j] * tu.derivative[j];
        r.cos_moment += std::cos(t) / (a * a * a);
        r.sin_moment += std::sin(t) / (a * a * a);
        r.v_inverse_square += 1.0 / (b * b);
    }
    const double w = tu.grid.step();
    r.inverse_square *= w;
    r.pairing *= w;
    r.quadratic_form *= w;
    r.cos_moment *= w;
    r.sin_moment *= w;
    r.v_inverse_square *= w;
    return r;
}

double max_relative_change(const TransformedIntegrals& a, const TransformedIntegrals& b) {
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
    return std::max({rel(a.inverse_square, b.inverse_square), rel(a.pairing, b.pairing),
                     rel(a.quadratic_form, b.quadratic_form), rel(a.v_inverse_square, b.v_inverse_square),
                     std::abs(a.cos_moment - b.cos_moment) / std::max(b.inverse_square, 1e-300),
                     std::abs(a.sin_moment - b.sin_moment) / std::max(b.inverse_square, 1e-300)});
}

}  // namespace

InvarianceReport check_invariances(const CircleFunction& u, const CircleFunction& v,
                                   const TransformParams& p) {
    p.validate();
    if (!(u.grid() == v.grid())) throw InputError("u and v live on different grids");
    if (!(u.min() > 0.0) || !(v.min() > 0.0))
        throw InputError("check_invariances needs strictly positive u and v");

    const Grid& g = u.grid();
    // Refine the quadrature until the transformed-side integrals settle.
    int points = g.size() * quadrature_oversampling(p.lambda, g.size());
    auto current = transformed_integrals(u, v, p, points);
    while (points < 64 * g.size()) {
        auto finer = transformed_integrals(u, v, p, 2 * points);
        const double change = max_relative_change(current, finer);
        current = finer;
        points *= 2;
        if (change < 1e-13) break;
    }

    double cos_ref = 0.0;
    double sin_ref = 0.0;
    double cos_abs = 0.0;
    double sin_abs = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j) - p.center;
        const double u3 = std::pow(u.value(j), 3);
        cos_ref += std::cos(t) / u3;
        sin_ref += std::sin(t) / u3;
        cos_abs += std::abs(std::cos(t)) / u3;
        sin_abs += std::abs(std::sin(t)) / u3;
    }
    const double wc = g.step() / p.lambda;
    const double ws = g.step() * p.lambda;
    cos_ref *= wc;
    sin_ref *= ws;
    cos_abs *= wc;
    sin_abs *= ws;
    auto positive = [](double t, double r) { return Residual{t, r, std::abs(r)}; };

    InvarianceReport r;
    r.inverse_square = positive(current.inverse_square,
                                integrate(u.map([](double x) { return 1.0 / (x * x); })));
    r.pairing = positive(current.pairing,
                         integrate(u * v.map([](double x) { return 1.0 / (x * x * x); })));
    const double j_ref = j_form(u);
    const double j_scale = integrate(u * u) + integrate(derivative(u, 1) * derivative(u, 1));
    r.quadratic_form = {current.quadratic_form, j_ref, j_scale};
    r.cos_moment = {current.cos_moment, cos_ref, cos_abs};
    r.sin_moment = {current.sin_moment, sin_ref, sin_abs};
    const double ti = std::pow(current.v_inverse_square, 3) * current.quadratic_form /
                      (current.pairing * current.pairing);
    r.functional_i = positive(ti, functional_I(u, v));
    return r;
}

namespace {

CircleFunction inverse_square(const CircleFunction& u, const char* who) {
    if (!(u.min() > 1e-8))
        throw InputError(std::string(who) + ": u must stay above 1e-8 for u^-2 to be integrable");
    return u.map([](double x) { return 1.0 / (x * x); });
}

constexpr int kMaxBisection = 200;

}  // namespace

double balance_point(const CircleFunction& u, double near) {
    const auto g = inverse_square(u, "balance_point");
    const Primitive prim(g);
    const double tol = 1e-12 * integrate(g);
    auto diff = [&](double p) {
        return 2.0 * prim(p) - prim(p - kPi / 2) - prim(p + kPi / 2);
    };
    const double d0 = diff(near);
    if (std::abs(d0) <= tol) return near;

    // Walk outwards one grid cell at a time to the nearest sign change.
    const double h = u.grid().step();
    double lo = near;
    double hi = near;
    bool found = false;
    for (int i = 1; i <= u.grid().size() && !found; ++i) {
        for (double dir : {1.0, -1.0}) {
            const double x = near + dir * i * h;
            const double dx = diff(x);
            if (std::abs(dx) <= tol) return x;
            if ((dx > 0.0) != (d0 > 0.0)) {
                lo = x - dir * h;
                hi = x;
                found = true;
                break;
            }
        }
    }
    if (!found) throw InputError("balance_point: no balanced point found");

    double dlo = diff(lo);
    for (int it = 0; it < kMaxBisection; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = diff(mid);
        if (std::abs(dm) <= tol || mid == lo || mid == hi) return mid;
        if ((dm > 0.0) == (dlo > 0.0)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

LambdaBalance balance_lambda(const CircleFunction& u, double p, double delta) {
    if (!(delta > 0.0 && delta < kPi / 2)) throw InputError("balance_lambda: delta must lie in (0, pi/2)");
    const auto g = inverse_square(u, "balance_lambda");
    const Primitive prim(g);
    const double window = prim.integral(p - kPi / 2, p + kPi / 2);
    const double tol = 1e-12 * window;

    // By the change of variables s = p + m(t - p) the mass of (Tu)^-2 on
    // (p - delta, p + delta) is the mass of u^-2 on (p - m(delta), p + m(delta)).
    auto residual = [&](double lambda) {
        const double m = m_map(lambda, delta);
        const double inner = prim.integral(p - m, p + m);
        return inner - (window - inner);
    };

    LambdaBalance out;
    double lo = std::log(kLambdaMin);
    double hi = std::log(kLambdaMax);
    const double rlo = residual(kLambdaMin);
    const double rhi = residual(kLambdaMax);
    if (rlo <= 0.0) {
        out.params = {kLambdaMin, p};
        out.residual = rlo;
        out.clamped = true;
        return out;
    }
    if (rhi >= 0.0) {
        out.params = {kLambdaMax, p};
        out.residual = rhi;
        out.clamped = true;
        return out;
    }
    double mid = 0.0;
    double rm = 0.0;
    for (int it = 0; it < kMaxBisection; ++it) {
        mid = 0.5 * (lo + hi);
        rm = residual(std::exp(mid));
        if (std::abs(rm) <= tol || hi - lo < 1e-15) break;
        // Inner mass decreases in lambda.
        if (rm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.params = {std::exp(mid), p};
    out.residual = rm;
    return out;
}

}  // namespace affiso
