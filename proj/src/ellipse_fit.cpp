#include "affiso/ellipse_fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace affiso {

namespace {

struct QuadraticForm {
    double a = 1.0;
    double alpha = 0.0;
    double level = 0.0;  // q = level * (a^2 cos^2 + a^-2 sin^2)
    bool ok = false;
};

// q = c0 + A cos 2t + B sin 2t read as level * (a^2 cos^2(t-alpha) + a^-2 sin^2(t-alpha)).
QuadraticForm read_quadratic(const CircleFunction& q) {
    const auto& c = q.coeffs();
    const double c0 = c.cos[0];
    const double r = std::hypot(c.cos[2], c.sin[2]);
    QuadraticForm out;
    if (!(c0 - r > 0.0)) return out;
    out.a = std::pow((c0 + r) / (c0 - r), 0.25);
    out.alpha = r > 0.0 ? 0.5 * std::atan2(c.sin[2], c.cos[2]) : 0.0;
    out.level = std::sqrt((c0 + r) * (c0 - r));
    out.ok = true;
    return out;
}

double quad(double a, double alpha, double t) {
    const double c = std::cos(t - alpha);
    const double s = std::sin(t - alpha);
    return a * a * c * c + s * s / (a * a);
}

template <class Model>
double sup_residual(const CircleFunction& data, const Eigen::VectorXd& x, Model model) {
    const Grid& g = data.grid();
    double worst = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        worst = std::max(worst, std::abs(model(x, g.node(j)) - data.value(j)));
        scale = std::max(scale, std::abs(data.value(j)));
    }
    return scale > 0.0 ? worst / scale : worst;
}

// Levenberg-Marquardt on the grid samples with a forward-difference Jacobian.
template <class Model>
Eigen::VectorXd refine(const CircleFunction& data, Eigen::VectorXd x, Model model) {
    const Grid& g = data.grid();
    const int n = g.size();
    const auto p = x.size();
    auto residuals = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd r(n);
        for (int j = 0; j < n; ++j) r[j] = model(y, g.node(j)) - data.value(j);
        return r;
    };
    Eigen::VectorXd r = residuals(x);
    double cost = r.squaredNorm();
    double damping = 1e-6;
    for (int it = 0; it < 30 && cost > 0.0; ++it) {
        Eigen::MatrixXd jac(n, p);
        for (Eigen::Index i = 0; i < p; ++i) {
            Eigen::VectorXd y = x;
            const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
            y[i] += h;
            jac.col(i) = (residuals(y) - r) / h;
        }
        Eigen::MatrixXd normal = jac.transpose() * jac;
        const Eigen::VectorXd rhs = -jac.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 8; ++tries) {
            Eigen::MatrixXd damped = normal;
            damped.diagonal() += damping * normal.diagonal().cwiseMax(1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(rhs);
            const Eigen::VectorXd y = x + step;
            const Eigen::VectorXd ry = residuals(y);
            const double cy = ry.squaredNorm();
            if (std::isfinite(cy) && cy < cost) {
                x = y;
                r = ry;
                const double gain = cost - cy;
                cost = cy;
                damping = std::max(damping * 0.3, 1e-12);
                improved = gain > 1e-30 * std::max(1.0, cost);
                break;
            }
            damping *= 10.0;
        }
        if (!improved) break;
    }
    return x;
}

void normalize(EllipseParams& p) {
    if (p.a < 1.0) {
        p.a = 1.0 / p.a;
        p.alpha += kPi / 2;
    }
    p.alpha = std::fmod(p.alpha, kPi);
    if (p.alpha < 0.0) p.alpha += kPi;
    if (std::abs(p.a - 1.0) < 1e-12) p.alpha = 0.0;
}

}  // namespace

double axis_angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

EllipseFit fit_ellipse_support(const CircleFunction& h) {
    const Grid& g = h.grid();
    const double c1 = h.coeffs().cos[1];
    const double c2 = h.coeffs().sin[1];
    const auto centered = h - (c1 * cos_function(g) + c2 * sin_function(g));
    const auto form = read_quadratic(centered * centered);
    EllipseFit fit;
    if (!form.ok) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    auto model = [](const Eigen::VectorXd& x, double t) {
        return x[2] * std::sqrt(quad(x[0], x[1], t)) + x[3] * std::cos(t) + x[4] * std::sin(t);
    };
    Eigen::VectorXd x(5);
    x << form.a, form.alpha, std::sqrt(form.level), c1, c2;
    const double initial = sup_residual(h, x, model);
    Eigen::VectorXd refined = refine(h, x, model);
    if (sup_residual(h, refined, model) < initial) x = refined;
    fit.params = {x[0], x[1], x[2], {x[3], x[4]}};
    fit.residual = sup_residual(h, x, model);
    normalize(fit.params);
    return fit;
}

EllipseFit fit_ellipse_density(const CircleFunction& f) {
    EllipseFit fit;
    if (!(f.min() > 0.0)) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    const auto form = read_quadratic(f.map([](double x) { return std::pow(x, -2.0 / 3.0); }));
    if (!form.ok) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    auto model = [](const Eigen::VectorXd& x, double t) {
        return x[2] * std::pow(quad(x[0], x[1], t), -1.5);
    };
    Eigen::VectorXd x(3);
    x << form.a, form.alpha, std::pow(form.level, -1.5);
    const double initial = sup_residual(f, x, model);
    Eigen::VectorXd refined = refine(f, x, model);
    if (sup_residual(f, refined, model) < initial) x = refined;
    fit.params = {x[0], x[1], x[2], {0.0, 0.0}};
    fit.residual = sup_residual(f, x, model);
    normalize(fit.params);
    return fit;
}

}  // namespace affiso
