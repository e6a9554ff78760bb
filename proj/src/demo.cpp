#include "affiso/demo.hpp"

#include <cmath>

#include "affiso/ellipse_fit.hpp"
#include "affiso/error.hpp"
#include "affiso/functionals.hpp"
#include "affiso/positioning.hpp"
#include "affiso/transforms.hpp"

namespace affiso {

namespace {

// H^1 norm of T u, evaluated on a quadrature grid fine enough for lambda.
double transformed_h1_norm(const CircleFunction& u, const TransformParams& p) {
    const int points = u.grid().size() * quadrature_oversampling(p.lambda, u.grid().size());
    const auto s = sample_transform(u, p, points);
    double sum = 0.0;
    for (std::size_t j = 0; j < s.value.size(); ++j)
        sum += s.value[j] * s.value[j] + s.derivative[j] * s.derivative[j];
    return std::sqrt(sum * s.grid.step());
}

double transformed_min(const CircleFunction& u, const TransformParams& p) {
    return transform(u, p).min();
}

}  // namespace

double h1_norm(const CircleFunction& u) {
    const auto du = derivative(u, 1);
    return std::sqrt(integrate(u * u) + integrate(du * du));
}

std::vector<DemoStep> demo_maximize(const DemoOptions& opts) {
    if (opts.steps < 0 || opts.steps > 100) throw InputError("demo_maximize: steps must be in [0, 100]");
    const Grid& g = opts.grid;
    const auto start = opts.start ? *opts.start : random_smooth_body(opts.seed, 2.0, 6, g);
    if (!(start.grid() == g)) throw InputError("demo_maximize: start lives on a different grid");
    const auto positioned = position(start).positioned;

    std::vector<DemoStep> trace;
    if (opts.skip_balancing) {
        const auto u = (1.0 / h1_norm(positioned)) * positioned;
        const double i_value = functional_I(u, u);
        for (int k = 0; k <= opts.steps; ++k) {
            const TransformParams p{std::min(std::pow(1.5, k), kLambdaMax), kPi / 2};
            DemoStep s{k, i_value, p.lambda, p.center, 0.0, false};
            s.min_u = transformed_min(u, p) / transformed_h1_norm(u, p);
            s.concentrating = !trace.empty() && s.min_u < trace.back().min_u;
            trace.push_back(s);
        }
        return trace;
    }

    // Target: the centred ellipse closest to the positioned start.
    const auto fit = fit_ellipse_support(positioned);
    CircleFunction target = CircleFunction::constant(g, positioned.coeffs().cos[0]);
    if (std::isfinite(fit.residual)) {
        EllipseParams e = fit.params;
        e.center = {0.0, 0.0};
        target = ellipse_support(e, g);
    }

    for (int k = 0; k <= opts.steps; ++k) {
        const double t = 1.0 - std::ldexp(1.0, -k);
        const auto mixed = (1.0 - t) * positioned + t * target;
        const auto pos = position(mixed).positioned;
        const auto u = (1.0 / h1_norm(pos)) * pos;
        const double p = balance_point(u, kPi / 2);
        const auto lb = balance_lambda(u, p, kPi / 4);
        DemoStep s{k, functional_I(u, u), lb.params.lambda, p, 0.0, false};
        s.min_u = transformed_min(u, lb.params) / transformed_h1_norm(u, lb.params);
        s.concentrating = !trace.empty() && s.min_u < 0.5 * trace.back().min_u;
        trace.push_back(s);
    }
    return trace;
}

}  // namespace affiso
