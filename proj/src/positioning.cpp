#include "affiso/positioning.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "affiso/error.hpp"
#include "affiso/functionals.hpp"

namespace affiso {

namespace {

constexpr int kMaxNewton = 100;
constexpr double kGradTol = 1e-9;

struct Local {
    double value = 0.0;
    double ga = 0.0;
    double gb = 0.0;
    double haa = 0.0;
    double hab = 0.0;
    double hbb = 0.0;
    double min_shifted = 0.0;
};

double min_shifted(const CircleFunction& h, double a, double b) {
    const Grid& g = h.grid();
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        m = std::min(m, h.value(j) + a * std::cos(t) + b * std::sin(t));
    }
    return m;
}

Local evaluate(const CircleFunction& h, double a, double b) {
    const Grid& g = h.grid();
    Local r;
    r.min_shifted = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        const double c = std::cos(t);
        const double s = std::sin(t);
        const double x = h.value(j) + a * c + b * s;
        r.min_shifted = std::min(r.min_shifted, x);
        const double i2 = 1.0 / (x * x);
        const double i3 = i2 / x;
        const double i4 = i2 * i2;
        r.value += i2;
        r.ga += c * i3;
        r.gb += s * i3;
        r.haa += c * c * i4;
        r.hab += c * s * i4;
        r.hbb += s * s * i4;
    }
    const double w = g.step();
    r.value *= w;
    r.ga *= -2.0 * w;
    r.gb *= -2.0 * w;
    r.haa *= 6.0 * w;
    r.hab *= 6.0 * w;
    r.hbb *= 6.0 * w;
    return r;
}

void require_feasible(const CircleFunction& h, double a, double b) {
    const double m = min_shifted(h, a, b);
    if (!(m > kPositivityFloor))
        throw InfeasibleError("shifted support function is not positive at (" + std::to_string(a) +
                              ", " + std::to_string(b) + "), min " + std::to_string(m));
}

}  // namespace

double position_objective(const CircleFunction& h, double a, double b) {
    require_feasible(h, a, b);
    return evaluate(h, a, b).value;
}

Gradient position_gradient(const CircleFunction& h, double a, double b) {
    require_feasible(h, a, b);
    const auto r = evaluate(h, a, b);
    return {r.ga, r.gb};
}

std::array<double, 4> position_hessian(const CircleFunction& h, double a, double b) {
    require_feasible(h, a, b);
    const auto r = evaluate(h, a, b);
    return {r.haa, r.hab, r.hab, r.hbb};
}

PositionResult position(const CircleFunction& h) {
    const Grid& g = h.grid();
    double a = 0.0;
    double b = 0.0;
    if (!(min_shifted(h, a, b) > kPositivityFloor)) {
        // Minus the Steiner point moves it to the origin; it is interior for
        // any body with interior points.
        double sc = 0.0;
        double ss = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            sc += h.value(j) * std::cos(g.node(j));
            ss += h.value(j) * std::sin(g.node(j));
        }
        a = -sc * g.step() / kPi;
        b = -ss * g.step() / kPi;
        if (!(min_shifted(h, a, b) > kPositivityFloor))
            throw InfeasibleError("position: no translation makes the support function positive");
    }

    auto cur = evaluate(h, a, b);
    int it = 0;
    for (; it < kMaxNewton; ++it) {
        if (std::hypot(cur.ga, cur.gb) < kGradTol) break;
        const double det = cur.haa * cur.hbb - cur.hab * cur.hab;
        double da = -(cur.hbb * cur.ga - cur.hab * cur.gb) / det;
        double db = -(cur.haa * cur.gb - cur.hab * cur.ga) / det;
        if (!std::isfinite(da) || !std::isfinite(db)) {
            da = -cur.ga;
            db = -cur.gb;
        }
        const double slope = cur.ga * da + cur.gb * db;
        const double floor = std::max(0.1 * cur.min_shifted, kPositivityFloor);
        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
            const double na = a + step * da;
            const double nb = b + step * db;
            if (!(min_shifted(h, na, nb) >= floor)) continue;
            auto next = evaluate(h, na, nb);
            if (next.value <= cur.value + 1e-4 * step * slope ||
                std::hypot(next.ga, next.gb) < std::hypot(cur.ga, cur.gb)) {
                a = na;
                b = nb;
                cur = next;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }

    PositionResult out{a, b, h + (a * cos_function(g) + b * sin_function(g))};
    out.grad_norm = std::hypot(cur.ga, cur.gb);
    out.moment_cos = -0.5 * cur.ga;
    out.moment_sin = -0.5 * cur.gb;
    out.iterations = it;
    out.converged = out.grad_norm < kGradTol;
    return out;
}

}  // namespace affiso
