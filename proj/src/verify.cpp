#include "affiso/verify.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "affiso/ellipse_fit.hpp"
#include "affiso/error.hpp"
#include "affiso/functionals.hpp"
#include "affiso/measures.hpp"
#include "affiso/positioning.hpp"

namespace affiso {

namespace {

constexpr double kFourPiSq = 4.0 * kPi * kPi;

InequalityReport make_report(InequalityKind kind, double lhs, double rhs, double scale) {
    InequalityReport r;
    r.kind = kind;
    r.lhs = lhs;
    r.rhs = rhs;
    r.deficit = lhs - rhs;
    r.scale = scale > 0.0 ? scale : 1.0;
    r.relative_deficit = r.deficit / r.scale;
    return r;
}

bool near_equal(double relative_deficit, const CheckOptions& opts) {
    return std::abs(relative_deficit) < opts.eq_tol;
}

bool same_shape(const EllipseParams& x, const EllipseParams& y) {
    if (std::abs(x.a - y.a) > 1e-4 * std::max(x.a, y.a)) return false;
    if (x.a < 1.0 + 1e-6) return true;  // circle: axis direction is arbitrary
    return axis_angle_distance(x.alpha, y.alpha) <= 1e-4;
}

// Attach an ellipse fit to a report when its deficit says equality.
void certify_support(InequalityReport& r, const CircleFunction& h, const CheckOptions& opts) {
    if (!near_equal(r.relative_deficit, opts)) return;
    const auto fit = fit_ellipse_support(h);
    r.fit_residual = fit.residual;
    if (fit.residual < opts.fit_tol) {
        r.fitted_ellipse = fit.params;
        r.equality = true;
    }
}

double cube_root_square(double x) { return std::cbrt(x * x); }

void require_convex_smooth(const CircleFunction& h, const char* who) {
    if (convexity_margin(h) < -kConvexityTol)
        throw InputError(std::string(who) + ": input is not convex (h'' + h < 0)");
}

}  // namespace

std::string_view to_string(InequalityKind kind) {
    switch (kind) {
        case InequalityKind::affine_isoperimetric: return "AI";
        case InequalityKind::blaschke_santalo: return "BS";
        case InequalityKind::mixed: return "MIXED";
        case InequalityKind::main: return "MAIN";
    }
    return "?";
}

double InequalityReport::detail(std::string_view key) const {
    for (const auto& [k, v] : details)
        if (k == key) return v;
    throw InputError("report has no detail '" + std::string(key) + "'");
}

InequalityReport check_main(const CircleFunction& f, const CircleFunction& h,
                            const CheckOptions& opts) {
    if (!(f.grid() == h.grid())) throw InputError("F and h live on different grids");
    if (f.min() < 0.0) throw InputError("check_main: F must be nonnegative");
    if (!(f.max() > 0.0)) throw InputError("check_main: F vanishes identically");
    if (h.min() < -1e-12 * std::max(1.0, h.max()))
        throw InputError("check_main: h must be nonnegative");
    if (!(h.max() > 0.0)) throw InputError("check_main: h vanishes identically");

    const Grid& g = f.grid();
    const double mass = integrate(f);
    const double mc = integrate(f * cos_function(g));
    const double ms = integrate(f * sin_function(g));
    const double otol = opts.orthogonality_tol * std::max(1.0, mass);
    if (std::abs(mc) > otol || std::abs(ms) > otol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "check_main: F violates the orthogonality conditions: integral F cos = " << mc
            << ", integral F sin = " << ms << " (tolerance " << otol << ")";
        throw InputError(msg.str());
    }

    const double fh = pairing(f, h);
    const double f23 = integrate(f.map(cube_root_square));
    const double j = j_form(h);
    auto r = make_report(InequalityKind::main, fh * fh, std::pow(f23, 3) * j / kFourPiSq, fh * fh);
    r.details = {{"pairing", fh}, {"f_two_thirds", f23}, {"j_form", j},
                 {"f_cos_moment", mc}, {"f_sin_moment", ms}};

    if (near_equal(r.relative_deficit, opts)) {
        const auto fit_h = fit_ellipse_support(h);
        const auto fit_f = fit_ellipse_density(f);
        r.fit_residual = std::max(fit_h.residual, fit_f.residual);
        if (r.fit_residual < opts.fit_tol && same_shape(fit_h.params, fit_f.params)) {
            r.fitted_ellipse = fit_h.params;
            r.equality = true;
            r.details.emplace_back("density_scale", fit_f.params.k);
        }
    }
    return r;
}

InequalityReport check_affine_iso(const Body& body, const CheckOptions& opts) {
    if (body.is_polygon()) {
        // Omega vanishes: h'' + h is purely atomic.
        const double a = area(body);
        auto r = make_report(InequalityKind::affine_isoperimetric, kFourPiSq * 2.0 * a, 0.0,
                             kFourPiSq * 2.0 * a);
        r.details = {{"area", a}, {"affine_perimeter", 0.0}};
        return r;
    }
    return check_affine_iso(body.support(), opts);
}

InequalityReport check_affine_iso(const CircleFunction& h, const CheckOptions& opts) {
    require_convex_smooth(h, "check_affine_iso");
    const auto pos = position(h);
    const auto& ho = pos.positioned;
    const double j = j_form(ho);
    const double omega = affine_perimeter(ho);
    const double lhs = kFourPiSq * j;
    auto r = make_report(InequalityKind::affine_isoperimetric, lhs, std::pow(omega, 3), lhs);

    // The proof chain: Hoelder step, then the main inequality with F = h^-3.
    const double inv2 = 2.0 * polar_area(ho);
    const double holder_rhs = inv2 * j * j;
    const auto main = check_main(ho.map([](double x) { return 1.0 / (x * x * x); }), ho,
                                 CheckOptions{opts.eq_tol, opts.tol, opts.fit_tol, 1e-6});
    r.details = {{"area", 0.5 * j},
                 {"affine_perimeter", omega},
                 {"position_a", pos.a},
                 {"position_b", pos.b},
                 {"position_grad_norm", pos.grad_norm},
                 {"position_converged", pos.converged ? 1.0 : 0.0},
                 {"holder_lhs", std::pow(omega, 3)},
                 {"holder_rhs", holder_rhs},
                 {"holder_relative_deficit", (holder_rhs - std::pow(omega, 3)) / holder_rhs},
                 {"main_relative_deficit", main.relative_deficit}};
    certify_support(r, h, opts);
    return r;
}

InequalityReport check_blaschke_santalo(const Body& body, const CheckOptions& opts) {
    if (!body.is_polygon()) return check_blaschke_santalo(body.support(), opts);
    const auto pos = position(body.support());
    const double a = area(body);
    const double inv2 = 2.0 * polar_area(pos.positioned);
    const double lhs = kFourPiSq / inv2;
    auto r = make_report(InequalityKind::blaschke_santalo, lhs, 2.0 * a, lhs);
    r.details = {{"area", a},
                 {"polar_area", 0.5 * inv2},
                 {"area_product", a * 0.5 * inv2},
                 {"position_a", pos.a},
                 {"position_b", pos.b},
                 {"position_converged", pos.converged ? 1.0 : 0.0}};
    return r;
}

InequalityReport check_blaschke_santalo(const CircleFunction& h, const CheckOptions& opts) {
    require_convex_smooth(h, "check_blaschke_santalo");
    const auto pos = position(h);
    const auto& ho = pos.positioned;
    const double j = j_form(ho);
    const double inv2 = 2.0 * polar_area(ho);
    const double lhs = kFourPiSq / inv2;
    auto r = make_report(InequalityKind::blaschke_santalo, lhs, j, lhs);
    r.details = {{"area", 0.5 * j},
                 {"polar_area", 0.5 * inv2},
                 {"area_product", 0.25 * j * inv2},
                 {"position_a", pos.a},
                 {"position_b", pos.b},
                 {"position_grad_norm", pos.grad_norm},
                 {"position_converged", pos.converged ? 1.0 : 0.0},
                 {"moment_cos", pos.moment_cos},
                 {"moment_sin", pos.moment_sin}};
    certify_support(r, h, opts);
    return r;
}

InequalityReport check_mixed(const CircleFunction& h_k, const CircleFunction& h_l,
                             const CheckOptions& opts) {
    if (!(h_k.grid() == h_l.grid())) throw InputError("hK and hL live on different grids");
    if (!h_l.is_smooth()) throw InputError("check_mixed: hL must be smooth");
    const auto mu = second_derivative_measure(h_l);
    for (double d : mu.density())
        if (d < -kConvexityTol) throw InputError("check_mixed: hL is not convex (hL'' + hL < 0)");
    const auto f = CircleFunction::from_samples(h_l.grid(),
                                                {mu.density().begin(), mu.density().end()})
                       .map([](double x) { return std::max(x, 0.0); });
    const double fk = pairing(f, h_k);
    const double f23 = integrate(f.map(cube_root_square));
    const double j = j_form(h_k);
    const double lhs = kFourPiSq * fk * fk;
    auto r = make_report(InequalityKind::mixed, lhs, std::pow(f23, 3) * j, lhs);
    r.details = {{"pairing", fk}, {"f_two_thirds", f23}, {"j_form", j}};

    if (near_equal(r.relative_deficit, opts)) {
        const auto fit_k = fit_ellipse_support(h_k);
        const auto fit_l = fit_ellipse_support(h_l);
        r.fit_residual = std::max(fit_k.residual, fit_l.residual);
        if (r.fit_residual < opts.fit_tol && same_shape(fit_k.params, fit_l.params)) {
            r.fitted_ellipse = fit_k.params;
            r.equality = true;
        }
    }
    return r;
}

CircleFunction orthogonalize_density(const CircleFunction& f) {
    const Grid& g = f.grid();
    const double a = integrate(f * cos_function(g)) / kPi;
    const double b = integrate(f * sin_function(g)) / kPi;
    const double c = std::hypot(a, b);
    return f + (CircleFunction::constant(g, c) - (a * cos_function(g) + b * sin_function(g)));
}

namespace {

void require_el_positive(const CircleFunction& u) {
    if (!(u.min() > kPositivityFloor))
        throw InputError("u must stay above 1e-8 for the Euler-Lagrange quantities");
}

}  // namespace

double el_residual(const CircleFunction& u, double a, double b) {
    require_el_positive(u);
    const auto u2 = derivative(u, 2);
    const Grid& g = u.grid();
    double worst = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        const double x = u.value(j);
        const double x3 = x * x * x;
        const double r = u2.value(j) + x - 1.0 / x3 - (a * std::cos(t) + b * std::sin(t)) / (x3 * x);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

MomentSystem el_moment_system(const CircleFunction& u) {
    require_el_positive(u);
    const Grid& g = u.grid();
    double cc = 0.0, cs = 0.0, ss = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        const double c = std::cos(t);
        const double s = std::sin(t);
        const double w = 1.0 / std::pow(u.value(j), 4);
        cc += c * c * w;
        cs += c * s * w;
        ss += s * s * w;
    }
    const double step = g.step();
    MomentSystem m;
    m.matrix = {cc * step, cs * step, cs * step, ss * step};
    m.det = m.matrix[0] * m.matrix[3] - m.matrix[1] * m.matrix[2];
    return m;
}

CircleFunction sweep_body(std::uint64_t seed, const Grid& grid) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1);
    std::uniform_real_distribution<double> shift(-0.25, 0.25);
    const int modes = 3 + static_cast<int>(seed % 6);
    const double decay = 1.5 + 0.25 * static_cast<double>(seed % 5);
    const auto h = random_smooth_body(seed, decay, modes, grid);
    const double c1 = shift(rng);
    const double c2 = shift(rng);
    return h + (c1 * cos_function(grid) + c2 * sin_function(grid));
}

SweepRow sweep_one(std::uint64_t seed, const Grid& grid, const CheckOptions& opts) {
    const auto h = sweep_body(seed, grid);
    SweepRow row;
    row.seed = seed;
    const auto ai = check_affine_iso(h, opts);
    const auto bs = check_blaschke_santalo(h, opts);
    row.ai_relative_deficit = ai.relative_deficit;
    row.bs_relative_deficit = bs.relative_deficit;
    row.ai_equality = ai.equality;
    row.bs_equality = bs.equality;
    const auto pos = position(h);
    row.newton_iterations = pos.iterations;
    row.newton_converged = pos.converged;
    row.max_moment = std::max(std::abs(pos.moment_cos), std::abs(pos.moment_sin));
    row.moment_det = el_moment_system(pos.positioned).det;
    return row;
}

std::vector<SweepRow> sweep(std::uint64_t first_seed, int count, const Grid& grid,
                            const CheckOptions& opts, Execution exec) {
    if (count < 0) throw InputError("sweep: negative body count");
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));
    if (exec == Execution::serial) {
        for (int i = 0; i < count; ++i) rows[i] = sweep_one(first_seed + i, grid, opts);
        return rows;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            rows[i] = sweep_one(first_seed + static_cast<std::uint64_t>(i), grid, opts);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace affiso
