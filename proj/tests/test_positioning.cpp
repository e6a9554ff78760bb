#include "doctest.h"
#include "oracles.hpp"

#include "affiso/error.hpp"
#include "affiso/positioning.hpp"
#include "affiso/verify.hpp"

using namespace affiso;
using doctest::Approx;

namespace {

double objective_direct(const CircleFunction& h, double a, double b) {
    return oracle::simpson([&](double t) { return std::pow(h(t) + a * std::cos(t) + b * std::sin(t), -2); }, 0, kTwoPi, 4000);
}

}  // namespace

TEST_CASE("centred ellipse is already positioned") {
    const auto r = position(ellipse_support({2.0, 0.5, 1.0, {0, 0}}));
    CHECK(std::abs(r.a) < 1e-12);
    CHECK(std::abs(r.b) < 1e-12);
    CHECK(std::abs(r.moment_cos) < 1e-12);
    CHECK(std::abs(r.moment_sin) < 1e-12);
    CHECK(r.converged);
}

TEST_CASE("shifted disk is moved back to the origin") {
    const auto h = 0.3 * cos_function(Grid{}) + 1.0;
    const auto r = position(h);
    CHECK(r.a == Approx(-0.3).epsilon(1e-10));
    CHECK(std::abs(r.b) < 1e-10);
    // grid search oracle on an independent quadrature of the objective
    double best = 1e300, ba = 0, bb = 0;
    for (double a = -0.6; a <= 0.0; a += 0.02)
        for (double b = -0.3; b <= 0.3; b += 0.02) {
            const double f = objective_direct(h, a, b);
            if (f < best) {
                best = f;
                ba = a;
                bb = b;
            }
        }
    CHECK(std::abs(r.a - ba) <= 0.02);
    CHECK(std::abs(r.b - bb) <= 0.02);
    CHECK(position_objective(h, r.a, r.b) <= best + 1e-12);
}

TEST_CASE("random body positioning meets the orthogonality conditions") {
    const auto h = 0.2 * cos_function(Grid{}) + random_smooth_body(11, 1.5, 6);
    const auto r = position(h);
    CHECK(r.converged);
    CHECK(r.grad_norm < 1e-9);
    CHECK(std::abs(r.moment_cos) < 1e-8);
    CHECK(std::abs(r.moment_sin) < 1e-8);
    const auto ho = [&](double t) { return h(t) + r.a * std::cos(t) + r.b * std::sin(t); };
    CHECK(std::abs(oracle::simpson([&](double t) { return std::cos(t) / std::pow(ho(t), 3); }, 0, kTwoPi)) < 1e-8);
    CHECK(std::abs(oracle::simpson([&](double t) { return std::sin(t) / std::pow(ho(t), 3); }, 0, kTwoPi)) < 1e-8);
}

TEST_CASE("gradient") {
    const auto one = CircleFunction::constant(Grid{}, 1.0);
    const auto g0 = position_gradient(one, 0, 0);
    CHECK(std::abs(g0.a) < 1e-14);
    CHECK(std::abs(g0.b) < 1e-14);
    // shifting by a = 0.5 moves the inverse-cube mass toward theta = pi: the
    // cos moment turns negative and the objective grows with a
    const double moment = oracle::simpson([](double t) { return std::cos(t) / std::pow(1 + 0.5 * std::cos(t), 3); }, 0, kTwoPi);
    CHECK(moment < 0.0);
    CHECK(position_gradient(one, 0.5, 0).a == Approx(-2.0 * moment).epsilon(1e-10));
    CHECK(position_gradient(one, 0.5, 0).a > 0.0);
    const auto h = random_smooth_body(4, 1.5, 6);
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.2, -0.1}, {-0.3, 0.25}}) {
        const auto g = position_gradient(h, a, b);
        const double fa = oracle::central_difference([&](double x) { return position_objective(h, x, b); }, a);
        const double fb = oracle::central_difference([&](double x) { return position_objective(h, a, x); }, b);
        CHECK(g.a == Approx(fa).epsilon(1e-6).scale(1.0));
        CHECK(g.b == Approx(fb).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("Hessian is positive definite and matches finite differences") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto h = random_smooth_body(seed, 1.5, 6);
        const double a = 0.1, b = -0.05;
        const auto H = position_hessian(h, a, b);
        CHECK(H[0] > 0.0);
        CHECK(H[0] * H[3] - H[1] * H[2] > 0.0);
        CHECK(H[1] == Approx(H[2]));
        const double haa = oracle::central_difference([&](double x) { return position_gradient(h, x, b).a; }, a);
        const double hab = oracle::central_difference([&](double x) { return position_gradient(h, a, x).a; }, b);
        CHECK(H[0] == Approx(haa).epsilon(1e-6));
        CHECK(H[1] == Approx(hab).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("positioning is idempotent") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = position(sweep_body(seed));
        const auto again = position(r.positioned);
        CHECK(std::abs(again.a) < 1e-9);
        CHECK(std::abs(again.b) < 1e-9);
    }
}

TEST_CASE("positioning commutes with rotation") {
    const auto h = sweep_body(3);
    const auto r = position(h);
    for (int steps : {1, 100, 700}) {
        const double gamma = steps * h.grid().step();
        const auto rr = position(h.shifted(steps));
        CHECK(rr.a == Approx(r.a * std::cos(gamma) - r.b * std::sin(gamma)).epsilon(1e-8).scale(1.0));
        CHECK(rr.b == Approx(r.a * std::sin(gamma) + r.b * std::cos(gamma)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("body not containing the origin is started from its Steiner point") {
    const auto h = 2.0 * cos_function(Grid{}) + random_smooth_body(6, 1.5, 6);
    CHECK(h.min() < 0.0);
    const auto r = position(h);
    CHECK(r.converged);
    CHECK(r.positioned.min() > 0.0);
    CHECK(std::abs(r.moment_cos) < 1e-8);
}

TEST_CASE("infeasible input is reported") {
    CHECK_THROWS_AS(position(cos_function(Grid{})), InfeasibleError);
    CHECK_THROWS_AS(position_objective(CircleFunction::constant(Grid{}, 1.0), 2.0, 0.0), InfeasibleError);
}
