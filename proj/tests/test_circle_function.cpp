#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "affiso/error.hpp"
#include "affiso/polygon.hpp"
#include "affiso/transforms.hpp"

using namespace affiso;
using doctest::Approx;

TEST_CASE("grid nodes are uniform") {
    const auto g = make_grid(16);
    CHECK(g.size() == 16);
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(8) == Approx(kPi).epsilon(1e-15));
    CHECK(Grid{}.size() == 2048);
}

TEST_CASE("grid rejects odd and small sizes") {
    CHECK_THROWS_WITH_AS(make_grid(15), doctest::Contains("grid size must be even"), InputError);
    CHECK_THROWS_AS(make_grid(14), InputError);
    CHECK_THROWS_AS(make_grid(0), InputError);
}

TEST_CASE("samples and coefficients round-trip") {
    const Grid g(256);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    std::vector<double> v(256);
    for (auto& x : v) x = n(rng);
    const auto f = CircleFunction::from_samples(g, v);
    const auto back = CircleFunction::from_coefficients(g, f.coeffs());
    for (int j = 0; j < g.size(); ++j) CHECK(back.value(j) == Approx(v[j]).epsilon(1e-12));
    CHECK(f.coeffs().sin[0] == 0.0);
    CHECK(f.coeffs().sin[g.nyquist()] == 0.0);
}

TEST_CASE("off-grid evaluation matches the trigonometric sum") {
    const Grid g(64);
    TrigCoefficients c{{0.5, 0.2, -0.1, 0.05}, {0.0, 0.3, 0.0, -0.07}};
    const auto f = CircleFunction::from_coefficients(g, c);
    for (double t : {0.1, 1.3, 2.9, 5.5, -0.4})
        CHECK(f(t) == Approx(oracle::trig_sum(c, t)).epsilon(1e-13));
}

TEST_CASE("second derivative of cos is -cos") {
    const auto f = cos_function(Grid{});
    CHECK(oracle::sup_diff(derivative(f, 2), [](double t) { return -std::cos(t); }) < 1e-12);
}

TEST_CASE("derivative of psi_2 matches finite differences") {
    const auto f = psi_function(2.0);
    const auto d = derivative(f, 1);
    const double h = f.grid().step();
    double err = 0.0;
    for (int j = 0; j < f.grid().size(); ++j) {
        const double t = f.grid().node(j);
        const double fd = (psi(2.0, t + h) - psi(2.0, t - h)) / (2 * h);
        err = std::max(err, std::abs(d.value(j) - fd));
    }
    // central differences are O(h^2) with |psi'''| of order 10 here
    CHECK(err < 10 * h * h);
    CHECK(err > 0.0);
}

TEST_CASE("derivative of a constant vanishes") {
    const auto f = CircleFunction::constant(Grid{}, 3.5);
    CHECK(derivative(f, 1).max() == 0.0);
    CHECK(derivative(f, 1).min() == 0.0);
}

TEST_CASE("derivative drops the Nyquist sine mode") {
    const Grid g(16);
    std::vector<double> alt(16);
    for (int j = 0; j < 16; ++j) alt[j] = (j % 2 ? -1.0 : 1.0);
    const auto f = CircleFunction::from_samples(g, alt);
    CHECK(std::abs(derivative(f, 1).max()) < 1e-14);
    CHECK(derivative(f, 2).value(0) == Approx(-64.0));
}

TEST_CASE("integrals of elementary functions") {
    const Grid g;
    CHECK(integrate(CircleFunction::constant(g, 1.0)) == Approx(kTwoPi).epsilon(1e-15));
    CHECK(integrate(CircleFunction::sample(g, [](double t) { return std::cos(t) * std::cos(t); })) ==
          Approx(kPi).epsilon(1e-14));
    const auto inv_sq = psi_function(2.0).map([](double x) { return 1.0 / (x * x); });
    CHECK(integrate(inv_sq) == Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("integral of a derivative vanishes") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto h = random_smooth_body(seed, 2.0, 8);
        CHECK(std::abs(integrate(derivative(h, 1))) < 1e-10);
    }
}

TEST_CASE("differentiation commutes with grid rotation") {
    const auto h = random_smooth_body(4, 2.0, 6);
    for (int s : {1, 5, -3}) {
        const auto a = derivative(h.shifted(s), 1);
        const auto b = derivative(h, 1).shifted(s);
        double err = 0.0;
        for (int j = 0; j < h.grid().size(); ++j) err = std::max(err, std::abs(a.value(j) - b.value(j)));
        CHECK(err < 1e-10);
    }
}

TEST_CASE("differentiation is linear") {
    const auto f = random_smooth_body(1, 2.0, 6);
    const auto g = random_smooth_body(2, 2.0, 6);
    const auto lhs = derivative(2.0 * f - g, 2);
    const auto rhs = 2.0 * derivative(f, 2) - derivative(g, 2);
    for (int j = 0; j < f.grid().size(); ++j) CHECK(lhs.value(j) == Approx(rhs.value(j)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("primitive integrates the interpolant") {
    const auto f = CircleFunction::sample(Grid(128), [](double t) { return 2.0 + std::sin(3 * t); });
    const Primitive F(f);
    const auto exact = [](double x) { return 2.0 * x + (1.0 - std::cos(3 * x)) / 3.0; };
    for (double x : {0.0, 0.7, 3.0, 6.0, 9.5, -2.0}) CHECK(F(x) == Approx(exact(x)).epsilon(1e-13));
    CHECK(integrate_interval(f, 1.0, 0.2) == Approx(exact(0.2) - exact(1.0)).epsilon(1e-13));
}

TEST_CASE("ellipse support values") {
    const Grid g;
    CHECK(oracle::sup_diff(ellipse_support({1.0, 0.0, 1.0, {0, 0}}, g), [](double) { return 1.0; }) < 1e-15);
    const auto e = ellipse_support({2.0, 0.0, 1.0, {0, 0}}, g);
    CHECK(e.value(0) == Approx(2.0));
    CHECK(e.value(g.size() / 4) == Approx(0.5));
    const auto shifted = ellipse_support({1.0, 0.0, 1.0, {0.3, 0.0}}, g);
    CHECK(oracle::sup_diff(shifted, [](double t) { return 1.0 + 0.3 * std::cos(t); }) < 1e-15);
}

TEST_CASE("ellipse support tends to the circle") {
    double prev = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const auto e = ellipse_support({1.0 + eps, 0.7, 1.5, {0, 0}});
        const double d = oracle::sup_diff(e, [](double) { return 1.5; });
        CHECK(d < prev);
        CHECK(d < 4 * eps);
        prev = d;
    }
}

TEST_CASE("ellipse parameters are validated") {
    CHECK_THROWS_AS(ellipse_support({0.0, 0.0, 1.0, {0, 0}}), InputError);
    CHECK_THROWS_AS(ellipse_support({1.0, 0.0, -1.0, {0, 0}}), InputError);
}

TEST_CASE("ellipse density values and orthogonality") {
    const Grid g;
    CHECK(oracle::sup_diff(ellipse_density({1.0, 0.0, 1.0, {0, 0}}, g), [](double) { return 1.0; }) < 1e-15);
    CHECK(ellipse_density({2.0, 0.0, 1.0, {0, 0}}, g).value(0) == Approx(0.125));
    for (double alpha : {0.0, 0.4, 2.0}) {
        const auto f = ellipse_density({3.0, alpha, 2.0, {0.5, 0.5}}, g);
        CHECK(std::abs(integrate(f * cos_function(g))) < 1e-12);
        CHECK(std::abs(integrate(f * sin_function(g))) < 1e-12);
    }
}

TEST_CASE("polygon support at grid nodes") {
    const Grid g;
    const auto sq = polygon_support({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, g);
    CHECK(sq.value(0) == Approx(1.0));
    CHECK(sq.value(g.size() / 8) == Approx(std::sqrt(2.0)));
    CHECK_FALSE(sq.is_smooth());
    const auto tri = polygon_support({{1, 0}, {0, 1}, {-1, -1}}, g);
    CHECK(tri.value(0) == Approx(1.0));
    for (int j = 0; j < g.size(); j += 97) {
        const double t = g.node(j);
        const double want = std::max({std::cos(t), std::sin(t), -std::cos(t) - std::sin(t)});
        CHECK(tri.value(j) == Approx(want).epsilon(1e-15));
    }
}

TEST_CASE("polygon input is validated") {
    CHECK_THROWS_AS(polygon_support({{0, 0}, {1, 1}}), InputError);
    CHECK_THROWS_AS(polygon_support({{0, 0}, {1, 1}, {2, 2}}), InputError);
}

TEST_CASE("convexity margin") {
    const Grid g;
    CHECK(convexity_margin(CircleFunction::constant(g, 1.0)) == Approx(1.0));
    CHECK(convexity_margin(0.2 * cos_function(g, 2) + 1.0) == Approx(0.4).epsilon(1e-12));
    CHECK(convexity_margin(0.5 * cos_function(g, 2) + 1.0) == Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(convexity_margin(polygon_support({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, g)), InputError);
}

TEST_CASE("centred ellipses are strictly convex") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> a(0.2, 5.0), alpha(0.0, kPi);
    for (int i = 0; i < 20; ++i) CHECK(convexity_margin(ellipse_support({a(rng), alpha(rng), 1.0, {0, 0}})) > 0.0);
}

TEST_CASE("random smooth bodies") {
    CHECK(oracle::sup_diff(random_smooth_body(5, 2.0, 0), [](double) { return 1.0; }) == 0.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(convexity_margin(random_smooth_body(seed, 1.5, 8)) >= 0.1 - 1e-12);
    const auto a = random_smooth_body(42, 2.0, 6);
    const auto b = random_smooth_body(42, 2.0, 6);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), random_smooth_body(43, 2.0, 6).values().begin()));
}

TEST_CASE("wrap angle") {
    CHECK(wrap_angle(-0.5) == Approx(kTwoPi - 0.5));
    CHECK(wrap_angle(7.0) == Approx(7.0 - kTwoPi));
    CHECK(wrap_angle(kTwoPi) == 0.0);
}
