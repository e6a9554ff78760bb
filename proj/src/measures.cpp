#include "affiso/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affiso/error.hpp"
#include "affiso/kernels.hpp"

namespace affiso {

CircleMeasure::CircleMeasure(Grid grid, std::vector<double> density, std::vector<Atom> atoms)
    : grid_(grid), density_(std::move(density)), atoms_(std::move(atoms)) {
    if (static_cast<int>(density_.size()) != grid_.size())
        throw InputError("measure density length does not match grid");
    for (auto& a : atoms_) a.location = wrap_angle(a.location);
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    for (std::size_t i = 1; i < atoms_.size(); ++i)
        if (atoms_[i].location == atoms_[i - 1].location)
            throw InputError("atom locations must be distinct");
}

CircleMeasure CircleMeasure::zero(const Grid& grid) {
    return CircleMeasure(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0));
}

CircleMeasure CircleMeasure::from_density(const CircleFunction& density) {
    return CircleMeasure(density.grid(), {density.values().begin(), density.values().end()});
}

bool CircleMeasure::nonnegative(double tol) const {
    for (double d : density_)
        if (d < -tol) return false;
    for (const auto& a : atoms_)
        if (a.mass < -tol) return false;
    return true;
}

double CircleMeasure::mass() const {
    double m = affiso::integrate(grid_, density_);
    for (const auto& a : atoms_) m += a.mass;
    return m;
}

double CircleMeasure::integrate(const std::function<double(double)>& phi) const {
    double s = 0.0;
    for (int j = 0; j < grid_.size(); ++j) s += phi(grid_.node(j)) * density_[j];
    s *= grid_.step();
    for (const auto& a : atoms_) s += phi(a.location) * a.mass;
    return s;
}

CircleMeasure CircleMeasure::plus_density(std::span<const double> extra) const {
    auto d = density_;
    for (std::size_t j = 0; j < d.size(); ++j) d[j] += extra[j];
    return CircleMeasure(grid_, std::move(d), atoms_);
}

CircleMeasure second_derivative_measure(const CircleFunction& f) {
    if (!f.is_smooth())
        throw InputError("second_derivative_measure: piecewise-smooth input needs polygon data");
    const auto f2 = derivative(f, 2);
    std::vector<double> d(f.values().size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = f2.values()[j] + f.values()[j];
    return CircleMeasure(f.grid(), std::move(d));
}

CircleMeasure second_derivative_measure(const Polygon& polygon, const Grid& grid) {
    std::vector<Atom> atoms;
    for (const auto& e : polygon.edges()) atoms.push_back({e.normal_angle, e.length});
    return CircleMeasure(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0),
                         std::move(atoms));
}

CircleMeasure second_derivative_measure(const Body& body) {
    if (body.is_polygon()) return second_derivative_measure(body.polygon(), body.grid());
    return second_derivative_measure(body.support());
}

double tv_norm(const CircleMeasure& mu) {
    double s = 0.0;
    for (double d : mu.density()) s += std::abs(d);
    s *= mu.grid().step();
    for (const auto& a : mu.atoms()) s += std::abs(a.mass);
    return s;
}

JordanParts jordan_decompose(const CircleMeasure& mu) {
    const auto n = mu.density().size();
    std::vector<double> plus(n), minus(n);
    for (std::size_t j = 0; j < n; ++j) {
        plus[j] = std::max(mu.density()[j], 0.0);
        minus[j] = std::max(-mu.density()[j], 0.0);
    }
    std::vector<Atom> ap, am;
    for (const auto& a : mu.atoms()) {
        if (a.mass > 0.0) ap.push_back(a);
        if (a.mass < 0.0) am.push_back({a.location, -a.mass});
    }
    return {CircleMeasure(mu.grid(), std::move(plus), std::move(ap)),
            CircleMeasure(mu.grid(), std::move(minus), std::move(am))};
}

Moments first_moments(const CircleMeasure& mu) {
    const Grid& g = mu.grid();
    Moments m;
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        m.cos += std::cos(t) * mu.density()[j];
        m.sin += std::sin(t) * mu.density()[j];
    }
    m.cos *= g.step();
    m.sin *= g.step();
    for (const auto& a : mu.atoms()) {
        m.cos += a.mass * std::cos(a.location);
        m.sin += a.mass * std::sin(a.location);
    }
    return m;
}

namespace {

double moment_tolerance(double scale) { return 1e-9 * std::max(1.0, scale); }

}  // namespace

OrthogonalPair orthogonalize_pair(const CircleMeasure& nu_plus, const CircleMeasure& nu_minus) {
    if (!(nu_plus.grid() == nu_minus.grid()))
        throw InputError("measures live on different grids");
    const auto mp = first_moments(nu_plus);
    const auto mm = first_moments(nu_minus);
    const double tol = moment_tolerance(tv_norm(nu_plus) + tv_norm(nu_minus));
    if (std::abs(mp.cos - mm.cos) > tol || std::abs(mp.sin - mm.sin) > tol)
        throw InputError("orthogonalize_pair: first moments of the two parts differ");

    OrthogonalPair out{nu_plus, nu_minus, mp.cos / kPi, mp.sin / kPi, 0.0};
    out.c = std::hypot(out.a, out.b);
    const Grid& g = nu_plus.grid();
    std::vector<double> shift(static_cast<std::size_t>(g.size()));
    for (int j = 0; j < g.size(); ++j) {
        const double t = g.node(j);
        shift[j] = out.c - out.a * std::cos(t) - out.b * std::sin(t);
    }
    out.plus = nu_plus.plus_density(shift);
    out.minus = nu_minus.plus_density(shift);
    return out;
}

CircleFunction solve_h_from_measure(const CircleMeasure& mu) {
    const auto m = first_moments(mu);
    const double tol = moment_tolerance(tv_norm(mu));
    if (std::abs(m.cos) > tol || std::abs(m.sin) > tol)
        throw InputError("solve_h_from_measure: measure has non-zero first moments (" +
                         std::to_string(m.cos) + ", " + std::to_string(m.sin) + ")");

    const Grid& g = mu.grid();
    auto density = CircleFunction::from_samples(g, {mu.density().begin(), mu.density().end()});
    auto c = density.coeffs();
    for (int k = 0; k <= c.max_mode(); ++k) {
        if (k == 1) {
            c.cos[k] = 0.0;
            c.sin[k] = 0.0;
            continue;
        }
        const double denom = 1.0 - static_cast<double>(k) * k;
        c.cos[k] /= denom;
        c.sin[k] /= denom;
    }
    auto h = CircleFunction::from_coefficients(g, std::move(c));
    if (mu.atoms().empty()) return h;

    std::vector<double> locs, masses;
    for (const auto& a : mu.atoms()) {
        locs.push_back(a.location);
        masses.push_back(a.mass);
    }
    const auto nodes = g.nodes();
    std::vector<double> atomic(nodes.size());
    kernels::atom_green_sum(nodes, locs, masses, atomic);
    std::vector<double> v(nodes.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = h.values()[j] + atomic[j];
    return CircleFunction::from_samples(g, std::move(v), Regularity::piecewise);
}

namespace {

SupportDecomposition decompose_measure(const CircleFunction& f, const CircleMeasure& mu) {
    const Grid& g = f.grid();
    auto parts = jordan_decompose(mu);
    auto pair = orthogonalize_pair(parts.plus, parts.minus);
    auto h_plus = solve_h_from_measure(pair.plus);
    auto h_minus = solve_h_from_measure(pair.minus);

    // f - (h+ - h-) lies in the kernel span{cos, sin}; least squares on the
    // grid reduces to the discrete first Fourier mode.
    const auto diff = f - (h_plus - h_minus);
    double alpha = 0.0;
    double beta = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        alpha += diff.value(j) * std::cos(g.node(j));
        beta += diff.value(j) * std::sin(g.node(j));
    }
    alpha *= 2.0 / g.size();
    beta *= 2.0 / g.size();

    auto kernel = alpha * cos_function(g) + beta * sin_function(g);
    auto h1 = (h_plus + kernel).with_regularity(h_plus.regularity());
    const auto& h2 = h_minus;
    const auto recon = f - (h1 - h2);
    double err = 0.0;
    for (double v : recon.values()) err = std::max(err, std::abs(v));

    const double tv = tv_norm(mu);
    const double ratio = tv > 0.0 ? std::max(tv_norm(pair.plus), tv_norm(pair.minus)) / tv : 0.0;
    return {h1, h2, pair.plus, pair.minus, ratio, err};
}

}  // namespace

SupportDecomposition decompose_support(const CircleFunction& f) {
    return decompose_measure(f, second_derivative_measure(f));
}

SupportDecomposition decompose_support(const Body& body) {
    return decompose_measure(body.support(), second_derivative_measure(body));
}

}  // namespace affiso
