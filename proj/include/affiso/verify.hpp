#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affiso/body.hpp"
#include "affiso/circle_function.hpp"

namespace affiso {

enum class InequalityKind { affine_isoperimetric, blaschke_santalo, mixed, main };

/// "AI", "BS", "MIXED", "MAIN".
std::string_view to_string(InequalityKind kind);

struct CheckOptions {
    double eq_tol = 1e-6;     // relative deficit below which equality is tested
    double tol = 1e-8;        // relative deficit below -tol is a violation
    double fit_tol = 1e-6;    // ellipse fit residual required to confirm equality
    double orthogonality_tol = 1e-8;
};

/// deficit = lhs - rhs, oriented so that deficit >= 0 when the inequality
/// holds; relative_deficit = deficit / scale.
struct InequalityReport {
    InequalityKind kind = InequalityKind::main;
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0;
    double scale = 1.0;
    double relative_deficit = 0.0;
    bool equality = false;
    std::optional<EllipseParams> fitted_ellipse;
    double fit_residual = 0.0;
    std::vector<std::pair<std::string, double>> details;

    bool holds(double tol) const { return relative_deficit >= -tol; }
    double detail(std::string_view key) const;
};

/// (int F h)^2 >= (1/4 pi^2) (int F^(2/3))^3 J(h) for nonnegative F with
/// vanishing first moments and nonnegative h. Throws InputError naming the
/// failed condition otherwise.
InequalityReport check_main(const CircleFunction& f, const CircleFunction& h,
                            const CheckOptions& opts = {});

/// 4 pi^2 int h (h'' + h) >= (int (D^2 h + h)^(2/3))^3, i.e. Omega^3 <= 8 pi^2 A.
InequalityReport check_affine_iso(const Body& body, const CheckOptions& opts = {});
InequalityReport check_affine_iso(const CircleFunction& h, const CheckOptions& opts = {});

/// 4 pi^2 (int h^-2)^-1 >= int h (h'' + h) after positioning; A A° <= pi^2.
InequalityReport check_blaschke_santalo(const Body& body, const CheckOptions& opts = {});
InequalityReport check_blaschke_santalo(const CircleFunction& h, const CheckOptions& opts = {});

/// 4 pi^2 (int (hL'' + hL) hK)^2 >= (int (hL'' + hL)^(2/3))^3 J(hK).
InequalityReport check_mixed(const CircleFunction& h_k, const CircleFunction& h_l,
                             const CheckOptions& opts = {});

/// F + (c - a cos - b sin) with a, b the normalized first moments of F and
/// c = hypot(a, b): nonnegative and orthogonal to cos and sin.
CircleFunction orthogonalize_density(const CircleFunction& f);

/// sup |u'' + u - u^-3 - (a cos + b sin) / u^4|
double el_residual(const CircleFunction& u, double a, double b);

struct MomentSystem {
    std::array<double, 4> matrix{};  // [cc, cs; cs, ss] of int (.)/u^4, row-major
    double det = 0.0;
};
MomentSystem el_moment_system(const CircleFunction& u);

/// Random convex body used by the sweep: a random smooth body with 3..8
/// modes, translated by up to 0.25 in each coordinate.
CircleFunction sweep_body(std::uint64_t seed, const Grid& grid = Grid{});

struct SweepRow {
    std::uint64_t seed = 0;
    double ai_relative_deficit = 0.0;
    double bs_relative_deficit = 0.0;
    bool ai_equality = false;
    bool bs_equality = false;
    int newton_iterations = 0;
    bool newton_converged = false;
    double max_moment = 0.0;  // max |int (cos, sin) / h^3| after positioning
    double moment_det = 0.0;  // determinant of el_moment_system(positioned)
};

SweepRow sweep_one(std::uint64_t seed, const Grid& grid = Grid{}, const CheckOptions& opts = {});

enum class Execution { serial, parallel };

/// Rows for seeds first_seed .. first_seed + count - 1, in seed order.
std::vector<SweepRow> sweep(std::uint64_t first_seed, int count, const Grid& grid = Grid{},
                            const CheckOptions& opts = {}, Execution exec = Execution::parallel);

}  // namespace affiso
