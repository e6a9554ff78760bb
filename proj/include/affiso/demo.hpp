#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "affiso/circle_function.hpp"

namespace affiso {

struct DemoStep {
    int step = 0;
    double i_value = 0.0;  // I(u_k, u_k)
    double lambda = 1.0;
    double p = 0.0;
    double min_u = 0.0;       // minimum of the normalized transformed iterate
    bool concentrating = false;  // min_u dropped relative to the previous step
};

struct DemoOptions {
    std::uint64_t seed = 0;
    int steps = 12;
    /// Skip the balancing searches and apply growing transforms about pi/2
    /// instead, which lets the mass of u^-2 concentrate.
    bool skip_balancing = false;
    /// Starting function; defaults to random_smooth_body(seed, 2, 6).
    std::optional<CircleFunction> start;
    Grid grid{};
};

/// Walks u_t = (1 - t) u_start + t u_target with t_k = 1 - 2^-k toward the
/// centred ellipse that best fits the positioned start. Every iterate is
/// positioned, normalized in H^1, balanced (p_k, then lambda_k) and
/// transformed; the trace records I, lambda_k, p_k and min u_k.
std::vector<DemoStep> demo_maximize(const DemoOptions& opts);

/// H^1 norm sqrt(int u^2 + u'^2).
double h1_norm(const CircleFunction& u);

}  // namespace affiso
