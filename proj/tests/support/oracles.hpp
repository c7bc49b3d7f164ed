// Test-side oracles, kept independent of the library implementations they
// cross-check.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hamflow/phase_state.hpp"

namespace oracles {

// Textbook four-stage Runge-Kutta on a 2-component first-order system.
inline std::array<double, 2> rk4_step(
    const std::function<std::array<double, 2>(const std::array<double, 2>&)>& rhs,
    const std::array<double, 2>& y, double h) {
    const std::array<double, 2> k1 = rhs(y);
    const std::array<double, 2> k2 = rhs({y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
    const std::array<double, 2> k3 = rhs({y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
    const std::array<double, 2> k4 = rhs({y[0] + h * k3[0], y[1] + h * k3[1]});
    return {y[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
            y[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

inline std::array<double, 2> ho_rhs(const std::array<double, 2>& y) { return {y[1], -y[0]}; }

// Oscillation period of H = p^2/2 + V(q) at energy e for a symmetric well
// with turning point q1 > 0: T = 4 int_0^{q1} dq / sqrt(2 (e - V(q))),
// evaluated after the substitution q = q1 sin(phi) which removes the
// endpoint singularity.  dV is V' (needed for the finite endpoint limit).
inline double period_by_quadrature(const std::function<double(double)>& potential,
                                   const std::function<double(double)>& dV, double e, double q1,
                                   int nodes = 4001) {
    auto integrand = [&](double phi) {
        const double q = q1 * std::sin(phi);
        const double v = potential(q);
        const double p2 = 2.0 * (e - v);
        const double endpoint_limit = std::sqrt(q1 / dV(q1));
        if (p2 <= 0.0) return endpoint_limit;
        // Near the turning point, 2(e - V) ~ V'(q1) q1 cos(phi)^2; switch
        // to the limit form once the direct quotient loses accuracy.
        const double c = std::cos(phi);
        if (c * c < 1e-12) return endpoint_limit;
        return q1 * c / std::sqrt(p2);
    };
    // Composite Simpson over [0, pi/2].
    const double a = 0.0, b = std::acos(-1.0) / 2.0;
    const int n = nodes % 2 == 0 ? nodes + 1 : nodes;
    const double h = (b - a) / (n - 1);
    double acc = integrand(a) + integrand(b);
    for (int i = 1; i < n - 1; ++i) acc += integrand(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return 4.0 * acc * h / 3.0;
}

// Deterministic random states with norms in [lo, hi].
inline std::vector<hamflow::PhaseState> random_states(std::size_t count, unsigned seed,
                                                      double lo = 0.5, double hi = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_real_distribution<double> radius(lo, hi);
    std::vector<hamflow::PhaseState> states;
    states.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = radius(rng);
        const double a = angle(rng);
        states.push_back(hamflow::make_state1(r * std::sin(a), r * std::cos(a)));
    }
    return states;
}

}  // namespace oracles
