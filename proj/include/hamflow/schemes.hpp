// One-step schemes: the scheme abstraction, the four closed-form maps for
// the rescaled harmonic oscillator, a generic RK4, and error-field
// corrections.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/lie_engine.hpp"
#include "hamflow/phase_state.hpp"

namespace hamflow {

// A one-step map psi_delta together with its metadata.  step advances the
// time tag by its own rule (delta for plain schemes).  claimed_order 0
// marks an exact scheme.  group_linear declares the composition law
// psi_d1 o psi_d2 = psi_{d1+d2}.  d_delta, when present, is the closed-form
// derivative of the step map with respect to delta at (s, delta), packed
// (dQ..., dP...).
struct Scheme {
    std::string name;
    int claimed_order = 1;
    bool group_linear = false;
    bool has_analytic_d_delta = false;
    std::function<PhaseState(const PhaseState&, double)> step;
    std::function<std::vector<double>(const PhaseState&, double)> d_delta;
};

// X = x cos(delta) + p sin(delta), P = p cos(delta) - x sin(delta).
Scheme exact_ho_scheme();

// Q = q + delta dH/dp, P = p - delta dH/dq.
Scheme euler_scheme(const HamiltonianSystem& sys);

// The degree-4 polynomial map obtained by truncating the oscillator
// rotation at fourth order; identical to classical RK4 on this system.
Scheme rk4_ho_scheme();

// Energy-preserving map X = (4x + 4 delta p - delta^2 x)/(4 + delta^2),
// P = (4p - 4 delta x - delta^2 p)/(4 + delta^2); the inverse step is the
// same map with delta negated.
Scheme discrete_gradient_ho_scheme();

// Classical four-stage Runge-Kutta on the canonical equations.
Scheme generic_rk4_scheme(const HamiltonianSystem& sys);

// An order-k correction term: the field v_k entering
// psi'(s) = psi(s) - sum_k delta^k/k! v_k(s).
struct ErrorCorrection {
    int order = 2;
    VectorField field;
};

// Subtracts the supplied error fields from a base scheme; the claimed
// order rises to the largest corrected k.
Scheme corrected_scheme(const Scheme& base, const std::vector<ErrorCorrection>& corrections);

// delta-derivative of the step map at (s, delta): analytic when the scheme
// provides one, otherwise a 4-point central difference with step
// min(1e-4, |delta|/10).
std::vector<double> scheme_d_delta(const Scheme& scheme, const PhaseState& s, double delta);

}  // namespace hamflow
