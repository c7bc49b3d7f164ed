// Time-independent Hamiltonian systems and the built-in catalogue.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hamflow/phase_state.hpp"

namespace hamflow {

// A time-independent Hamiltonian on 2N-dimensional phase space.  h and the
// gradients must be pure functions of (q, p); the time tag is ignored.
// exact_flow, when present, is the true time-delta flow map.
struct HamiltonianSystem {
    int dim = 1;
    std::string label;
    std::function<double(const PhaseState&)> h;
    std::function<std::vector<double>(const PhaseState&)> grad_q;
    std::function<std::vector<double>(const PhaseState&)> grad_p;
    bool analytic_gradients = false;
    std::function<PhaseState(const PhaseState&, double)> exact_flow;  // may be empty

    bool has_exact_flow() const { return static_cast<bool>(exact_flow); }
};

// Relative step used by all central-difference gradients in the toolkit:
// h = FD_REL_STEP * max(1, |coordinate|).
inline constexpr double FD_REL_STEP = 1e-6;

// Central-difference gradient of f with respect to the positions (or the
// momenta) at s.
std::vector<double> fd_grad_q(const std::function<double(const PhaseState&)>& f,
                              const PhaseState& s);
std::vector<double> fd_grad_p(const std::function<double(const PhaseState&)>& f,
                              const PhaseState& s);

// Rescaled 1-D harmonic oscillator H = (p^2 + x^2)/2 with its closed-form
// rotation flow.
HamiltonianSystem make_harmonic_oscillator();

// H = p^2/2 + (1 - cos x); no closed-form flow attached.
HamiltonianSystem make_pendulum();

// H = p^2/2 + x^4/4; no closed-form flow attached.
HamiltonianSystem make_quartic_oscillator();

// Wraps a user Hamiltonian; any gradient not supplied is filled with
// central finite differences.
HamiltonianSystem make_custom_system(
    std::function<double(const PhaseState&)> h, int dim,
    std::function<std::vector<double>(const PhaseState&)> grad_q = nullptr,
    std::function<std::vector<double>(const PhaseState&)> grad_p = nullptr,
    std::string label = "custom");

}  // namespace hamflow
