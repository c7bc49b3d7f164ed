// Action-angle charts: the closed-form oscillator chart, a numeric
// pipeline for 1-D Hamiltonians on an energy window, frequencies, and
// exact schemes assembled from a chart.
//
// Normalization shipped here: the action is the energy itself (one valid
// choice; action-angle coordinates are not unique) and the angle is scaled
// to period 2*pi, so nu = 2*pi / T(E).  Angles are presented wrapped into
// (-pi, pi]; trajectory-level unwrapping is left to the caller.
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/phase_state.hpp"
#include "hamflow/schemes.hpp"

namespace hamflow {

// Invertible chart (q, p) <-> (z, I) with frequencies nu(I).  gamma holds
// the frozen action values of the trajectory a scheme was seeded on.
// branch is the sign chosen for the generating-function momentum branch;
// it fixes where the angle origin sits (p > 0 side for +1, p < 0 for -1).
struct ActionAngleChart {
    int dim = 1;
    int branch = +1;
    std::string label;
    double action_min = 0.0;
    double action_max = std::numeric_limits<double>::infinity();
    std::function<std::pair<std::vector<double>, std::vector<double>>(const PhaseState&)> to_aa;
    std::function<PhaseState(const std::vector<double>&, const std::vector<double>&)> from_aa;
    std::function<std::vector<double>(const std::vector<double>&)> nu;
    std::optional<std::vector<double>> gamma;
};

// Type-2 generating function data for a 1-D chart: K(q, I), its action
// derivative (the raw angle before anchoring), and the momentum branch.
struct GeneratingFunction {
    std::function<double(double, double)> K_eval;
    std::function<double(double, double)> dK_dI;
    std::function<double(double, double)> p_of;
};

// Closed-form chart of the rescaled harmonic oscillator:
// I = E = (p^2 + x^2)/2, z = atan2(x, p), nu = 1.  Excludes E = 0.
ActionAngleChart ho_chart();

// Numeric seven-step pipeline for a 1-D system on (e_lo, e_hi): momentum
// branch by bisection of H(q, p) = E, K by quadrature from the lower
// turning point, angle as dK/dE by central differences in E (step
// 1e-6 * E), inverse by monotone bisection in the angle.
ActionAngleChart numeric_chart_1d(const HamiltonianSystem& sys, double e_lo, double e_hi,
                                  int branch = +1);

// The Step 2-4 objects behind numeric_chart_1d, exposed for inspection.
GeneratingFunction make_generating_function_1d(const HamiltonianSystem& sys, double e_lo,
                                               double e_hi, int branch = +1);

// Frequencies at s by the chain-rule contraction d(theta)/dq . dH/dp at
// fixed action; for energy-action charts this is the Poisson bracket of
// the chart angle with H.
std::vector<double> frequencies(const ActionAngleChart& chart, const HamiltonianSystem& sys,
                                const PhaseState& s);

// Copy of the chart with gamma anchored at the seed state.  Re-seeding
// mid-run re-anchors gamma.
ActionAngleChart seed_chart(ActionAngleChart chart, const PhaseState& seed);

// One-step scheme (z, I) -> (z + nu delta, gamma) pulled back through the
// chart; exact up to chart accuracy, group-linear by construction.
Scheme exact_scheme_from_chart(const ActionAngleChart& chart, const PhaseState& seed);

}  // namespace hamflow
