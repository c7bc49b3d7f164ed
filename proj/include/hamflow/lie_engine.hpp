// Evolution generator, Poisson brackets, truncated Lie-series steps and
// numeric Jacobians of phase-space maps.
//
// The generator is fixed to the Hamiltonian vector field throughout: the
// general canonical generator h(q, p) that appears in the derivation of the
// canonicality conditions has no independent runtime role once h = H.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/phase_state.hpp"

namespace hamflow {

// Values (xi, eta) of a phase-space vector field
// sum_j xi_j d/dq_j + eta_j d/dp_j at one point.
struct VectorFieldSample {
    std::vector<double> xi;
    std::vector<double> eta;
    PhaseState at;

    double max_abs() const;
    double norm() const;
};

// A vector field as a function of the base point.
using VectorField = std::function<VectorFieldSample(const PhaseState&)>;

// A scalar field on phase space with optional analytic gradients; missing
// gradients fall back to the shared central-difference policy.
struct ScalarField {
    std::string name;
    std::function<double(const PhaseState&)> value;
    std::function<std::vector<double>(const PhaseState&)> grad_q;  // optional
    std::function<std::vector<double>(const PhaseState&)> grad_p;  // optional

    std::vector<double> eval_grad_q(const PhaseState& s) const;
    std::vector<double> eval_grad_p(const PhaseState& s) const;
};

// 2N x 2N matrix of partial derivatives of a phase-space map in the
// coordinate order (q1..qN, p1..pN), at a stated base point and step.
struct MapJacobian {
    Eigen::MatrixXd matrix;
    PhaseState base;
    double delta = 0.0;
};

// Hamiltonian vector field of sys at s: xi = dH/dp, eta = -dH/dq.
VectorFieldSample evolution_generator(const HamiltonianSystem& sys, const PhaseState& s);

// Directional derivative of f along the field sample: xi . df/dq + eta . df/dp.
double apply_field(const VectorFieldSample& field, const ScalarField& f);

// sum_j (df/dq_j dg/dp_j - dg/dq_j df/dp_j) at s.
double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhaseState& s);

// One step of the Lie series sum_{k=0..K} delta^k/k! g^k applied to the
// coordinate functions.  K = 1 is the Euler step.  K in 2..4 needs analytic
// gradients; deeper nesting is refused.
PhaseState lie_series_step(const HamiltonianSystem& sys, const PhaseState& s, double delta,
                           int order);

// Central-difference Jacobian (step 1e-6 per coordinate) of the map
// s -> step(s, delta).  Callers chasing the rounding floor of smooth maps
// may widen the stencil.
MapJacobian numeric_jacobian(const std::function<PhaseState(const PhaseState&, double)>& step,
                             const PhaseState& s, double delta, double stencil_step = 1e-6);

// Max-norm of J^T Omega J - Omega; zero for canonical maps.
double symplectic_defect(const MapJacobian& jac);

}  // namespace hamflow
