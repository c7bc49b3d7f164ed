// Local-error analysis of one-step schemes: the defect field
// psi_{-delta} o d/d(delta) psi_delta, Taylor extraction of the error
// fields v_k, leading-error classification, error-invariant checks, and
// time reparametrization for schemes whose only error is a time shift.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/lie_engine.hpp"
#include "hamflow/phase_state.hpp"
#include "hamflow/schemes.hpp"

namespace hamflow {

// Value of the defect field at one point and step; equals the evolution
// generator for exact schemes and at delta -> 0 for consistent ones.
struct DefectSample {
    VectorFieldSample field;
    double delta = 0.0;
    std::string scheme_name;
};

// Coefficients d_0..d_K of the defect's expansion in powers of delta.
struct DefectExpansion {
    std::vector<VectorFieldSample> d;
    double fit_condition = 0.0;
};

enum class ErrorMethod { flow_difference, defect_relations };

// Error fields v_k (2 <= k <= K) of a scheme at one base point; v_0 and
// v_1 vanish for consistent schemes and are not stored.
struct ErrorSeries {
    PhaseState base;
    int order = 0;
    std::map<int, VectorFieldSample> v;
    ErrorMethod method = ErrorMethod::flow_difference;
};

struct InvariantCheck {
    std::string functional;
    double max_violation = 0.0;
    double scale = 1.0;
    bool pass = false;
    std::vector<std::size_t> excluded;  // grid indices inside the singular band
    std::string suggestion;             // reciprocal functional when exclusions occurred
};

struct ErrorClassification {
    std::string label;  // "exact" | "time-translation" | "scaling" | "mixed"
    int leading_order = 0;
    double time_coefficient = 0.0;
    double scaling_coefficient = 0.0;
    double relative_residual = 0.0;
};

// Time-reparametrization data: lambda is the scalar defect ratio
// (defect = lambda(delta) * generator), W(delta) = delta - int_0^delta
// lambda is the time error, and scheme is the base map re-tagged to
// advance T by int_0^delta lambda per step.
struct Reparametrization {
    std::function<double(double)> W;
    std::function<double(double)> lambda;
    Scheme scheme;
};

// Exclusion band applied to ratio functionals: grid states with
// |denominator| below this are reported, not evaluated.
inline constexpr double SINGULAR_BAND = 0.1;

// Defect field of the scheme at s: the delta-derivative of the step map
// evaluated at the pulled-back point psi_{-delta}(s).
DefectSample defect_field(const Scheme& scheme, const PhaseState& s, double delta);

// Least-squares extraction of the defect's polynomial coefficients over
// symmetric delta nodes +-{0.02, 0.04, ..., 0.12}.  K <= 5.
DefectExpansion taylor_defect(const Scheme& scheme, const PhaseState& s, int order_k);

// v_2(s) = d_1(s) from the defect expansion; refuses schemes whose d_0
// does not match the generator.
VectorFieldSample recover_v2(const Scheme& scheme, const HamiltonianSystem& sys,
                             const PhaseState& s);

// v_3 from the second-order defect relation
// v_3 = d^2 D / d delta^2 |_0 + 2 (g o v_2) - (v_2 o g), with the operator
// compositions acting on the coordinate functions.  Needs v_2 as an
// evaluable field plus analytic system gradients; the compositions
// differentiate the supplied coefficient functions once.
VectorFieldSample recover_v3(const Scheme& scheme, const HamiltonianSystem& sys,
                             const PhaseState& s, const VectorField& v2_field);

// v_k(s) as delta-derivatives at 0 of psi_delta(s) - exact_flow(s, delta),
// by symmetric stencils with two Richardson refinement levels (base node
// spacing 0.05).  Needs sys.exact_flow; K <= 5.
ErrorSeries flow_difference_errors(const Scheme& scheme, const HamiltonianSystem& sys,
                                   const PhaseState& s, int order_k);

// Max over the grid of the directional derivative of phi along the field;
// passes when it stays below 1e-8 * scale(phi).  States where
// |denominator| < SINGULAR_BAND are excluded and reported.
InvariantCheck verify_error_invariant(
    const VectorField& field, const ScalarField& phi, const std::vector<PhaseState>& grid,
    const std::function<double(const PhaseState&)>& denominator = nullptr,
    const std::string& reciprocal_hint = "");

// Fits the leading nonzero v_k over the grid onto the basis
// {generator, scaling field q d/dq + p d/dp} and labels the dominant part.
ErrorClassification classify_leading_error(const std::vector<ErrorSeries>& series,
                                           const HamiltonianSystem& sys);

// Builds the reparametrization of a scheme whose defect is a
// state-independent multiple of the generator; refuses otherwise.
Reparametrization reparametrize_time(const Scheme& scheme, const HamiltonianSystem& sys,
                                     const std::vector<PhaseState>& probes);

}  // namespace hamflow
