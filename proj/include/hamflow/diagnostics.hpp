// Trajectory runner, squared-distance error metrics, and scheme audits.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hamflow/functionals.hpp"
#include "hamflow/hamiltonian.hpp"
#include "hamflow/phase_state.hpp"
#include "hamflow/schemes.hpp"

namespace hamflow {

struct TrajectoryRecord {
    std::string scheme_name;
    std::string system_label;
    PhaseState seed;
    std::vector<double> deltas;                      // one entry per step
    std::vector<PhaseState> states;                  // deltas.size() + 1 entries
    std::optional<std::vector<PhaseState>> reference;  // exact states at matching times
    std::string truncation_error;                    // set when a step failed mid-run
};

// Per-step squared errors for one tracked functional; excluded flags mark
// singular-band samples.
struct SigmaSeries {
    std::string name;
    std::vector<double> values;
    std::vector<bool> excluded;
};

struct ErrorReport {
    std::vector<double> sigma_phase;  // (x(t) - x(n d))^2 + (p(t) - p(n d))^2 per state
    std::vector<SigmaSeries> functionals;
    double max_sigma_phase = 0.0;
    double mean_sigma_phase = 0.0;
};

struct AuditEntry {
    std::string check;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    const AuditEntry& entry(const std::string& check) const;
};

struct ConvergenceRow {
    double delta = 0.0;
    double error = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;  // log-log least-squares fit
};

// Iterates the scheme from the seed; time tags accumulate by the scheme's
// own rule.  A scheme failure mid-run truncates the record and stores the
// message instead of propagating.
TrajectoryRecord run_trajectory(const Scheme& scheme, const PhaseState& seed,
                                const std::vector<double>& deltas);
TrajectoryRecord run_trajectory(const Scheme& scheme, const PhaseState& seed, double delta,
                                int steps);

// Attaches reference states at the record's times: the exact flow when the
// system has one, otherwise generic RK4 refined 100x per step.
void attach_reference(TrajectoryRecord& record, const HamiltonianSystem& sys);

// Squared phase-space distance per state plus squared errors of the
// requested functionals.  Needs a reference.
ErrorReport sigma_phase(const TrajectoryRecord& record, const std::vector<Functional>& tracked = {});

// Property audit: identity at zero step, inverse, group law, symplectic
// defect, energy drift per step, consistency limit.  Failures are entries,
// not errors.
AuditReport audit_scheme(const Scheme& scheme, const HamiltonianSystem& sys,
                         const std::vector<PhaseState>& samples,
                         const std::vector<double>& deltas);

// Global error against the exact flow at a fixed horizon for each delta,
// plus the fitted convergence order.
ConvergenceTable convergence_order(const Scheme& scheme, const HamiltonianSystem& sys,
                                   const PhaseState& seed, double horizon,
                                   const std::vector<double>& deltas);

}  // namespace hamflow
