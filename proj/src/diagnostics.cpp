#include "hamflow/diagnostics.hpp"

#include <cmath>

#include "hamflow/error_lab.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/lie_engine.hpp"
#include "hamflow/numerics.hpp"

namespace hamflow {

const AuditEntry& AuditReport::entry(const std::string& check) const {
    for (const AuditEntry& e : entries)
        if (e.check == check) return e;
    throw domain_error("audit report has no entry '" + check + "'");
}

TrajectoryRecord run_trajectory(const Scheme& scheme, const PhaseState& seed,
                                const std::vector<double>& deltas) {
    TrajectoryRecord record;
    record.scheme_name = scheme.name;
    record.seed = seed;
    record.states.reserve(deltas.size() + 1);
    record.states.push_back(seed);
    record.deltas.reserve(deltas.size());
    for (double delta : deltas) {
        try {
            record.states.push_back(scheme.step(record.states.back(), delta));
        } catch (const Error& err) {
            record.truncation_error = err.what();
            break;
        }
        record.deltas.push_back(delta);
    }
    return record;
}

TrajectoryRecord run_trajectory(const Scheme& scheme, const PhaseState& seed, double delta,
                                int steps) {
    if (steps < 0) throw domain_error("run_trajectory needs a non-negative step count");
    return run_trajectory(scheme, seed, std::vector<double>(steps, delta));
}

void attach_reference(TrajectoryRecord& record, const HamiltonianSystem& sys) {
    record.system_label = sys.label;
    std::vector<PhaseState> reference;
    reference.reserve(record.states.size());
    reference.push_back(record.seed);

    if (sys.has_exact_flow()) {
        for (std::size_t i = 1; i < record.states.size(); ++i)
            reference.push_back(sys.exact_flow(record.seed, record.states[i].t - record.seed.t));
    } else {
        // Refined generic RK4 as the flow proxy; an oracle, not ground truth.
        const Scheme fine = generic_rk4_scheme(sys);
        for (std::size_t i = 1; i < record.states.size(); ++i) {
            PhaseState at = reference.back();
            const double span = record.states[i].t - at.t;
            for (int k = 0; k < 100; ++k) at = fine.step(at, span / 100.0);
            reference.push_back(at);
        }
    }
    record.reference = std::move(reference);
}

ErrorReport sigma_phase(const TrajectoryRecord& record, const std::vector<Functional>& tracked) {
    if (!record.reference)
        throw capability_error("sigma_phase needs a record with reference states");
    const std::vector<PhaseState>& ref = *record.reference;

    ErrorReport report;
    report.sigma_phase.resize(record.states.size());
    for (const Functional& fn : tracked)
        report.functionals.push_back(SigmaSeries{
            fn.field.name, std::vector<double>(record.states.size(), 0.0),
            std::vector<bool>(record.states.size(), false)});

    double sum = 0.0;
    for (std::size_t i = 0; i < record.states.size(); ++i) {
        const double dist = phase_distance(record.states[i], ref[i]);
        report.sigma_phase[i] = dist * dist;
        report.max_sigma_phase = std::max(report.max_sigma_phase, report.sigma_phase[i]);
        sum += report.sigma_phase[i];

        for (std::size_t f = 0; f < tracked.size(); ++f) {
            const Functional& fn = tracked[f];
            const bool singular =
                fn.denominator && (std::abs(fn.denominator(record.states[i])) < SINGULAR_BAND ||
                                   std::abs(fn.denominator(ref[i])) < SINGULAR_BAND);
            if (singular) {
                report.functionals[f].excluded[i] = true;
                continue;
            }
            const double diff = fn.field.value(ref[i]) - fn.field.value(record.states[i]);
            report.functionals[f].values[i] = diff * diff;
        }
    }
    report.mean_sigma_phase = sum / static_cast<double>(record.states.size());
    return report;
}

AuditReport audit_scheme(const Scheme& scheme, const HamiltonianSystem& sys,
                         const std::vector<PhaseState>& samples,
                         const std::vector<double>& deltas) {
    AuditReport report;
    auto push = [&](const std::string& check, double measured, double threshold) {
        report.entries.push_back(AuditEntry{check, measured <= threshold, measured, threshold});
    };

    double identity = 0.0, inverse = 0.0, group = 0.0, symplectic = 0.0, energy = 0.0;
    for (const PhaseState& s : samples) {
        identity = std::max(identity, phase_distance(scheme.step(s, 0.0), s));
        for (double delta : deltas) {
            const PhaseState forward = scheme.step(s, delta);
            inverse = std::max(inverse, phase_distance(scheme.step(forward, -delta), s));
            group = std::max(group, phase_distance(scheme.step(forward, delta),
                                                   scheme.step(s, 2.0 * delta)));
            // Wider stencil than the numeric_jacobian default: the audit
            // thresholds sit near the 1e-6 stencil's rounding floor.
            symplectic = std::max(
                symplectic, symplectic_defect(numeric_jacobian(scheme.step, s, delta, 1e-5)));
            energy = std::max(energy, std::abs(sys.h(forward) - sys.h(s)));
        }
    }
    push("identity-at-zero", identity, 1e-12);
    push("inverse", inverse, 1e-10);
    push("group-law", group, 1e-10);
    push("symplectic-defect", symplectic, 1e-8);
    push("energy-drift-per-step", energy, 1e-12);

    double consistency = 0.0;
    const double probe_delta = 1e-4;
    for (const PhaseState& s : samples) {
        const VectorFieldSample gen = evolution_generator(sys, s);
        const PhaseState advanced = scheme.step(s, probe_delta);
        for (int j = 0; j < sys.dim; ++j) {
            consistency = std::max(
                consistency, std::abs((advanced.q[j] - s.q[j]) / probe_delta - gen.xi[j]));
            consistency = std::max(
                consistency, std::abs((advanced.p[j] - s.p[j]) / probe_delta - gen.eta[j]));
        }
    }
    push("consistency-limit", consistency, 1e-3);
    return report;
}

ConvergenceTable convergence_order(const Scheme& scheme, const HamiltonianSystem& sys,
                                   const PhaseState& seed, double horizon,
                                   const std::vector<double>& deltas) {
    if (!sys.has_exact_flow())
        throw capability_error("convergence_order needs a system with exact_flow");
    ConvergenceTable table;
    std::vector<double> log_d, log_e;
    for (double delta : deltas) {
        const int steps = static_cast<int>(std::llround(horizon / delta));
        PhaseState at = seed;
        for (int i = 0; i < steps; ++i) at = scheme.step(at, delta);
        const PhaseState truth = sys.exact_flow(seed, steps * delta);
        const double error = phase_distance(at, truth);
        table.rows.push_back(ConvergenceRow{delta, error});
        if (error > 0.0) {
            log_d.push_back(std::log(delta));
            log_e.push_back(std::log(error));
        }
    }
    if (log_d.size() >= 2) {
        const num::PolyFit fit = num::polyfit(log_d, log_e, 1);
        table.slope = fit.coeff[1];
    }
    return table;
}

}  // namespace hamflow
