#include "hamflow/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hamflow/action_angle.hpp"
#include "hamflow/cli/csv.hpp"
#include "hamflow/cli/registry.hpp"
#include "hamflow/cli/svg_plot.hpp"
#include "hamflow/diagnostics.hpp"
#include "hamflow/error_lab.hpp"
#include "hamflow/lie_engine.hpp"
#include "json.hpp"

namespace hamflow::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path prepare_out_dir(const RunManifest& manifest) {
    const fs::path dir = resolve_out_dir(manifest);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw domain_error("cannot create output directory " + dir.string());
    return dir;
}

void echo_manifest(const RunManifest& manifest, const fs::path& dir) {
    RunManifest effective = manifest;
    effective.out_dir = dir.string();
    save_manifest(effective, (dir / "manifest.json").string());
}

std::vector<double> column_of(const TrajectoryRecord& record,
                              const std::function<double(const PhaseState&)>& pick) {
    std::vector<double> out;
    out.reserve(record.states.size());
    for (const PhaseState& s : record.states) out.push_back(pick(s));
    return out;
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

json field_to_json(const VectorFieldSample& v) {
    return json{{"xi", v.xi}, {"eta", v.eta}};
}

// Deterministic analysis grid over [-2, 2]^2, clear of the p = 0 band.
std::vector<PhaseState> analysis_grid() {
    std::vector<PhaseState> grid;
    for (double x : {-1.5, -0.5, 0.5, 1.5})
        for (double p : {-1.5, -0.5, 0.5, 1.5}) grid.push_back(make_state1(x, p));
    return grid;
}

}  // namespace

std::string resolve_out_dir(const RunManifest& manifest) {
    if (const char* env = std::getenv("HAMFLOW_OUT"); env && *env) return env;
    return manifest.out_dir;
}

int exit_code_for(const Error& error) {
    switch (error.kind()) {
        case ErrorKind::domain:
            return 2;
        case ErrorKind::capability:
            return 3;
        case ErrorKind::numerical:
            return 4;
    }
    return 4;
}

SimulateSummary cmd_simulate(const RunManifest& manifest) {
    const HamiltonianSystem sys = system_by_id(manifest.system);
    const Scheme scheme = scheme_by_id(manifest.scheme, sys);
    const PhaseState seed = make_state(manifest.seed_q, manifest.seed_p);

    TrajectoryRecord record = run_trajectory(scheme, seed, manifest.step_list());
    attach_reference(record, sys);

    std::vector<Functional> tracked;
    for (const std::string& name : manifest.functionals)
        tracked.push_back(functional_by_name(name, sys));
    const ErrorReport report = sigma_phase(record, tracked);

    const fs::path dir = prepare_out_dir(manifest);
    echo_manifest(manifest, dir);
    write_trajectory_csv((dir / "trajectory.csv").string(), record, report, sys);

    const std::vector<double> times = column_of(record, [](const PhaseState& s) { return s.t; });
    const std::vector<double> xs = column_of(record, [](const PhaseState& s) { return s.q[0]; });
    const std::vector<double> ps = column_of(record, [](const PhaseState& s) { return s.p[0]; });
    std::vector<double> ref_x, ref_p;
    for (const PhaseState& s : *record.reference) {
        ref_x.push_back(s.q[0]);
        ref_p.push_back(s.p[0]);
    }

    write_svg_plot((dir / "phase.svg").string(), "phase portrait: " + scheme.name, "x", "p",
                   {PlotSeries{ref_x, ref_p, "#d62728", false, "reference"},
                    PlotSeries{xs, ps, "#1f77b4", true, scheme.name}});
    write_svg_plot((dir / "x_t.svg").string(), "position: " + scheme.name, "t", "x",
                   {PlotSeries{times, ref_x, "#d62728", false, "reference"},
                    PlotSeries{times, xs, "#1f77b4", true, scheme.name}});
    write_svg_plot((dir / "p_t.svg").string(), "momentum: " + scheme.name, "t", "p",
                   {PlotSeries{times, ref_p, "#d62728", false, "reference"},
                    PlotSeries{times, ps, "#1f77b4", true, scheme.name}});

    std::vector<PlotSeries> sigma_series{
        PlotSeries{times, report.sigma_phase, "#000000", false, "sigma(x,p)"}};
    const std::vector<std::string> palette = {"#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t f = 0; f < report.functionals.size(); ++f) {
        PlotSeries series;
        series.color = palette[f % palette.size()];
        series.label = "sigma(" + report.functionals[f].name + ")";
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (report.functionals[f].excluded[i]) continue;
            series.x.push_back(times[i]);
            series.y.push_back(report.functionals[f].values[i]);
        }
        sigma_series.push_back(std::move(series));
    }
    write_svg_plot((dir / "sigma_t.svg").string(), "error over time: " + scheme.name, "t",
                   "sigma", sigma_series);

    SimulateSummary summary;
    summary.out_dir = dir.string();
    summary.rows = record.states.size();
    summary.final_t = record.states.back().t;
    summary.max_sigma_phase = report.max_sigma_phase;
    return summary;
}

AnalyzeSummary cmd_analyze_error(const RunManifest& manifest) {
    if (manifest.error_order > 5)
        throw domain_error("analyze-error supports orders K <= 5");
    const HamiltonianSystem sys = system_by_id(manifest.system);
    const Scheme scheme = scheme_by_id(manifest.scheme, sys);
    const std::vector<PhaseState> grid = analysis_grid();

    // Error fields per grid state: the flow-difference route when the true
    // flow is known, otherwise v2 from the defect expansion.
    std::vector<ErrorSeries> series;
    const bool flow_route = sys.has_exact_flow();
    const int order = flow_route ? manifest.error_order : 2;
    for (const PhaseState& s : grid) {
        if (flow_route) {
            series.push_back(flow_difference_errors(scheme, sys, s, order));
        } else {
            ErrorSeries es;
            es.base = s;
            es.order = 2;
            es.method = ErrorMethod::defect_relations;
            es.v[2] = recover_v2(scheme, sys, s);
            series.push_back(es);
        }
    }
    const ErrorClassification cls = classify_leading_error(series, sys);

    json j;
    j["scheme"] = scheme.name;
    j["system"] = sys.label;
    j["method"] = flow_route ? "flow_difference" : "defect_relations";
    j["states"] = json::array();
    for (const PhaseState& s : grid) j["states"].push_back({s.q[0], s.p[0]});
    j["v"] = json::object();
    if (cls.label != "exact") {
        for (int k = 2; k <= order; ++k) {
            json samples = json::array();
            for (const ErrorSeries& es : series) samples.push_back(field_to_json(es.v.at(k)));
            j["v"][std::to_string(k)] = samples;
        }
    }
    j["classification"] = {{"label", cls.label},
                           {"leading_order", cls.leading_order},
                           {"time_coefficient", cls.time_coefficient},
                           {"scaling_coefficient", cls.scaling_coefficient},
                           {"relative_residual", cls.relative_residual}};

    // Invariant checks of the leading field against the tracked functionals.
    j["invariants"] = json::array();
    if (cls.leading_order >= 2) {
        const int lead = cls.leading_order;
        VectorField leading_field;
        if (flow_route) {
            leading_field = [scheme, sys, lead](const PhaseState& s) {
                return flow_difference_errors(scheme, sys, s, lead).v.at(lead);
            };
        } else {
            leading_field = [scheme, sys](const PhaseState& s) {
                return recover_v2(scheme, sys, s);
            };
        }
        std::vector<std::string> names = manifest.functionals;
        if (names.empty()) names = {"x/p", "H"};
        for (const std::string& name : names) {
            const Functional fn = functional_by_name(name, sys);
            const InvariantCheck check = verify_error_invariant(
                leading_field, fn.field, grid, fn.denominator, fn.reciprocal_hint);
            j["invariants"].push_back({{"functional", check.functional},
                                       {"max_violation", check.max_violation},
                                       {"scale", check.scale},
                                       {"pass", check.pass},
                                       {"excluded", check.excluded},
                                       {"suggestion", check.suggestion}});
        }
    }

    // Time-reparametrization data when the defect is a pure time shift.
    AnalyzeSummary summary;
    try {
        const std::vector<PhaseState> probes(grid.begin(), grid.begin() + 3);
        const Reparametrization repar = reparametrize_time(scheme, sys, probes);
        json lambda_table = json::array();
        json w_samples = json::array();
        for (int i = 1; i <= 10; ++i) {
            const double delta = 0.05 * i;
            lambda_table.push_back({delta, repar.lambda(delta)});
            w_samples.push_back({delta, repar.W(delta)});
        }
        j["lambda"] = lambda_table;
        j["W"] = w_samples;
        summary.reparametrizable = true;
    } catch (const Error&) {
        summary.reparametrizable = false;
    }

    const fs::path dir = prepare_out_dir(manifest);
    echo_manifest(manifest, dir);
    write_json(j, dir / "errors.json");

    summary.out_dir = dir.string();
    summary.classification = cls.label;
    summary.leading_order = cls.leading_order;
    return summary;
}

CorrectSummary cmd_correct(const RunManifest& manifest) {
    const HamiltonianSystem sys = system_by_id(manifest.system);
    std::string corrected_id = manifest.scheme;
    if (!manifest.correct_orders.empty()) {
        corrected_id += "+";
        for (int k : manifest.correct_orders) corrected_id += "v" + std::to_string(k);
    }

    const Scheme base = scheme_by_id(manifest.scheme, sys);
    const Scheme corrected = manifest.correct_orders.empty()
                                 ? base
                                 : scheme_by_id(corrected_id, sys);

    const PhaseState seed = make_state(manifest.seed_q, manifest.seed_p);
    const std::vector<double> deltas = {0.2, 0.1, 0.05, 0.025};
    const double horizon = 2.0;
    const ConvergenceTable before = convergence_order(base, sys, seed, horizon, deltas);
    const ConvergenceTable after = manifest.correct_orders.empty()
                                       ? before
                                       : convergence_order(corrected, sys, seed, horizon, deltas);

    json j;
    j["base"] = base.name;
    j["corrected"] = corrected.name;
    j["registered_id"] = manifest.correct_orders.empty() ? manifest.scheme : corrected_id;
    j["horizon"] = horizon;
    auto table_json = [](const ConvergenceTable& table) {
        json rows = json::array();
        for (const ConvergenceRow& row : table.rows) rows.push_back({row.delta, row.error});
        return json{{"rows", rows}, {"slope", table.slope}};
    };
    j["before"] = table_json(before);
    j["after"] = table_json(after);

    const fs::path dir = prepare_out_dir(manifest);
    echo_manifest(manifest, dir);
    write_json(j, dir / "correction.json");

    CorrectSummary summary;
    summary.out_dir = dir.string();
    summary.corrected_id = j["registered_id"];
    summary.base_order = before.slope;
    summary.corrected_order = after.slope;
    return summary;
}

ActionAngleSummary cmd_action_angle(const RunManifest& manifest) {
    const HamiltonianSystem sys = system_by_id(manifest.system);
    if (sys.dim != 1) throw capability_error("action-angle pipeline ships for 1-D systems");
    const ActionAngleChart chart =
        numeric_chart_1d(sys, manifest.energy_lo, manifest.energy_hi);
    const PhaseState seed = make_state(manifest.seed_q, manifest.seed_p);

    const fs::path dir = prepare_out_dir(manifest);
    echo_manifest(manifest, dir);

    // Chart grid: energies across the window, angles around the circle.
    {
        std::ofstream out(dir / "chart.csv");
        if (!out) throw domain_error("cannot write chart.csv");
        out << "q,p,theta,I,nu\n";
        const int n_e = 5;
        const int n_z = 24;
        for (int ie = 0; ie < n_e; ++ie) {
            const double e = manifest.energy_lo +
                             (ie + 0.5) * (manifest.energy_hi - manifest.energy_lo) / n_e;
            const double nu = chart.nu({e})[0];
            for (int iz = 0; iz < n_z; ++iz) {
                const double z = -M_PI + (iz + 0.5) * 2.0 * M_PI / n_z;
                const PhaseState s = chart.from_aa({z}, {e});
                const auto [angles, actions] = chart.to_aa(s);
                out << format_g17(s.q[0]) << ',' << format_g17(s.p[0]) << ','
                    << format_g17(angles[0]) << ',' << format_g17(actions[0]) << ','
                    << format_g17(nu) << "\n";
            }
        }
    }

    const Scheme aa_scheme = exact_scheme_from_chart(chart, seed);
    TrajectoryRecord record = run_trajectory(aa_scheme, seed, manifest.step_list());
    attach_reference(record, sys);
    const ErrorReport report = sigma_phase(record);
    write_trajectory_csv((dir / "aa_trajectory.csv").string(), record, report, sys);

    double drift = 0.0;
    const double action0 = chart.to_aa(seed).second[0];
    for (const PhaseState& s : record.states)
        drift = std::max(drift, std::abs(chart.to_aa(s).second[0] - action0));

    ActionAngleSummary summary;
    summary.out_dir = dir.string();
    summary.nu_at_seed = chart.nu({action0})[0];
    summary.max_action_drift = drift;
    return summary;
}

AuditSummary cmd_audit(const RunManifest& manifest) {
    const HamiltonianSystem sys = system_by_id(manifest.system);
    const Scheme scheme = scheme_by_id(manifest.scheme, sys);

    std::vector<PhaseState> samples;
    for (double x : {-1.2, -0.4, 0.7, 1.5})
        for (double p : {-0.9, 0.8}) samples.push_back(make_state1(x, p));
    const std::vector<double> deltas = {0.1, 0.2, 0.3};
    const AuditReport report = audit_scheme(scheme, sys, samples, deltas);

    json j;
    j["scheme"] = scheme.name;
    j["system"] = sys.label;
    j["checks"] = json::array();
    for (const AuditEntry& entry : report.entries)
        j["checks"].push_back({{"check", entry.check},
                               {"pass", entry.pass},
                               {"measured", entry.measured},
                               {"threshold", entry.threshold}});

    const fs::path dir = prepare_out_dir(manifest);
    echo_manifest(manifest, dir);
    write_json(j, dir / "audit.json");

    AuditSummary summary;
    summary.out_dir = dir.string();
    summary.identity_pass = report.entry("identity-at-zero").pass;
    summary.inverse_pass = report.entry("inverse").pass;
    summary.group_law_pass = report.entry("group-law").pass;
    summary.symplectic_pass = report.entry("symplectic-defect").pass;
    return summary;
}

}  // namespace hamflow::cli
