// hamflow command-line front end.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hamflow/cli/commands.hpp"
#include "hamflow/cli/manifest.hpp"
#include "hamflow/errors.hpp"

namespace {

using hamflow::cli::RunManifest;

struct CommonFlags {
    std::string manifest_path;
    std::string system, scheme, out_dir, functionals, orders;
    double delta = 0.0;
    int steps = 0;
    std::vector<double> seed;
    std::vector<double> energy_window;
    int error_order = 0;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
    CLI::Option* functionals_opt = nullptr;
    CLI::Option* orders_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--manifest", manifest_path, "manifest JSON file; flags override it");
        cmd->add_option("--system", system, "system id (ho | pendulum | quartic)");
        cmd->add_option("--scheme", scheme, "scheme id, e.g. exact, euler, dg, euler+v2v3v4");
        cmd->add_option("--seed", seed, "seed state x p")->expected(2);
        delta_opt = cmd->add_option("--delta", delta, "step size");
        steps_opt = cmd->add_option("--steps", steps, "number of steps");
        functionals_opt = cmd->add_option("--functionals", functionals,
                                          "comma list of tracked functionals (x/p,2H,H)");
        cmd->add_option("--out", out_dir, "output directory (HAMFLOW_OUT overrides)");
        cmd->add_option("--order", error_order, "highest error order K");
        orders_opt = cmd->add_option("--orders", orders, "comma list of correction orders, e.g. 2,3,4");
        cmd->add_option("--energy-window", energy_window, "action-angle energy window lo hi")
            ->expected(2);
    }

    RunManifest build() const {
        RunManifest m;
        if (!manifest_path.empty()) m = hamflow::cli::load_manifest(manifest_path);
        if (!system.empty()) m.system = system;
        if (!scheme.empty()) m.scheme = scheme;
        if (seed.size() == 2) {
            m.seed_q = {seed[0]};
            m.seed_p = {seed[1]};
        }
        if (delta_opt && delta_opt->count() > 0) m.delta = delta;
        if (steps_opt && steps_opt->count() > 0) m.steps = steps;
        if (!out_dir.empty()) m.out_dir = out_dir;
        if (error_order > 0) m.error_order = error_order;
        if (functionals_opt && functionals_opt->count() > 0) m.functionals = split_list(functionals);
        if (orders_opt && orders_opt->count() > 0) {
            m.correct_orders.clear();
            for (const std::string& tok : split_list(orders)) m.correct_orders.push_back(std::stoi(tok));
        }
        if (energy_window.size() == 2) {
            m.energy_lo = energy_window[0];
            m.energy_hi = energy_window[1];
        }
        return m;
    }

    static std::vector<std::string> split_list(const std::string& text) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = text.find(',', start);
            if (comma == std::string::npos) {
                if (start < text.size()) out.push_back(text.substr(start));
                break;
            }
            if (comma > start) out.push_back(text.substr(start, comma - start));
            start = comma + 1;
        }
        return out;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hamflow: phase-space maps, exact schemes and local-error analysis for "
                 "time-independent Hamiltonian systems"};
    app.require_subcommand(1);

    CommonFlags simulate_flags, analyze_flags, correct_flags, aa_flags, audit_flags;
    CLI::App* simulate = app.add_subcommand("simulate", "run a trajectory and write CSV + SVG");
    simulate_flags.attach(simulate);
    CLI::App* analyze =
        app.add_subcommand("analyze-error", "extract error fields v_k and classify the leading one");
    analyze_flags.attach(analyze);
    CLI::App* correct =
        app.add_subcommand("correct", "subtract recovered error fields and measure the order");
    correct_flags.attach(correct);
    CLI::App* action_angle =
        app.add_subcommand("action-angle", "build the numeric chart and its exact scheme");
    aa_flags.attach(action_angle);
    CLI::App* audit = app.add_subcommand("audit", "group-law, inverse, symplectic and energy checks");
    audit_flags.attach(audit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            const auto summary = hamflow::cli::cmd_simulate(simulate_flags.build());
            std::printf("simulate: %zu rows, final t = %.17g, max sigma(x,p) = %.3e -> %s\n",
                        summary.rows, summary.final_t, summary.max_sigma_phase,
                        summary.out_dir.c_str());
        } else if (analyze->parsed()) {
            const auto summary = hamflow::cli::cmd_analyze_error(analyze_flags.build());
            std::printf("analyze-error: leading order %d, classification '%s'%s -> %s\n",
                        summary.leading_order, summary.classification.c_str(),
                        summary.reparametrizable ? " (time-reparametrizable)" : "",
                        summary.out_dir.c_str());
        } else if (correct->parsed()) {
            const auto summary = hamflow::cli::cmd_correct(correct_flags.build());
            std::printf("correct: %s measured order %.2f (base %.2f) -> %s\n",
                        summary.corrected_id.c_str(), summary.corrected_order,
                        summary.base_order, summary.out_dir.c_str());
        } else if (action_angle->parsed()) {
            const auto summary = hamflow::cli::cmd_action_angle(aa_flags.build());
            std::printf("action-angle: nu at seed %.9f, max action drift %.3e -> %s\n",
                        summary.nu_at_seed, summary.max_action_drift, summary.out_dir.c_str());
        } else if (audit->parsed()) {
            const auto summary = hamflow::cli::cmd_audit(audit_flags.build());
            std::printf("audit: identity %s, inverse %s, group law %s, symplectic %s -> %s\n",
                        summary.identity_pass ? "PASS" : "FAIL",
                        summary.inverse_pass ? "PASS" : "FAIL",
                        summary.group_law_pass ? "PASS" : "FAIL",
                        summary.symplectic_pass ? "PASS" : "FAIL", summary.out_dir.c_str());
        }
    } catch (const hamflow::Error& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return hamflow::cli::exit_code_for(error);
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 4;
    }
    return 0;
}
