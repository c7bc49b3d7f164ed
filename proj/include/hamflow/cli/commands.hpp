// The five CLI commands, exposed as plain functions so tests can drive
// them in-process.  Each writes its files under the resolved output
// directory and returns a small summary.
#pragma once

#include <string>

#include "hamflow/cli/manifest.hpp"
#include "hamflow/errors.hpp"

namespace hamflow::cli {

// Output directory after applying the HAMFLOW_OUT override.
std::string resolve_out_dir(const RunManifest& manifest);

// Exit-code contract: 0 success, 2 configuration, 3 capability,
// 4 numerical failure.
int exit_code_for(const Error& error);

struct SimulateSummary {
    std::string out_dir;
    std::size_t rows = 0;
    double final_t = 0.0;
    double max_sigma_phase = 0.0;
};
SimulateSummary cmd_simulate(const RunManifest& manifest);

struct AnalyzeSummary {
    std::string out_dir;
    std::string classification;
    int leading_order = 0;
    bool reparametrizable = false;
};
AnalyzeSummary cmd_analyze_error(const RunManifest& manifest);

struct CorrectSummary {
    std::string out_dir;
    std::string corrected_id;
    double base_order = 0.0;
    double corrected_order = 0.0;
};
CorrectSummary cmd_correct(const RunManifest& manifest);

struct ActionAngleSummary {
    std::string out_dir;
    double nu_at_seed = 0.0;
    double max_action_drift = 0.0;
};
ActionAngleSummary cmd_action_angle(const RunManifest& manifest);

struct AuditSummary {
    std::string out_dir;
    bool identity_pass = false;
    bool inverse_pass = false;
    bool group_law_pass = false;
    bool symplectic_pass = false;
};
AuditSummary cmd_audit(const RunManifest& manifest);

}  // namespace hamflow::cli
