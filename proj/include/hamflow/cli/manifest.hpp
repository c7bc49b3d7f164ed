// Run manifests: everything needed to reproduce a run bit for bit.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hamflow::cli {

inline constexpr const char* HAMFLOW_VERSION = "0.1.0";

// Numeric tolerances in force; echoed into every manifest so outputs are
// self-describing.
struct Tolerances {
    double fd_rel_step = 1e-6;
    double jacobian_step = 1e-6;
    double defect_delta_step = 1e-4;
    double quadrature_rel = 1e-12;
    double chart_energy_step_rel = 1e-6;
    double singular_band = 0.1;
};

struct RunManifest {
    std::string system = "ho";
    std::string scheme = "exact";
    std::vector<double> seed_q = {1.0};
    std::vector<double> seed_p = {0.0};
    double delta = 0.1;
    std::optional<std::vector<double>> delta_list;  // per-step steps, overrides delta/steps
    int steps = 200;
    std::vector<std::string> functionals;
    std::string out_dir = "hamflow-out";
    Tolerances tolerances;
    std::string version = HAMFLOW_VERSION;

    // analyze-error / correct
    int error_order = 4;
    std::vector<int> correct_orders;

    // action-angle
    double energy_lo = 0.05;
    double energy_hi = 2.0;

    std::vector<double> step_list() const;
};

RunManifest load_manifest(const std::string& path);
void save_manifest(const RunManifest& manifest, const std::string& path);
std::string manifest_to_json_text(const RunManifest& manifest);
RunManifest manifest_from_json_text(const std::string& text);

}  // namespace hamflow::cli
