#include "hamflow/cli/manifest.hpp"

#include <fstream>

#include "hamflow/errors.hpp"
#include "json.hpp"

namespace hamflow::cli {

using nlohmann::json;

std::vector<double> RunManifest::step_list() const {
    if (delta_list) return *delta_list;
    if (steps < 0) throw domain_error("manifest: negative step count");
    return std::vector<double>(static_cast<std::size_t>(steps), delta);
}

std::string manifest_to_json_text(const RunManifest& m) {
    json j;
    j["system"] = m.system;
    j["scheme"] = m.scheme;
    j["seed"] = {{"q", m.seed_q}, {"p", m.seed_p}};
    j["delta"] = m.delta;
    if (m.delta_list) j["delta_list"] = *m.delta_list;
    j["steps"] = m.steps;
    j["functionals"] = m.functionals;
    j["out_dir"] = m.out_dir;
    j["tolerances"] = {{"fd_rel_step", m.tolerances.fd_rel_step},
                       {"jacobian_step", m.tolerances.jacobian_step},
                       {"defect_delta_step", m.tolerances.defect_delta_step},
                       {"quadrature_rel", m.tolerances.quadrature_rel},
                       {"chart_energy_step_rel", m.tolerances.chart_energy_step_rel},
                       {"singular_band", m.tolerances.singular_band}};
    j["version"] = m.version;
    j["error_order"] = m.error_order;
    j["correct_orders"] = m.correct_orders;
    j["energy_window"] = {m.energy_lo, m.energy_hi};
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw domain_error(std::string("manifest: invalid JSON: ") + err.what());
    }
    RunManifest m;
    try {
        if (j.contains("system")) m.system = j["system"].get<std::string>();
        if (j.contains("scheme")) m.scheme = j["scheme"].get<std::string>();
        if (j.contains("seed")) {
            m.seed_q = j["seed"]["q"].get<std::vector<double>>();
            m.seed_p = j["seed"]["p"].get<std::vector<double>>();
        }
        if (j.contains("delta")) m.delta = j["delta"].get<double>();
        if (j.contains("delta_list")) m.delta_list = j["delta_list"].get<std::vector<double>>();
        if (j.contains("steps")) m.steps = j["steps"].get<int>();
        if (j.contains("functionals")) m.functionals = j["functionals"].get<std::vector<std::string>>();
        if (j.contains("out_dir")) m.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("error_order")) m.error_order = j["error_order"].get<int>();
        if (j.contains("correct_orders"))
            m.correct_orders = j["correct_orders"].get<std::vector<int>>();
        if (j.contains("energy_window")) {
            m.energy_lo = j["energy_window"][0].get<double>();
            m.energy_hi = j["energy_window"][1].get<double>();
        }
        if (j.contains("tolerances")) {
            const json& t = j["tolerances"];
            if (t.contains("fd_rel_step")) m.tolerances.fd_rel_step = t["fd_rel_step"];
            if (t.contains("jacobian_step")) m.tolerances.jacobian_step = t["jacobian_step"];
            if (t.contains("defect_delta_step"))
                m.tolerances.defect_delta_step = t["defect_delta_step"];
            if (t.contains("quadrature_rel")) m.tolerances.quadrature_rel = t["quadrature_rel"];
            if (t.contains("chart_energy_step_rel"))
                m.tolerances.chart_energy_step_rel = t["chart_energy_step_rel"];
            if (t.contains("singular_band")) m.tolerances.singular_band = t["singular_band"];
        }
    } catch (const json::exception& err) {
        throw domain_error(std::string("manifest: bad field: ") + err.what());
    }
    if (m.seed_q.size() != m.seed_p.size() || m.seed_q.empty())
        throw domain_error("manifest: seed q and p need identical non-zero length");
    return m;
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("manifest: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return manifest_from_json_text(text);
}

void save_manifest(const RunManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw domain_error("manifest: cannot write " + path);
    out << manifest_to_json_text(manifest);
}

}  // namespace hamflow::cli
