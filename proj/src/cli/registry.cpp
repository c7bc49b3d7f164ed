#include "hamflow/cli/registry.hpp"

#include "hamflow/error_lab.hpp"
#include "hamflow/errors.hpp"
#include "hamflow/lie_engine.hpp"

namespace hamflow::cli {

namespace {

bool is_ho(const HamiltonianSystem& sys) { return sys.label == "harmonic-oscillator"; }

Scheme lie_scheme(const HamiltonianSystem& sys, int order) {
    Scheme scheme;
    scheme.name = "lie" + std::to_string(order);
    scheme.claimed_order = order;
    scheme.step = [sys, order](const PhaseState& s, double delta) {
        return lie_series_step(sys, s, delta, order);
    };
    return scheme;
}

Scheme base_scheme_by_id(const std::string& id, const HamiltonianSystem& sys) {
    if (id == "exact") {
        if (is_ho(sys)) return exact_ho_scheme();
        if (sys.has_exact_flow()) {
            Scheme scheme;
            scheme.name = "exact";
            scheme.claimed_order = 0;
            scheme.group_linear = true;
            scheme.step = sys.exact_flow;
            return scheme;
        }
        throw capability_error("scheme 'exact' needs a system with a closed-form flow");
    }
    if (id == "euler") return euler_scheme(sys);
    if (id == "rk4") {
        if (!is_ho(sys))
            throw capability_error("scheme 'rk4' is the oscillator polynomial map; use "
                                   "'generic-rk4' for other systems");
        return rk4_ho_scheme();
    }
    if (id == "generic-rk4") return generic_rk4_scheme(sys);
    if (id == "dg" || id == "discrete-gradient") {
        if (!is_ho(sys))
            throw capability_error("the discrete-gradient scheme ships for the oscillator only");
        return discrete_gradient_ho_scheme();
    }
    if (id == "dg-reparam") {
        if (!is_ho(sys))
            throw capability_error("the discrete-gradient scheme ships for the oscillator only");
        const std::vector<PhaseState> probes = {make_state1(1.0, 0.0), make_state1(0.6, 0.8),
                                                make_state1(-1.1, 0.4)};
        return reparametrize_time(discrete_gradient_ho_scheme(), sys, probes).scheme;
    }
    if (id == "lie2") return lie_scheme(sys, 2);
    if (id == "lie3") return lie_scheme(sys, 3);
    if (id == "lie4") return lie_scheme(sys, 4);
    throw domain_error("unknown scheme id '" + id + "'");
}

// Parses a "+v2v3v4" style suffix into correction orders.
std::vector<int> parse_correction_orders(const std::string& suffix) {
    std::vector<int> orders;
    if (suffix.empty()) throw domain_error("empty correction suffix after '+'");
    std::size_t pos = 0;
    while (pos < suffix.size()) {
        if (suffix[pos] != 'v' || pos + 1 >= suffix.size() || !std::isdigit(suffix[pos + 1]))
            throw domain_error("bad correction suffix '" + suffix + "' (expected v2v3...)");
        orders.push_back(suffix[pos + 1] - '0');
        pos += 2;
    }
    return orders;
}

}  // namespace

HamiltonianSystem system_by_id(const std::string& id) {
    if (id == "ho" || id == "harmonic-oscillator") return make_harmonic_oscillator();
    if (id == "pendulum") return make_pendulum();
    if (id == "quartic" || id == "quartic-oscillator") return make_quartic_oscillator();
    throw domain_error("unknown system id '" + id + "'");
}

Scheme scheme_by_id(const std::string& id, const HamiltonianSystem& sys) {
    const std::size_t plus = id.find('+');
    if (plus == std::string::npos) return base_scheme_by_id(id, sys);

    const Scheme base = base_scheme_by_id(id.substr(0, plus), sys);
    const std::vector<int> orders = parse_correction_orders(id.substr(plus + 1));
    if (!sys.has_exact_flow())
        throw capability_error(
            "corrections are recovered from the flow-difference route and need exact_flow");

    std::vector<ErrorCorrection> corrections;
    for (int k : orders) {
        corrections.push_back(ErrorCorrection{
            k, [base, sys, k](const PhaseState& s) {
                return flow_difference_errors(base, sys, s, k).v.at(k);
            }});
    }
    return corrected_scheme(base, corrections);
}

std::vector<std::string> known_system_ids() { return {"ho", "pendulum", "quartic"}; }

std::vector<std::string> known_scheme_ids() {
    return {"exact", "euler", "rk4", "generic-rk4", "dg", "dg-reparam", "lie2", "lie3", "lie4"};
}

}  // namespace hamflow::cli
