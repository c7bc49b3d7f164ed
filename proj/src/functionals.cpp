#include "hamflow/functionals.hpp"

#include "hamflow/errors.hpp"

namespace hamflow {

Functional functional_x_over_p() {
    Functional fn;
    fn.field.name = "x/p";
    fn.field.value = [](const PhaseState& s) { return s.q[0] / s.p[0]; };
    fn.field.grad_q = [](const PhaseState& s) { return std::vector<double>{1.0 / s.p[0]}; };
    fn.field.grad_p = [](const PhaseState& s) {
        return std::vector<double>{-s.q[0] / (s.p[0] * s.p[0])};
    };
    fn.denominator = [](const PhaseState& s) { return s.p[0]; };
    fn.reciprocal_hint = "p/x";
    return fn;
}

Functional functional_two_h(const HamiltonianSystem& sys) {
    Functional fn;
    fn.field.name = "2H";
    fn.field.value = [h = sys.h](const PhaseState& s) { return 2.0 * h(s); };
    fn.field.grad_q = [g = sys.grad_q](const PhaseState& s) {
        std::vector<double> v = g(s);
        for (double& x : v) x *= 2.0;
        return v;
    };
    fn.field.grad_p = [g = sys.grad_p](const PhaseState& s) {
        std::vector<double> v = g(s);
        for (double& x : v) x *= 2.0;
        return v;
    };
    return fn;
}

Functional functional_h(const HamiltonianSystem& sys) {
    Functional fn;
    fn.field.name = "H";
    fn.field.value = sys.h;
    fn.field.grad_q = sys.grad_q;
    fn.field.grad_p = sys.grad_p;
    return fn;
}

Functional functional_by_name(const std::string& name, const HamiltonianSystem& sys) {
    if (name == "x/p") return functional_x_over_p();
    if (name == "2H") return functional_two_h(sys);
    if (name == "H") return functional_h(sys);
    throw domain_error("unknown functional '" + name + "' (supported: x/p, 2H, H)");
}

}  // namespace hamflow
