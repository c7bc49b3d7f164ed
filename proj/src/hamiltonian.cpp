#include "hamflow/hamiltonian.hpp"

#include <cmath>
#include <utility>

#include "hamflow/errors.hpp"

namespace hamflow {

namespace {

double fd_step(double coordinate) {
    return FD_REL_STEP * std::max(1.0, std::abs(coordinate));
}

}  // namespace

std::vector<double> fd_grad_q(const std::function<double(const PhaseState&)>& f,
                              const PhaseState& s) {
    std::vector<double> g(s.q.size());
    PhaseState probe = s;
    for (std::size_t j = 0; j < s.q.size(); ++j) {
        const double h = fd_step(s.q[j]);
        probe.q[j] = s.q[j] + h;
        const double hi = f(probe);
        probe.q[j] = s.q[j] - h;
        const double lo = f(probe);
        probe.q[j] = s.q[j];
        g[j] = (hi - lo) / (2.0 * h);
    }
    return g;
}

std::vector<double> fd_grad_p(const std::function<double(const PhaseState&)>& f,
                              const PhaseState& s) {
    std::vector<double> g(s.p.size());
    PhaseState probe = s;
    for (std::size_t j = 0; j < s.p.size(); ++j) {
        const double h = fd_step(s.p[j]);
        probe.p[j] = s.p[j] + h;
        const double hi = f(probe);
        probe.p[j] = s.p[j] - h;
        const double lo = f(probe);
        probe.p[j] = s.p[j];
        g[j] = (hi - lo) / (2.0 * h);
    }
    return g;
}

HamiltonianSystem make_harmonic_oscillator() {
    HamiltonianSystem sys;
    sys.dim = 1;
    sys.label = "harmonic-oscillator";
    sys.h = [](const PhaseState& s) { return 0.5 * (s.p[0] * s.p[0] + s.q[0] * s.q[0]); };
    sys.grad_q = [](const PhaseState& s) { return std::vector<double>{s.q[0]}; };
    sys.grad_p = [](const PhaseState& s) { return std::vector<double>{s.p[0]}; };
    sys.analytic_gradients = true;
    sys.exact_flow = [](const PhaseState& s, double delta) {
        const double c = std::cos(delta);
        const double sn = std::sin(delta);
        PhaseState out = s;
        out.q[0] = s.q[0] * c + s.p[0] * sn;
        out.p[0] = s.p[0] * c - s.q[0] * sn;
        out.t = s.t + delta;
        return out;
    };
    return sys;
}

HamiltonianSystem make_pendulum() {
    HamiltonianSystem sys;
    sys.dim = 1;
    sys.label = "pendulum";
    sys.h = [](const PhaseState& s) { return 0.5 * s.p[0] * s.p[0] + (1.0 - std::cos(s.q[0])); };
    sys.grad_q = [](const PhaseState& s) { return std::vector<double>{std::sin(s.q[0])}; };
    sys.grad_p = [](const PhaseState& s) { return std::vector<double>{s.p[0]}; };
    sys.analytic_gradients = true;
    return sys;
}

HamiltonianSystem make_quartic_oscillator() {
    HamiltonianSystem sys;
    sys.dim = 1;
    sys.label = "quartic-oscillator";
    sys.h = [](const PhaseState& s) {
        const double x2 = s.q[0] * s.q[0];
        return 0.5 * s.p[0] * s.p[0] + 0.25 * x2 * x2;
    };
    sys.grad_q = [](const PhaseState& s) {
        return std::vector<double>{s.q[0] * s.q[0] * s.q[0]};
    };
    sys.grad_p = [](const PhaseState& s) { return std::vector<double>{s.p[0]}; };
    sys.analytic_gradients = true;
    return sys;
}

HamiltonianSystem make_custom_system(std::function<double(const PhaseState&)> h, int dim,
                                     std::function<std::vector<double>(const PhaseState&)> grad_q,
                                     std::function<std::vector<double>(const PhaseState&)> grad_p,
                                     std::string label) {
    if (dim < 1) throw domain_error("custom system needs dim >= 1");
    if (!h) throw domain_error("custom system needs a Hamiltonian evaluator");
    HamiltonianSystem sys;
    sys.dim = dim;
    sys.label = std::move(label);
    sys.h = h;
    sys.analytic_gradients = static_cast<bool>(grad_q) && static_cast<bool>(grad_p);
    sys.grad_q = grad_q ? std::move(grad_q)
                        : [h](const PhaseState& s) { return fd_grad_q(h, s); };
    sys.grad_p = grad_p ? std::move(grad_p)
                        : [h](const PhaseState& s) { return fd_grad_p(h, s); };
    return sys;
}

}  // namespace hamflow
