#include "hamflow/schemes.hpp"

#include <cmath>

#include "hamflow/errors.hpp"
#include "hamflow/numerics.hpp"

namespace hamflow {

Scheme exact_ho_scheme() {
    Scheme scheme;
    scheme.name = "exact";
    scheme.claimed_order = 0;
    scheme.group_linear = true;
    scheme.has_analytic_d_delta = true;
    scheme.step = [](const PhaseState& s, double delta) {
        const double c = std::cos(delta);
        const double sn = std::sin(delta);
        PhaseState out = s;
        out.q[0] = s.q[0] * c + s.p[0] * sn;
        out.p[0] = s.p[0] * c - s.q[0] * sn;
        out.t = s.t + delta;
        return out;
    };
    scheme.d_delta = [](const PhaseState& s, double delta) {
        const double c = std::cos(delta);
        const double sn = std::sin(delta);
        return std::vector<double>{s.p[0] * c - s.q[0] * sn, -(s.q[0] * c + s.p[0] * sn)};
    };
    return scheme;
}

Scheme euler_scheme(const HamiltonianSystem& sys) {
    Scheme scheme;
    scheme.name = "euler";
    scheme.claimed_order = 1;
    scheme.group_linear = false;
    scheme.has_analytic_d_delta = true;
    scheme.step = [sys](const PhaseState& s, double delta) {
        const std::vector<double> gq = sys.grad_q(s);
        const std::vector<double> gp = sys.grad_p(s);
        PhaseState out = s;
        for (int j = 0; j < sys.dim; ++j) {
            out.q[j] = s.q[j] + delta * gp[j];
            out.p[j] = s.p[j] - delta * gq[j];
        }
        out.t = s.t + delta;
        return out;
    };
    scheme.d_delta = [sys](const PhaseState& s, double) {
        const std::vector<double> gq = sys.grad_q(s);
        const std::vector<double> gp = sys.grad_p(s);
        std::vector<double> d(2 * sys.dim);
        for (int j = 0; j < sys.dim; ++j) {
            d[j] = gp[j];
            d[sys.dim + j] = -gq[j];
        }
        return d;
    };
    return scheme;
}

Scheme rk4_ho_scheme() {
    Scheme scheme;
    scheme.name = "rk4";
    scheme.claimed_order = 4;
    scheme.group_linear = false;
    scheme.has_analytic_d_delta = true;
    scheme.step = [](const PhaseState& s, double d) {
        const double x = s.q[0];
        const double p = s.p[0];
        const double d2 = d * d;
        const double d3 = d2 * d;
        const double d4 = d3 * d;
        PhaseState out = s;
        out.q[0] = x + d * p - d2 / 2.0 * x - d3 / 6.0 * p + d4 / 24.0 * x;
        out.p[0] = p - d * x - d2 / 2.0 * p + d3 / 6.0 * x + d4 / 24.0 * p;
        out.t = s.t + d;
        return out;
    };
    scheme.d_delta = [](const PhaseState& s, double d) {
        const double x = s.q[0];
        const double p = s.p[0];
        const double d2 = d * d;
        const double d3 = d2 * d;
        return std::vector<double>{p - d * x - d2 / 2.0 * p + d3 / 6.0 * x,
                                   -x - d * p + d2 / 2.0 * x + d3 / 6.0 * p};
    };
    return scheme;
}

Scheme discrete_gradient_ho_scheme() {
    Scheme scheme;
    scheme.name = "discrete-gradient";
    scheme.claimed_order = 2;
    scheme.group_linear = false;
    scheme.has_analytic_d_delta = true;
    scheme.step = [](const PhaseState& s, double d) {
        const double x = s.q[0];
        const double p = s.p[0];
        const double den = 4.0 + d * d;
        PhaseState out = s;
        out.q[0] = (4.0 * x + 4.0 * d * p - d * d * x) / den;
        out.p[0] = (4.0 * p - 4.0 * d * x - d * d * p) / den;
        out.t = s.t + d;
        return out;
    };
    scheme.d_delta = [step = scheme.step](const PhaseState& s, double d) {
        const PhaseState advanced = step(s, d);
        const double den = 4.0 + d * d;
        return std::vector<double>{4.0 * advanced.p[0] / den, -4.0 * advanced.q[0] / den};
    };
    return scheme;
}

Scheme generic_rk4_scheme(const HamiltonianSystem& sys) {
    Scheme scheme;
    scheme.name = "generic-rk4";
    scheme.claimed_order = 4;
    scheme.group_linear = false;
    scheme.has_analytic_d_delta = false;
    scheme.step = [sys](const PhaseState& s, double delta) {
        const int n = sys.dim;
        auto rhs = [&](const PhaseState& at, std::vector<double>& kq, std::vector<double>& kp) {
            kq = sys.grad_p(at);
            kp = sys.grad_q(at);
            for (double& v : kp) v = -v;
        };
        auto shifted = [&](const std::vector<double>& kq, const std::vector<double>& kp,
                           double factor) {
            PhaseState out = s;
            for (int j = 0; j < n; ++j) {
                out.q[j] = s.q[j] + factor * kq[j];
                out.p[j] = s.p[j] + factor * kp[j];
            }
            return out;
        };
        std::vector<double> k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
        rhs(s, k1q, k1p);
        rhs(shifted(k1q, k1p, delta / 2.0), k2q, k2p);
        rhs(shifted(k2q, k2p, delta / 2.0), k3q, k3p);
        rhs(shifted(k3q, k3p, delta), k4q, k4p);
        PhaseState out = s;
        for (int j = 0; j < n; ++j) {
            out.q[j] = s.q[j] + delta / 6.0 * (k1q[j] + 2.0 * k2q[j] + 2.0 * k3q[j] + k4q[j]);
            out.p[j] = s.p[j] + delta / 6.0 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
        }
        out.t = s.t + delta;
        return out;
    };
    return scheme;
}

Scheme corrected_scheme(const Scheme& base, const std::vector<ErrorCorrection>& corrections) {
    if (corrections.empty()) return base;
    for (const ErrorCorrection& c : corrections) {
        if (c.order < 2) throw domain_error("corrected_scheme: correction orders start at k = 2");
        if (!c.field) throw domain_error("corrected_scheme: correction field is empty");
    }

    Scheme scheme;
    scheme.name = base.name;
    int max_order = base.claimed_order;
    for (const ErrorCorrection& c : corrections) {
        scheme.name += "+v" + std::to_string(c.order);
        max_order = std::max(max_order, c.order);
    }
    scheme.claimed_order = max_order;
    scheme.group_linear = false;
    scheme.has_analytic_d_delta = base.has_analytic_d_delta;

    scheme.step = [base, corrections](const PhaseState& s, double delta) {
        PhaseState out = base.step(s, delta);
        for (const ErrorCorrection& c : corrections) {
            double weight = 1.0;
            for (int i = 1; i <= c.order; ++i) weight *= delta / i;
            const VectorFieldSample v = c.field(s);
            for (std::size_t j = 0; j < out.q.size(); ++j) {
                out.q[j] -= weight * v.xi[j];
                out.p[j] -= weight * v.eta[j];
            }
        }
        return out;
    };
    if (base.has_analytic_d_delta) {
        scheme.d_delta = [base, corrections](const PhaseState& s, double delta) {
            std::vector<double> d = base.d_delta(s, delta);
            const std::size_t n = d.size() / 2;
            for (const ErrorCorrection& c : corrections) {
                double weight = 1.0;  // delta^{k-1} / (k-1)!
                for (int i = 1; i < c.order; ++i) weight *= delta / i;
                const VectorFieldSample v = c.field(s);
                for (std::size_t j = 0; j < n; ++j) {
                    d[j] -= weight * v.xi[j];
                    d[n + j] -= weight * v.eta[j];
                }
            }
            return d;
        };
    }
    return scheme;
}

std::vector<double> scheme_d_delta(const Scheme& scheme, const PhaseState& s, double delta) {
    if (scheme.has_analytic_d_delta && scheme.d_delta) return scheme.d_delta(s, delta);
    const double h = delta != 0.0 ? std::min(1e-4, std::abs(delta) / 10.0) : 1e-4;
    const int n = s.dim();
    std::vector<double> d(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        auto component = [&](double dd) {
            const PhaseState out = scheme.step(s, dd);
            return i < n ? out.q[i] : out.p[i - n];
        };
        d[i] = num::central_diff4(component, delta, h);
    }
    return d;
}

}  // namespace hamflow
