#include "hamflow/error_lab.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hamflow/errors.hpp"
#include "hamflow/numerics.hpp"

namespace hamflow {

DefectSample defect_field(const Scheme& scheme, const PhaseState& s, double delta) {
    const PhaseState pulled_back = scheme.step(s, -delta);
    const std::vector<double> d = scheme_d_delta(scheme, pulled_back, delta);
    const int n = s.dim();
    DefectSample sample;
    sample.delta = delta;
    sample.scheme_name = scheme.name;
    sample.field.at = s;
    sample.field.xi.assign(d.begin(), d.begin() + n);
    sample.field.eta.assign(d.begin() + n, d.end());
    return sample;
}

DefectExpansion taylor_defect(const Scheme& scheme, const PhaseState& s, int order_k) {
    if (order_k < 0 || order_k > 5) throw domain_error("taylor_defect supports orders K <= 5");
    const int n = s.dim();

    std::vector<double> nodes;
    for (int j = 1; j <= 6; ++j) {
        nodes.push_back(-0.02 * j);
        nodes.push_back(0.02 * j);
    }

    std::vector<std::vector<double>> values(2 * n, std::vector<double>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const DefectSample sample = defect_field(scheme, s, nodes[i]);
        for (int j = 0; j < n; ++j) {
            values[j][i] = sample.field.xi[j];
            values[n + j][i] = sample.field.eta[j];
        }
    }

    DefectExpansion expansion;
    expansion.d.assign(order_k + 1, VectorFieldSample{std::vector<double>(n),
                                                      std::vector<double>(n), s});
    for (int comp = 0; comp < 2 * n; ++comp) {
        const num::PolyFit fit = num::polyfit(nodes, values[comp], order_k);
        expansion.fit_condition = std::max(expansion.fit_condition, fit.condition);
        for (int k = 0; k <= order_k; ++k) {
            if (comp < n)
                expansion.d[k].xi[comp] = fit.coeff[k];
            else
                expansion.d[k].eta[comp - n] = fit.coeff[k];
        }
    }
    if (expansion.fit_condition > 1e10)
        throw numerical_error("taylor_defect: ill-conditioned polynomial fit");
    return expansion;
}

VectorFieldSample recover_v2(const Scheme& scheme, const HamiltonianSystem& sys,
                             const PhaseState& s) {
    // Consistency anchor from the defect at delta = 0 directly; the fitted
    // d_0 would carry the truncation residual of non-polynomial defects.
    const DefectSample at_zero = defect_field(scheme, s, 0.0);
    const VectorFieldSample gen = evolution_generator(sys, s);
    double mismatch = 0.0;
    for (int j = 0; j < s.dim(); ++j) {
        mismatch = std::max(mismatch, std::abs(at_zero.field.xi[j] - gen.xi[j]));
        mismatch = std::max(mismatch, std::abs(at_zero.field.eta[j] - gen.eta[j]));
    }
    const double scale = std::max(1.0, gen.max_abs());
    if (mismatch > 1e-6 * scale)
        throw domain_error("recover_v2: scheme is not consistent (defect at delta=0 is " +
                           std::to_string(mismatch) + " away from the generator)");
    return taylor_defect(scheme, s, 3).d[1];
}

namespace {

// (A o B) applied to the coordinate functions: component i is the
// directional derivative of B's i-th coefficient along A.
VectorFieldSample compose_on_coordinates(const VectorField& a, const VectorField& b,
                                         const PhaseState& s) {
    const int n = s.dim();
    const VectorFieldSample a_at = a(s);
    VectorFieldSample out;
    out.at = s;
    out.xi.assign(n, 0.0);
    out.eta.assign(n, 0.0);

    PhaseState probe = s;
    auto accumulate = [&](double* coord, double weight) {
        const double center = *coord;
        const double h = FD_REL_STEP * std::max(1.0, std::abs(center));
        *coord = center + h;
        const VectorFieldSample hi = b(probe);
        *coord = center - h;
        const VectorFieldSample lo = b(probe);
        *coord = center;
        for (int i = 0; i < n; ++i) {
            out.xi[i] += weight * (hi.xi[i] - lo.xi[i]) / (2.0 * h);
            out.eta[i] += weight * (hi.eta[i] - lo.eta[i]) / (2.0 * h);
        }
    };
    for (int j = 0; j < n; ++j) {
        accumulate(&probe.q[j], a_at.xi[j]);
        accumulate(&probe.p[j], a_at.eta[j]);
    }
    return out;
}

}  // namespace

VectorFieldSample recover_v3(const Scheme& scheme, const HamiltonianSystem& sys,
                             const PhaseState& s, const VectorField& v2_field) {
    if (!sys.analytic_gradients)
        throw capability_error(
            "recover_v3 composes coefficient fields and needs analytic system gradients");
    const DefectExpansion expansion = taylor_defect(scheme, s, 4);
    const VectorField generator_field = [&sys](const PhaseState& at) {
        return evolution_generator(sys, at);
    };
    const VectorFieldSample g_after_v2 = compose_on_coordinates(generator_field, v2_field, s);
    const VectorFieldSample v2_after_g = compose_on_coordinates(v2_field, generator_field, s);

    const int n = s.dim();
    VectorFieldSample v3;
    v3.at = s;
    v3.xi.resize(n);
    v3.eta.resize(n);
    for (int j = 0; j < n; ++j) {
        v3.xi[j] = 2.0 * expansion.d[2].xi[j] + 2.0 * g_after_v2.xi[j] - v2_after_g.xi[j];
        v3.eta[j] = 2.0 * expansion.d[2].eta[j] + 2.0 * g_after_v2.eta[j] - v2_after_g.eta[j];
    }
    return v3;
}

ErrorSeries flow_difference_errors(const Scheme& scheme, const HamiltonianSystem& sys,
                                   const PhaseState& s, int order_k) {
    if (order_k < 2 || order_k > 5)
        throw domain_error("flow_difference_errors supports orders 2 <= K <= 5");
    if (!sys.has_exact_flow())
        throw capability_error("flow_difference_errors needs a system with exact_flow");

    const int n = s.dim();
    const double base_h = 0.05;
    const double grid_h = base_h / 4.0;

    // psi_delta(s) - exact_flow(s, delta) on the 25-node grid m * base_h/4.
    std::vector<std::vector<double>> w(2 * n, std::vector<double>(25));
    for (int m = -12; m <= 12; ++m) {
        const double delta = m * grid_h;
        const PhaseState approx = scheme.step(s, delta);
        const PhaseState truth = sys.exact_flow(s, delta);
        for (int j = 0; j < n; ++j) {
            w[j][m + 12] = approx.q[j] - truth.q[j];
            w[n + j][m + 12] = approx.p[j] - truth.p[j];
        }
    }

    ErrorSeries series;
    series.base = s;
    series.order = order_k;
    series.method = ErrorMethod::flow_difference;
    for (int k = 2; k <= order_k; ++k) {
        VectorFieldSample v;
        v.at = s;
        v.xi.resize(n);
        v.eta.resize(n);
        for (int comp = 0; comp < 2 * n; ++comp) {
            auto f = [&](double delta) {
                const int m = static_cast<int>(std::llround(delta / grid_h));
                return w[comp][m + 12];
            };
            const double value = num::central_kth_richardson(f, k, base_h);
            if (comp < n)
                v.xi[comp] = value;
            else
                v.eta[comp - n] = value;
        }
        series.v[k] = v;
    }
    return series;
}

InvariantCheck verify_error_invariant(const VectorField& field, const ScalarField& phi,
                                      const std::vector<PhaseState>& grid,
                                      const std::function<double(const PhaseState&)>& denominator,
                                      const std::string& reciprocal_hint) {
    InvariantCheck check;
    check.functional = phi.name;
    double scale = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (denominator && std::abs(denominator(grid[i])) < SINGULAR_BAND) {
            check.excluded.push_back(i);
            continue;
        }
        const VectorFieldSample v = field(grid[i]);
        const double violation = std::abs(apply_field(v, phi));

        const std::vector<double> gq = phi.eval_grad_q(grid[i]);
        const std::vector<double> gp = phi.eval_grad_p(grid[i]);
        double grad_norm = 0.0;
        for (double g : gq) grad_norm += g * g;
        for (double g : gp) grad_norm += g * g;
        scale = std::max(scale, std::sqrt(grad_norm) * v.norm());
        check.max_violation = std::max(check.max_violation, violation);
    }
    check.scale = scale;
    check.pass = check.max_violation <= 1e-8 * scale;
    if (!check.excluded.empty()) check.suggestion = reciprocal_hint;
    return check;
}

ErrorClassification classify_leading_error(const std::vector<ErrorSeries>& series,
                                           const HamiltonianSystem& sys) {
    ErrorClassification result;
    if (series.empty()) throw domain_error("classify_leading_error: empty series list");

    double generator_scale = 1.0;
    for (const ErrorSeries& es : series)
        generator_scale = std::max(generator_scale, evolution_generator(sys, es.base).max_abs());

    int leading = 0;
    const int order = series.front().order;
    for (int k = 2; k <= order && leading == 0; ++k) {
        double magnitude = 0.0;
        for (const ErrorSeries& es : series) magnitude = std::max(magnitude, es.v.at(k).max_abs());
        if (magnitude > 1e-7 * generator_scale) leading = k;
    }
    if (leading == 0) {
        result.label = "exact";
        return result;
    }
    result.leading_order = leading;

    const int n = series.front().base.dim();
    const int rows = static_cast<int>(series.size()) * 2 * n;
    Eigen::MatrixXd design(rows, 2);
    Eigen::VectorXd rhs(rows);
    int row = 0;
    for (const ErrorSeries& es : series) {
        const VectorFieldSample gen = evolution_generator(sys, es.base);
        const VectorFieldSample& v = es.v.at(leading);
        for (int j = 0; j < n; ++j) {
            design(row, 0) = gen.xi[j];
            design(row, 1) = es.base.q[j];  // scaling field, q components
            rhs(row++) = v.xi[j];
            design(row, 0) = gen.eta[j];
            design(row, 1) = es.base.p[j];  // scaling field, p components
            rhs(row++) = v.eta[j];
        }
    }
    const Eigen::Vector2d coeff = design.colPivHouseholderQr().solve(rhs);
    const double residual = (design * coeff - rhs).norm();
    const double field_norm = rhs.norm();
    result.time_coefficient = coeff(0);
    result.scaling_coefficient = coeff(1);
    result.relative_residual = field_norm > 0.0 ? residual / field_norm : 0.0;

    if (result.relative_residual <= 1e-6) {
        const double time_part = std::abs(coeff(0)) * design.col(0).norm();
        const double scaling_part = std::abs(coeff(1)) * design.col(1).norm();
        result.label = time_part >= scaling_part ? "time-translation" : "scaling";
    } else {
        result.label = "mixed";
    }
    return result;
}

Reparametrization reparametrize_time(const Scheme& scheme, const HamiltonianSystem& sys,
                                     const std::vector<PhaseState>& probes) {
    if (probes.empty()) throw domain_error("reparametrize_time needs at least one probe state");

    auto lambda_at = [scheme, sys](const PhaseState& s, double delta) {
        const DefectSample sample = defect_field(scheme, s, delta);
        const VectorFieldSample gen = evolution_generator(sys, s);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < gen.xi.size(); ++j) {
            num += sample.field.xi[j] * gen.xi[j] + sample.field.eta[j] * gen.eta[j];
            den += gen.xi[j] * gen.xi[j] + gen.eta[j] * gen.eta[j];
        }
        if (den == 0.0) throw domain_error("reparametrize_time: generator vanishes at a probe");
        return num / den;
    };

    // The defect must be a state-independent multiple of the generator.
    for (double delta : {0.05, 0.1, 0.2, 0.4}) {
        double lambda_ref = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const double lam = lambda_at(probes[i], delta);
            const DefectSample sample = defect_field(scheme, probes[i], delta);
            const VectorFieldSample gen = evolution_generator(sys, probes[i]);
            double residual = 0.0;
            for (std::size_t j = 0; j < gen.xi.size(); ++j) {
                residual = std::max(residual, std::abs(sample.field.xi[j] - lam * gen.xi[j]));
                residual = std::max(residual, std::abs(sample.field.eta[j] - lam * gen.eta[j]));
            }
            if (residual > 1e-8 * std::max(1.0, gen.max_abs()))
                throw capability_error(
                    "not time-reparametrizable: defect is not proportional to the generator");
            if (i == 0)
                lambda_ref = lam;
            else if (std::abs(lam - lambda_ref) > 1e-8)
                throw capability_error(
                    "not time-reparametrizable: defect ratio depends on the state");
        }
    }

    const PhaseState anchor = probes.front();
    auto lambda_fn = [lambda_at, anchor](double delta) { return lambda_at(anchor, delta); };
    auto advance = [lambda_fn](double delta) {
        if (delta == 0.0) return 0.0;
        return num::adaptive_simpson(lambda_fn, 0.0, delta, 1e-13 * std::max(1.0, std::abs(delta)));
    };

    Reparametrization repar;
    repar.lambda = lambda_fn;
    repar.W = [advance](double delta) { return delta - advance(delta); };
    repar.scheme = scheme;
    repar.scheme.name = scheme.name + "+reparam";
    repar.scheme.step = [base_step = scheme.step, advance](const PhaseState& s, double delta) {
        PhaseState out = base_step(s, delta);
        out.t = s.t + advance(delta);
        return out;
    };
    return repar;
}

}  // namespace hamflow
