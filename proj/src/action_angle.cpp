#include "hamflow/action_angle.hpp"

#include <cmath>
#include <memory>

#include "hamflow/errors.hpp"
#include "hamflow/numerics.hpp"

namespace hamflow {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;
constexpr double QUAD_REL_TOL = 1e-12;
constexpr double ROOT_TOL = 1e-13;
// Relative momentum size below which the angle switches from the
// dK/dE difference quotient to the direct time integral; the E stencil
// loses its footing inside the turning-point band.
constexpr double GUARD_FRACTION = 0.05;

// Shared machinery of the numeric 1-D pipeline.  All evaluators are pure;
// scratch states are thread-local so constructed charts stay shareable.
class Pipeline1D {
  public:
    Pipeline1D(HamiltonianSystem sys, double e_lo, double e_hi, int branch)
        : sys_(std::move(sys)), e_lo_(e_lo), e_hi_(e_hi), branch_(branch) {
        if (sys_.dim != 1)
            throw capability_error("numeric action-angle pipeline ships for 1-D systems only");
        if (branch_ != 1 && branch_ != -1)
            throw domain_error("branch sign must be +1 or -1");
        if (!(e_lo < e_hi)) throw domain_error("empty energy window");

        // Center of the well; H(q, 0) is scanned coarsely, then refined.
        double best_q = 0.0;
        double best_v = h_at(0.0, 0.0);
        for (int i = 0; i <= 128; ++i) {
            const double q = -8.0 + 16.0 * i / 128.0;
            const double v = h_at(q, 0.0);
            if (v < best_v) {
                best_v = v;
                best_q = q;
            }
        }
        q_star_ = num::find_min([this](double q) { return h_at(q, 0.0); },
                                best_q - 0.25, best_q + 0.25, 1e-12);
        e_floor_ = h_at(q_star_, 0.0);
        if (!(e_lo > e_floor_))
            throw domain_error("action-angle step 2: energy window unreachable (window must sit "
                               "above the potential minimum " +
                               std::to_string(e_floor_) + ")");

        // Spot check that H is monotone in p on the working branch.
        const double p_top = solve_p(q_star_, e_hi_);
        double prev = h_at(q_star_, 0.0);
        for (int i = 1; i <= 8; ++i) {
            const double value = h_at(q_star_, i * p_top / 8.0);
            if (!(value > prev))
                throw domain_error("action-angle step 2: H is not monotone on the momentum branch");
            prev = value;
        }
    }

    int branch() const { return branch_; }
    double e_lo() const { return e_lo_; }
    double e_hi() const { return e_hi_; }
    double q_star() const { return q_star_; }

    double h_at(double q, double p) const {
        thread_local PhaseState scratch = make_state1(0.0, 0.0);
        scratch.q[0] = q;
        scratch.p[0] = p;
        return sys_.h(scratch);
    }

    double hp_at(double q, double p) const {
        thread_local PhaseState scratch = make_state1(0.0, 0.0);
        scratch.q[0] = q;
        scratch.p[0] = p;
        return sys_.grad_p(scratch)[0];
    }

    // Step 2: the non-negative momentum branch of H(q, p) = E; zero at and
    // beyond the turning points.  Resolved to machine width: the angle's
    // energy difference quotient amplifies any slack here by 1/(2 dE).
    double solve_p(double q, double e) const {
        if (h_at(q, 0.0) >= e) return 0.0;
        double hi = 1.0;
        int expansions = 0;
        while (h_at(q, hi) < e) {
            hi *= 2.0;
            if (++expansions > 60)
                throw domain_error("action-angle step 2: momentum branch solve failed to bracket");
        }
        const auto root = num::bisect([&](double p) { return h_at(q, p) - e; }, 0.0, hi, 0.0);
        return root.root;
    }

    struct Level {
        double e = 0.0;
        double q_lo = 0.0, q_hi = 0.0;  // turning points
        double t_lo = 0.0, t_hi = 0.0;  // flow time from q_star to each turning point
        double period = 0.0;
        double p_scale = 0.0;
    };

    Level level(double e) const {
        Level lv;
        lv.e = e;
        lv.q_lo = turning_point(e, -1);
        lv.q_hi = turning_point(e, +1);
        lv.t_hi = time_integral(q_star_, lv.q_hi, e);
        lv.t_lo = time_integral(q_star_, lv.q_lo, e);
        lv.period = 2.0 * (lv.t_hi - lv.t_lo);
        lv.p_scale = solve_p(q_star_, e);
        if (!(lv.period > 0.0) || !std::isfinite(lv.period))
            throw numerical_error("action-angle step 3: period quadrature failed");
        return lv;
    }

    // Flow time spent moving from a to b along the p >= 0 branch (signed).
    double time_integral(double a, double b, double e) const {
        if (a == b) return 0.0;
        const double sign = b >= a ? 1.0 : -1.0;
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        const double value = num::tanh_sinh(
            [&](double u) {
                const double hp = hp_at(u, solve_p(u, e));
                return hp > 0.0 ? 1.0 / hp : 0.0;
            },
            lo, hi, QUAD_REL_TOL);
        if (!std::isfinite(value))
            throw numerical_error("action-angle step 3: time quadrature failed near a turning "
                                  "point");
        return sign * value;
    }

    // Step 3: K(q, E) = int p dq from the lower turning point, clamped to
    // the classically allowed interval.
    double k_integral(double q, double e, double q_lo, double q_hi) const {
        const double upper = std::clamp(q, q_lo, q_hi);
        if (upper <= q_lo) return 0.0;
        const double value = num::tanh_sinh([&](double u) { return solve_p(u, e); }, q_lo, upper,
                                            QUAD_REL_TOL);
        if (!std::isfinite(value))
            throw numerical_error("action-angle step 3: generating-function quadrature failed");
        return value;
    }

    // Per-energy context for angle evaluations: turning points of the
    // E +- delta stencil plus the anchor value at the well center.
    struct Context {
        Level lv;
        double delta_e = 0.0;
        bool ediff_ok = false;
        double q_lo_minus = 0.0, q_hi_minus = 0.0;
        double q_lo_plus = 0.0, q_hi_plus = 0.0;
        double anchor = 0.0;
    };

    Context make_context(double e) const {
        Context ctx;
        ctx.lv = level(e);
        // E stencil balancing the quotient's two error terms: rounding in
        // the K quadratures is divided by 2 dE, so dE = 1e-6 E sinks below
        // the double noise floor; the cap keeps the relative stencil small
        // enough that the quotient's curvature term stays harmless.
        ctx.delta_e = std::max(std::min(2e-5 * std::abs(e), 1e-5), 1e-12);
        ctx.ediff_ok = e - ctx.delta_e > e_floor_;
        if (ctx.ediff_ok) {
            try {
                ctx.q_lo_minus = turning_point(e - ctx.delta_e, -1);
                ctx.q_hi_minus = turning_point(e - ctx.delta_e, +1);
                ctx.q_lo_plus = turning_point(e + ctx.delta_e, -1);
                ctx.q_hi_plus = turning_point(e + ctx.delta_e, +1);
                ctx.anchor = dk_de(q_star_, ctx);
            } catch (const Error&) {
                // E +- dE can leave the bounded part of the well even when
                // E itself is inside; the time route takes over.
                ctx.ediff_ok = false;
            }
        }
        return ctx;
    }

    // Step 4 quotient: [K(q, E+d) - K(q, E-d)] / 2d.
    double dk_de(double q, const Context& ctx) const {
        const double e = ctx.lv.e;
        const double d = ctx.delta_e;
        const double hi = k_integral(q, e + d, ctx.q_lo_plus, ctx.q_hi_plus);
        const double lo = k_integral(q, e - d, ctx.q_lo_minus, ctx.q_hi_minus);
        return (hi - lo) / (2.0 * d);
    }

    // Flow time from the well center to q on the p >= 0 branch: the
    // anchored dK/dE away from the turning points, the direct time
    // integral inside the guard band.
    double t_plus(double q, const Context& ctx) const {
        const double p_here = solve_p(q, ctx.lv.e);
        if (!ctx.ediff_ok || p_here < GUARD_FRACTION * ctx.lv.p_scale)
            return time_integral(q_star_, q, ctx.lv.e);
        return dk_de(q, ctx) - ctx.anchor;
    }

    void check_window(double e) const {
        if (!(e >= e_lo_ && e <= e_hi_))
            throw domain_error("chart domain: energy " + std::to_string(e) +
                               " outside the window [" + std::to_string(e_lo_) + ", " +
                               std::to_string(e_hi_) + "]");
    }

    // Angle of a state, scaled to period 2*pi and wrapped into (-pi, pi].
    double angle_of(double q, double p, const Context& ctx) const {
        double t = p >= 0.0 ? t_plus(q, ctx) : 2.0 * ctx.lv.t_hi - t_plus(q, ctx);
        if (branch_ == -1) t -= 2.0 * ctx.lv.t_hi;
        return num::wrap_angle(t * TWO_PI / ctx.lv.period);
    }

    // Step 5: invert the angle by monotone bisection in q.
    PhaseState invert(double z, double e, const Context& ctx) const {
        double target = z * ctx.lv.period / TWO_PI;
        if (branch_ == -1) target += 2.0 * ctx.lv.t_hi;
        target = num::wrap_into(target, ctx.lv.t_lo, ctx.lv.period);

        const bool upper_branch = target <= ctx.lv.t_hi;
        const double goal = upper_branch ? target : 2.0 * ctx.lv.t_hi - target;
        const auto root = num::bisect([&](double q) { return t_plus(q, ctx) - goal; }, ctx.lv.q_lo,
                                      ctx.lv.q_hi, ROOT_TOL * std::max(1.0, std::abs(ctx.lv.q_hi)));
        if (!root.converged)
            throw numerical_error("action-angle step 5: angle inversion failed to bracket");
        const double q = root.root;
        const double p = solve_p(q, e);
        return make_state1(q, upper_branch ? p : -p);
    }

  private:
    double turning_point(double e, int side) const {
        double width = 1.0;
        int expansions = 0;
        while (h_at(q_star_ + side * width, 0.0) < e) {
            width *= 2.0;
            if (++expansions > 60)
                throw domain_error("action-angle step 2: energy level has no turning point on "
                                   "side " +
                                   std::to_string(side));
        }
        double lo = q_star_;
        double hi = q_star_ + side * width;
        if (side < 0) std::swap(lo, hi);
        const auto root = num::bisect([&](double q) { return h_at(q, 0.0) - e; }, lo, hi, 0.0);
        return root.root;
    }

    HamiltonianSystem sys_;
    double e_lo_;
    double e_hi_;
    int branch_;
    double q_star_ = 0.0;
    double e_floor_ = 0.0;
};

}  // namespace

ActionAngleChart ho_chart() {
    ActionAngleChart chart;
    chart.dim = 1;
    chart.branch = +1;
    chart.label = "ho-analytic";
    chart.action_min = 0.0;
    chart.to_aa = [](const PhaseState& s) {
        const double e = 0.5 * (s.p[0] * s.p[0] + s.q[0] * s.q[0]);
        if (e <= 0.0) throw domain_error("ho chart excludes the origin (E = 0)");
        return std::make_pair(std::vector<double>{std::atan2(s.q[0], s.p[0])},
                              std::vector<double>{e});
    };
    chart.from_aa = [](const std::vector<double>& z, const std::vector<double>& action) {
        const double e = action[0];
        if (e <= 0.0) throw domain_error("ho chart excludes the origin (E = 0)");
        const double r = std::sqrt(2.0 * e);
        return make_state1(r * std::sin(z[0]), r * std::cos(z[0]));
    };
    chart.nu = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
    return chart;
}

ActionAngleChart numeric_chart_1d(const HamiltonianSystem& sys, double e_lo, double e_hi,
                                  int branch) {
    auto pipe = std::make_shared<const Pipeline1D>(sys, e_lo, e_hi, branch);
    ActionAngleChart chart;
    chart.dim = 1;
    chart.branch = branch;
    chart.label = "numeric(" + sys.label + ")";
    chart.action_min = e_lo;
    chart.action_max = e_hi;
    chart.to_aa = [pipe, h = sys.h](const PhaseState& s) {
        const double e = h(s);
        pipe->check_window(e);
        const auto ctx = pipe->make_context(e);
        return std::make_pair(std::vector<double>{pipe->angle_of(s.q[0], s.p[0], ctx)},
                              std::vector<double>{e});
    };
    chart.from_aa = [pipe](const std::vector<double>& z, const std::vector<double>& action) {
        const double e = action[0];
        pipe->check_window(e);
        const auto ctx = pipe->make_context(e);
        return pipe->invert(z[0], e, ctx);
    };
    chart.nu = [pipe](const std::vector<double>& action) {
        pipe->check_window(action[0]);
        return std::vector<double>{TWO_PI / pipe->level(action[0]).period};
    };
    return chart;
}

GeneratingFunction make_generating_function_1d(const HamiltonianSystem& sys, double e_lo,
                                               double e_hi, int branch) {
    auto pipe = std::make_shared<const Pipeline1D>(sys, e_lo, e_hi, branch);
    GeneratingFunction gen;
    const double sign = branch;
    gen.p_of = [pipe, sign](double q, double e) { return sign * pipe->solve_p(q, e); };
    gen.K_eval = [pipe, sign](double q, double e) {
        pipe->check_window(e);
        const auto ctx = pipe->make_context(e);
        return sign * pipe->k_integral(q, e, ctx.lv.q_lo, ctx.lv.q_hi);
    };
    gen.dK_dI = [pipe, sign](double q, double e) {
        pipe->check_window(e);
        const auto ctx = pipe->make_context(e);
        if (!ctx.ediff_ok)
            throw numerical_error("action-angle step 4: energy stencil leaves the window");
        return sign * pipe->dk_de(q, ctx);
    };
    return gen;
}

std::vector<double> frequencies(const ActionAngleChart& chart, const HamiltonianSystem& sys,
                                const PhaseState& s) {
    if (chart.dim != 1 || sys.dim != 1)
        throw capability_error("frequencies ships for 1-D charts only");
    auto angle = [&](const PhaseState& at) { return chart.to_aa(at).first[0]; };

    // The fixed-action contraction dz/dq . dH/dp equals the directional
    // derivative of the angle along the generator (for action = energy
    // charts).  Probing along the generator keeps the stencil on the
    // energy level, where the angle is linear in the probe parameter, so
    // the symmetric difference carries no curvature term and the step can
    // sit well above the chart's quadrature noise.
    const VectorFieldSample gen = evolution_generator(sys, s);
    const double gen_scale = std::max(1.0, gen.max_abs());
    const double tau = 1e-3 / gen_scale;

    PhaseState probe = s;
    probe.q[0] = s.q[0] + tau * gen.xi[0];
    probe.p[0] = s.p[0] + tau * gen.eta[0];
    const double z_forward = angle(probe);
    probe.q[0] = s.q[0] - tau * gen.xi[0];
    probe.p[0] = s.p[0] - tau * gen.eta[0];
    const double z_backward = angle(probe);

    // Wrapped difference keeps the seam of the presentation interval out.
    return {num::wrap_angle(z_forward - z_backward) / (2.0 * tau)};
}

ActionAngleChart seed_chart(ActionAngleChart chart, const PhaseState& seed) {
    try {
        chart.gamma = chart.to_aa(seed).second;
    } catch (const Error& err) {
        throw domain_error(std::string("action-angle step 7: seed state rejected: ") + err.what());
    }
    return chart;
}

Scheme exact_scheme_from_chart(const ActionAngleChart& chart, const PhaseState& seed) {
    const ActionAngleChart seeded = seed_chart(chart, seed);
    const std::vector<double> gamma = *seeded.gamma;
    for (double action : gamma)
        if (!(action >= seeded.action_min && action <= seeded.action_max))
            throw domain_error("action-angle step 7: seed action " + std::to_string(action) +
                               " outside the chart window");
    const std::vector<double> nu = seeded.nu(gamma);

    Scheme scheme;
    scheme.name = "aa-exact(" + chart.label + ")";
    scheme.claimed_order = 0;
    scheme.group_linear = true;
    scheme.has_analytic_d_delta = false;
    scheme.step = [seeded, gamma, nu](const PhaseState& s, double delta) {
        auto [z, action] = seeded.to_aa(s);
        (void)action;
        for (std::size_t k = 0; k < z.size(); ++k) z[k] += nu[k] * delta;
        PhaseState out = seeded.from_aa(z, gamma);
        out.t = s.t + delta;
        return out;
    };
    return scheme;
}

}  // namespace hamflow
