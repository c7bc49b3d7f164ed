#include "hamflow/lie_engine.hpp"

#include <cmath>

#include "hamflow/errors.hpp"

namespace hamflow {

double VectorFieldSample::max_abs() const {
    double m = 0.0;
    for (double v : xi) m = std::max(m, std::abs(v));
    for (double v : eta) m = std::max(m, std::abs(v));
    return m;
}

double VectorFieldSample::norm() const {
    double acc = 0.0;
    for (double v : xi) acc += v * v;
    for (double v : eta) acc += v * v;
    return std::sqrt(acc);
}

std::vector<double> ScalarField::eval_grad_q(const PhaseState& s) const {
    return grad_q ? grad_q(s) : fd_grad_q(value, s);
}

std::vector<double> ScalarField::eval_grad_p(const PhaseState& s) const {
    return grad_p ? grad_p(s) : fd_grad_p(value, s);
}

VectorFieldSample evolution_generator(const HamiltonianSystem& sys, const PhaseState& s) {
    VectorFieldSample field;
    field.at = s;
    field.xi = sys.grad_p(s);
    field.eta = sys.grad_q(s);
    for (double& v : field.eta) v = -v;
    return field;
}

double apply_field(const VectorFieldSample& field, const ScalarField& f) {
    const std::vector<double> fq = f.eval_grad_q(field.at);
    const std::vector<double> fp = f.eval_grad_p(field.at);
    double acc = 0.0;
    for (std::size_t j = 0; j < field.xi.size(); ++j)
        acc += field.xi[j] * fq[j] + field.eta[j] * fp[j];
    return acc;
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const PhaseState& s) {
    const std::vector<double> fq = f.eval_grad_q(s);
    const std::vector<double> fp = f.eval_grad_p(s);
    const std::vector<double> gq = g.eval_grad_q(s);
    const std::vector<double> gp = g.eval_grad_p(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < fq.size(); ++j) acc += fq[j] * gp[j] - gq[j] * fp[j];
    return acc;
}

namespace {

// Central-difference steps for the k-th generator power.  Computing g^2
// differentiates analytic gradient values; g^3 and g^4 differentiate
// already-differenced quantities, so the step widens with the level to
// keep truncation and noise balanced.
double power_step(int k, double coordinate) {
    static constexpr double steps[] = {6e-6, 2.6e-4, 4e-3};
    return steps[k - 2] * std::max(1.0, std::abs(coordinate));
}

// g^k applied to the coordinate functions, packed (q..., p...).  Level 1 is
// the generator itself; level k contracts the numeric Jacobian of level
// k-1 with the generator vector.
std::vector<double> generator_power(const HamiltonianSystem& sys, const PhaseState& s, int k) {
    if (k == 0) return pack_state(s);
    const std::vector<double> gq = sys.grad_q(s);
    const std::vector<double> gp = sys.grad_p(s);
    const int n = sys.dim;
    if (k == 1) {
        std::vector<double> out(2 * n);
        for (int j = 0; j < n; ++j) {
            out[j] = gp[j];
            out[n + j] = -gq[j];
        }
        return out;
    }

    std::vector<double> out(2 * n, 0.0);
    PhaseState probe = s;
    auto accumulate = [&](double* coord, double weight) {
        const double center = *coord;
        const double h = power_step(k, center);
        *coord = center + h;
        const std::vector<double> hi = generator_power(sys, probe, k - 1);
        *coord = center - h;
        const std::vector<double> lo = generator_power(sys, probe, k - 1);
        *coord = center;
        for (int i = 0; i < 2 * n; ++i) out[i] += weight * (hi[i] - lo[i]) / (2.0 * h);
    };
    for (int j = 0; j < n; ++j) {
        accumulate(&probe.q[j], gp[j]);
        accumulate(&probe.p[j], -gq[j]);
    }
    return out;
}

}  // namespace

PhaseState lie_series_step(const HamiltonianSystem& sys, const PhaseState& s, double delta,
                           int order) {
    if (order < 1) throw domain_error("lie_series_step needs order K >= 1");
    if (order > 4)
        throw capability_error("lie_series_step: nested differentiation beyond K = 4 is refused");
    if (order > 1 && !sys.analytic_gradients)
        throw capability_error(
            "lie_series_step: orders K > 1 need analytic gradients on the system");

    std::vector<double> acc = pack_state(s);
    double factor = 1.0;
    for (int k = 1; k <= order; ++k) {
        factor *= delta / k;
        const std::vector<double> term = generator_power(sys, s, k);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += factor * term[i];
    }
    return unpack_state(acc, s.t + delta);
}

MapJacobian numeric_jacobian(const std::function<PhaseState(const PhaseState&, double)>& step,
                             const PhaseState& s, double delta, double stencil_step) {
    const int n = s.dim();
    const double h = stencil_step;
    MapJacobian jac;
    jac.base = s;
    jac.delta = delta;
    jac.matrix.resize(2 * n, 2 * n);

    PhaseState probe = s;
    for (int col = 0; col < 2 * n; ++col) {
        double* coord = col < n ? &probe.q[col] : &probe.p[col - n];
        const double center = *coord;
        *coord = center + h;
        const std::vector<double> zh = pack_state(step(probe, delta));
        *coord = center - h;
        const std::vector<double> zl = pack_state(step(probe, delta));
        *coord = center;
        for (int row = 0; row < 2 * n; ++row)
            jac.matrix(row, col) = (zh[row] - zl[row]) / (2.0 * h);
    }
    return jac;
}

double symplectic_defect(const MapJacobian& jac) {
    const int two_n = static_cast<int>(jac.matrix.rows());
    if (two_n != jac.matrix.cols() || two_n % 2 != 0)
        throw domain_error("symplectic_defect needs a square 2N x 2N matrix");
    const int n = two_n / 2;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(two_n, two_n);
    omega.block(0, n, n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.block(n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd residual = jac.matrix.transpose() * omega * jac.matrix - omega;
    return residual.cwiseAbs().maxCoeff();
}

}  // namespace hamflow
