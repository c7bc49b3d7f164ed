#include "hamflow/phase_state.hpp"

#include <cmath>
#include <utility>

namespace hamflow {

PhaseState make_state(std::vector<double> q, std::vector<double> p, double t) {
    if (q.empty() || q.size() != p.size())
        throw domain_error("phase state needs q and p of identical length N >= 1");
    for (double v : q)
        if (!std::isfinite(v)) throw domain_error("phase state has non-finite position component");
    for (double v : p)
        if (!std::isfinite(v)) throw domain_error("phase state has non-finite momentum component");
    if (!std::isfinite(t)) throw domain_error("phase state has non-finite time tag");
    return PhaseState{std::move(q), std::move(p), t};
}

PhaseState make_state1(double x, double px, double t) {
    return make_state({x}, {px}, t);
}

std::vector<double> pack_state(const PhaseState& s) {
    std::vector<double> z;
    z.reserve(2 * s.q.size());
    z.insert(z.end(), s.q.begin(), s.q.end());
    z.insert(z.end(), s.p.begin(), s.p.end());
    return z;
}

PhaseState unpack_state(const std::vector<double>& z, double t) {
    const std::size_t n = z.size() / 2;
    PhaseState s;
    s.q.assign(z.begin(), z.begin() + n);
    s.p.assign(z.begin() + n, z.end());
    s.t = t;
    return s;
}

double phase_distance(const PhaseState& a, const PhaseState& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.q.size(); ++j) {
        const double dq = a.q[j] - b.q[j];
        const double dp = a.p[j] - b.p[j];
        acc += dq * dq + dp * dp;
    }
    return std::sqrt(acc);
}

RescalingMap::RescalingMap(double mass, double spring_constant) : m_(mass), k_(spring_constant) {
    if (!(mass > 0.0) || !(spring_constant > 0.0))
        throw domain_error("rescaling map needs positive mass and spring constant");
}

RescaledPoint RescalingMap::to_rescaled(const PhysicalPoint& phys) const {
    return RescaledPoint{std::sqrt(k_) * phys.zeta, phys.rho / std::sqrt(m_),
                         std::sqrt(k_ / m_) * phys.tau};
}

PhysicalPoint RescalingMap::to_physical(const RescaledPoint& resc) const {
    return PhysicalPoint{resc.x / std::sqrt(k_), std::sqrt(m_) * resc.p,
                         std::sqrt(m_ / k_) * resc.t};
}

RescaledPoint rescale_physical(double zeta, double rho, double tau, double mass,
                               double spring_constant) {
    RescalingMap map(mass, spring_constant);
    return map.to_rescaled(PhysicalPoint{zeta, rho, tau});
}

}  // namespace hamflow
