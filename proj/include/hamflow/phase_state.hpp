// Phase-space states and the physical-units rescaling map.
#pragma once

#include <cstddef>
#include <vector>

#include "hamflow/errors.hpp"

namespace hamflow {

// A point (q, p) in 2N-dimensional phase space with an optional time tag.
// Treated as an immutable value everywhere outside construction sites.
struct PhaseState {
    std::vector<double> q;
    std::vector<double> p;
    double t = 0.0;

    int dim() const { return static_cast<int>(q.size()); }
};

// Validating constructor: equal lengths, N >= 1, all components finite.
PhaseState make_state(std::vector<double> q, std::vector<double> p, double t = 0.0);

// 1-D convenience.
PhaseState make_state1(double x, double px, double t = 0.0);

// Flattened (q1..qN, p1..pN) view used by Jacobians and stencils.
std::vector<double> pack_state(const PhaseState& s);
PhaseState unpack_state(const std::vector<double>& z, double t = 0.0);

// Euclidean distance in phase space, time tags ignored.
double phase_distance(const PhaseState& a, const PhaseState& b);

struct PhysicalPoint {
    double zeta;  // position
    double rho;   // momentum
    double tau;   // time
};

struct RescaledPoint {
    double x;
    double p;
    double t;
};

// Absorbs mass m and spring constant k of the physical oscillator into
// dimensionless variables:  zeta = x / sqrt(k),  rho = sqrt(m) p,
// tau = sqrt(m/k) t.  Both directions are exposed.
class RescalingMap {
  public:
    RescalingMap(double mass, double spring_constant);

    double mass() const { return m_; }
    double spring_constant() const { return k_; }

    RescaledPoint to_rescaled(const PhysicalPoint& phys) const;
    PhysicalPoint to_physical(const RescaledPoint& resc) const;

  private:
    double m_;
    double k_;
};

// Maps physical coordinates (zeta, rho, tau) into the dimensionless
// (x, p, t) chart in which H = (p^2 + x^2)/2.
RescaledPoint rescale_physical(double zeta, double rho, double tau, double mass,
                               double spring_constant);

}  // namespace hamflow
