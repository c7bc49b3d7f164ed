// Small numeric kernels: finite differences, root finding, quadrature,
// polynomial least squares.  Everything here is deterministic and
// single-threaded; callers own step sizes and tolerances.
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hamflow::num {

using Fn1 = std::function<double(double)>;

// (f(x+h) - f(x-h)) / 2h
double central_diff(const Fn1& f, double x, double h);

// 4-point central first derivative, error O(h^4).
double central_diff4(const Fn1& f, double x, double h);

// k-th derivative of f at 0 (k in 2..5) from the minimal symmetric stencil
// with spacing h; leading error is O(h^2) with an even-power tail.
double central_kth(const Fn1& f, int k, double h);

// Two Richardson refinement levels for an even-power error expansion:
// combines D(h), D(h/2), D(h/4) into an O(h^6)-accurate estimate.
double richardson2(double d_h, double d_h2, double d_h4);

// k-th derivative at 0 via central_kth at h, h/2, h/4 plus richardson2.
double central_kth_richardson(const Fn1& f, int k, double h);

struct BisectionResult {
    double root = 0.0;
    bool converged = false;
};

// Bisection on [lo, hi]; f(lo) and f(hi) must bracket a sign change.
BisectionResult bisect(const Fn1& f, double lo, double hi, double x_tol, int max_iter = 200);

// Integral of f over (a, b) by tanh-sinh quadrature with level refinement.
// Endpoint integrable singularities are handled; f is never evaluated at
// a or b exactly.
double tanh_sinh(const Fn1& f, double a, double b, double rel_tol, int max_level = 12);

// Recursive adaptive Simpson quadrature.
double adaptive_simpson(const Fn1& f, double a, double b, double tol, int max_depth = 40);

struct PolyFit {
    std::vector<double> coeff;  // c0 + c1 x + ... + cK x^K
    double condition = 0.0;     // of the column-scaled design matrix
    double rms_residual = 0.0;
};

// Least-squares polynomial fit of degree `degree` through (xs, ys).
PolyFit polyfit(std::span<const double> xs, std::span<const double> ys, int degree);

// Minimum of a unimodal f on [lo, hi] by golden-section search.
double find_min(const Fn1& f, double lo, double hi, double x_tol);

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

// Wrap into [lo, lo + period).
double wrap_into(double a, double lo, double period);

// Representative of `a` (mod period) closest to `ref`.
double unwrap_near(double a, double ref, double period);

}  // namespace hamflow::num
