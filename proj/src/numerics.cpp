#include "hamflow/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "hamflow/errors.hpp"

namespace hamflow::num {

double central_diff(const Fn1& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central_diff4(const Fn1& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

double central_kth(const Fn1& f, int k, double h) {
    switch (k) {
        case 2:
            return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        case 3:
            return (f(2 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2 * h)) / (2.0 * h * h * h);
        case 4:
            return (f(2 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2 * h)) /
                   (h * h * h * h);
        case 5:
            return (f(3 * h) - 4.0 * f(2 * h) + 5.0 * f(h) - 5.0 * f(-h) + 4.0 * f(-2 * h) -
                    f(-3 * h)) /
                   (2.0 * std::pow(h, 5));
        default:
            throw domain_error("central_kth supports derivative orders 2..5");
    }
}

double richardson2(double d_h, double d_h2, double d_h4) {
    const double r1 = (4.0 * d_h2 - d_h) / 3.0;
    const double r1_fine = (4.0 * d_h4 - d_h2) / 3.0;
    return (16.0 * r1_fine - r1) / 15.0;
}

double central_kth_richardson(const Fn1& f, int k, double h) {
    return richardson2(central_kth(f, k, h), central_kth(f, k, h / 2.0),
                       central_kth(f, k, h / 4.0));
}

BisectionResult bisect(const Fn1& f, double lo, double hi, double x_tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, true};
    if (fhi == 0.0) return {hi, true};
    if ((flo > 0.0) == (fhi > 0.0)) return {0.5 * (lo + hi), false};
    for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // interval at machine resolution
        const double fm = f(mid);
        if (fm == 0.0) return {mid, true};
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return {0.5 * (lo + hi), true};
}

double tanh_sinh(const Fn1& f, double a, double b, double rel_tol, int max_level) {
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    if (rad == 0.0) return 0.0;
    const double half_pi = std::acos(-1.0) / 2.0;

    auto node = [&](double tau, double& x, double& w) {
        const double s = half_pi * std::sinh(tau);
        const double c = std::cosh(s);
        x = mid + rad * std::tanh(s);
        w = rad * half_pi * std::cosh(tau) / (c * c);
    };

    // Level 0: trapezoid with spacing 1 on tau in [-t_max, t_max].
    const double t_max = 3.8;
    double h = 1.0;
    double sum = 0.0;
    {
        double x, w;
        node(0.0, x, w);
        sum = w * f(x);
        for (double tau = h; tau <= t_max; tau += h) {
            node(tau, x, w);
            if (w > 0.0 && x > a && x < b) sum += w * f(x);
            node(-tau, x, w);
            if (w > 0.0 && x > a && x < b) sum += w * f(x);
        }
    }
    double integral = sum * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double tau = h; tau <= t_max; tau += 2.0 * h) {
            double x, w;
            node(tau, x, w);
            if (w > 0.0 && x > a && x < b) add += w * f(x);
            node(-tau, x, w);
            if (w > 0.0 && x > a && x < b) add += w * f(x);
        }
        const double refined = 0.5 * integral + add * h;
        const double change = std::abs(refined - integral);
        integral = refined;
        if (level >= 3 && change <= rel_tol * std::abs(integral) + 1e-305) break;
    }
    return integral;
}

namespace {

double simpson_segment(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const Fn1& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_segment(a, fa, m, fm, flm);
    const double right = simpson_segment(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = simpson_segment(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

PolyFit polyfit(std::span<const double> xs, std::span<const double> ys, int degree) {
    if (degree < 0 || xs.size() != ys.size() || xs.size() < static_cast<std::size_t>(degree) + 1)
        throw domain_error("polyfit needs at least degree+1 samples");
    const int rows = static_cast<int>(xs.size());
    const int cols = degree + 1;

    double scale = 0.0;
    for (double x : xs) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (int i = 0; i < rows; ++i) {
        double u = xs[i] / scale;
        double pw = 1.0;
        for (int j = 0; j < cols; ++j) {
            design(i, j) = pw;
            pw *= u;
        }
        rhs(i) = ys[i];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd scaled_coeff = svd.solve(rhs);

    PolyFit fit;
    fit.coeff.resize(cols);
    double rescale = 1.0;
    for (int j = 0; j < cols; ++j) {
        fit.coeff[j] = scaled_coeff(j) / rescale;
        rescale *= scale;
    }
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    fit.condition = smin > 0.0 ? svd.singularValues()(0) / smin
                               : std::numeric_limits<double>::infinity();
    fit.rms_residual = std::sqrt((design * scaled_coeff - rhs).squaredNorm() / rows);
    return fit;
}

double find_min(const Fn1& f, double lo, double hi, double x_tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double wrap_angle(double a) {
    const double two_pi = 2.0 * std::acos(-1.0);
    double w = std::fmod(a, two_pi);
    if (w <= -std::acos(-1.0)) w += two_pi;
    if (w > std::acos(-1.0)) w -= two_pi;
    return w;
}

double wrap_into(double a, double lo, double period) {
    double w = std::fmod(a - lo, period);
    if (w < 0.0) w += period;
    return lo + w;
}

double unwrap_near(double a, double ref, double period) {
    return a + period * std::round((ref - a) / period);
}

}  // namespace hamflow::num
