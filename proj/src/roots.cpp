#include "salpeter/roots.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "salpeter/errors.hpp"

namespace salpeter::roots {

Root brent(const std::function<double(double)>& f, double a, double b, double xtol, int max_iter) {
    return brent(f, a, b, f(a), f(b), xtol, max_iter);
}

Root brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
           double xtol, int max_iter) {
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericalFailure("brent: bracket does not change sign", a, b);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return {b, it};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw NumericalFailure("brent: iteration cap reached", std::min(b, c), std::max(b, c));
}

Minimum golden_section(const std::function<double(double)>& f, double a, double b, double xtol,
                       int max_iter) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

}  // namespace salpeter::roots
