#include "salpeter/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "salpeter/errors.hpp"

namespace salpeter::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

void require_positive(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": argument must be positive and finite");
}

// Power series about 0, valid (and used) for 0 < x <= 2.
// K0 = -(ln(x/2) + gamma) I0 + sum H_k q^k/(k!)^2,  q = x^2/4
double k0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double harmonic = 0.0;
    double i0 = 1.0;
    double tail = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += harmonic * term;
        if (term * (1.0 + harmonic) < eps * 1e-3 * std::abs(i0)) break;
    }
    return -(std::log(0.5 * x) + euler_gamma) * i0 + tail;
}

// returns {x ln(x/2) I1(x), (x^2/4) sum [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!)}
// so that x K1(x) = 1 + first - second.
void k1_series_parts(double x, double& log_part, double& psi_part) {
    const double q = 0.25 * x * x;
    double term = 1.0;  // q^k / (k! (k+1)!)
    double i1_sum = 1.0;
    double hk = 0.0;  // H_k
    double psi_sum = (-euler_gamma) + (1.0 - euler_gamma);
    for (int k = 1; k < 60; ++k) {
        term *= q / (double(k) * (k + 1));
        hk += 1.0 / k;
        const double psi_k1 = -euler_gamma + hk;
        const double psi_k2 = psi_k1 + 1.0 / (k + 1);
        i1_sum += term;
        psi_sum += (psi_k1 + psi_k2) * term;
        if (term * (2.0 + 2.0 * hk) < eps * 1e-3) break;
    }
    log_part = x * std::log(0.5 * x) * 0.5 * x * i1_sum;
    psi_part = q * psi_sum;
}

// Temme / Steed continued fraction for x > 2 (order zero and one).
// e^x K0(x) and e^x K1(x)
void k01_continued_fraction(double x, double& k0, double& k1) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 100000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps * 0.5) break;
    }
    h *= a1;
    k0 = std::sqrt(pi / (2.0 * x)) / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k0(double x) {
    require_positive(x, "bessel_k0");
    if (x <= 2.0) return k0_series(x);
    if (x > 745.0) return 0.0;
    double k0, k1;
    k01_continued_fraction(x, k0, k1);
    return k0 * std::exp(-x);
}

double bessel_k1(double x) {
    require_positive(x, "bessel_k1");
    if (x <= 2.0) {
        double lp, pp;
        k1_series_parts(x, lp, pp);
        return (1.0 + lp - pp) / x;
    }
    if (x > 745.0) return 0.0;
    double k0, k1;
    k01_continued_fraction(x, k0, k1);
    return k1 * std::exp(-x);
}

double bessel_k1_scaled(double x) {
    require_positive(x, "bessel_k1_scaled");
    if (x <= 2.0) return bessel_k1(x) * std::exp(x);
    double k0, k1;
    k01_continued_fraction(x, k0, k1);
    return k1;
}

double bessel_k(int order, double x) {
    if (order == 0) return bessel_k0(x);
    if (order == 1) return bessel_k1(x);
    throw DomainError("bessel_k: only orders 0 and 1 are supported");
}

double x_k1_minus_one(double x) {
    require_positive(x, "x_k1_minus_one");
    if (x <= 2.0) {
        double lp, pp;
        k1_series_parts(x, lp, pp);
        return lp - pp;
    }
    return x * bessel_k1(x) - 1.0;
}

SinCosIntegral sin_cos_integral(double x) {
    if (!std::isfinite(x)) throw DomainError("sin_cos_integral: argument must be finite");
    if (x == 0.0) throw DomainError("sin_cos_integral: Ci has a logarithmic singularity at 0");
    const double t = std::abs(x);
    double si, ci;
    if (t <= 2.0) {
        // Si = sum (-1)^k t^(2k+1)/((2k+1)(2k+1)!), Ci = gamma + ln t + sum (-1)^k t^(2k)/(2k (2k)!)
        const double t2 = t * t;
        double p = t;  // (-1)^k t^(2k+1)/(2k+1)!
        si = t;
        double pc = 1.0;  // (-1)^k t^(2k)/(2k)!
        double csum = 0.0;
        for (int k = 1; k < 40; ++k) {
            p *= -t2 / ((2.0 * k) * (2.0 * k + 1.0));
            pc *= -t2 / ((2.0 * k - 1.0) * (2.0 * k));
            const double ds = p / (2.0 * k + 1.0);
            const double dc = pc / (2.0 * k);
            si += ds;
            csum += dc;
            if (std::abs(ds) < eps * 1e-2 * std::abs(si) && std::abs(dc) < eps * 1e-2) break;
        }
        ci = euler_gamma + std::log(t) + csum;
    } else {
        // modified Lentz on the continued fraction for E1(i t)
        using cd = std::complex<double>;
        const double tiny = 1e-300;
        cd b(1.0, t);
        cd c(1.0 / tiny, 0.0);
        cd d = 1.0 / b;
        cd h = d;
        for (int i = 2; i < 100000; ++i) {
            const double a = -double(i - 1) * (i - 1);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const cd del = c * d;
            h *= del;
            if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
        }
        h *= cd(std::cos(t), -std::sin(t));
        ci = -h.real();
        si = 0.5 * pi + h.imag();
    }
    return {x < 0.0 ? -si : si, ci};
}

double lambert_w0(double x) {
    constexpr double inv_e = 0.36787944117144232160;
    if (!(x >= -inv_e) || std::isnan(x)) {
        // allow roundoff right at the branch point
        if (x >= -inv_e * (1.0 + 4.0 * eps)) return -1.0;
        throw DomainError("lambert_w0: argument below -1/e");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    double w;
    if (x < -0.25) {
        const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
    } else if (x <= 3.0) {
        w = std::log1p(x);
        if (x > 0.0) w *= 0.8;
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 1e-15 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double arc_ratio(double u) {
    if (!(u < 2.0)) throw DomainError("arc_ratio: requires u < 2");
    if (std::abs(u) < 0.25) {
        // a_0 = 1, a_n = n a_{n-1}/(2n+1)
        double a = 1.0, un = 1.0, s = 1.0;
        for (int n = 1; n < 60; ++n) {
            a *= double(n) / (2.0 * n + 1.0);
            un *= u;
            const double term = a * un;
            s += term;
            if (std::abs(term) < eps * 1e-2) break;
        }
        return s;
    }
    if (u > 0.0) {
        const double v = 2.0 - u;
        return 2.0 * std::atan2(std::sqrt(u), std::sqrt(v)) / std::sqrt(u * v);
    }
    const double w = -u;
    return 2.0 * std::asinh(std::sqrt(0.5 * w)) / std::sqrt(w * (w + 2.0));
}

double arc_ratio_deriv(double u) {
    if (!(u < 2.0)) throw DomainError("arc_ratio_deriv: requires u < 2");
    if (std::abs(u) < 0.25) {
        double a = 1.0, un = 1.0, s = 0.0;
        for (int n = 1; n < 60; ++n) {
            a *= double(n) / (2.0 * n + 1.0);
            const double term = n * a * un;
            s += term;
            un *= u;
            if (std::abs(term) < eps * 1e-2 * std::abs(s)) break;
        }
        return s;
    }
    // from u(2-u) f' = 1 - (1-u) f
    return (1.0 - (1.0 - u) * arc_ratio(u)) / (u * (2.0 - u));
}

}  // namespace salpeter::specfun
