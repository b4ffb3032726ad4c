#include "salpeter/kernels.hpp"

#include <cmath>
#include <vector>

#include "salpeter/errors.hpp"
#include "salpeter/quadrature.hpp"
#include "salpeter/specfun.hpp"

namespace salpeter::kernels {

namespace {

using specfun::pi;

void check_separation(double d) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw DomainError("resolvent kernel: separation must be positive and finite");
}

void check_mass(double m) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("mass must be non-negative and finite");
}

constexpr quad::Tolerance kernel_tol{1e-300, 1e-13, 20000};

// Upper theta limit where e^{-x(cosh th - 1)} has dropped below e^-60.
double theta_cutoff(double x) { return x < 1e-10 ? std::log(120.0) - std::log(x) : std::acosh(1.0 + 60.0 / x); }

// Breakpoints that resolve the feature of sinh^2/(sinh^2 + c^2) near theta = asinh(c).
std::vector<double> theta_panels(double c, double theta_max) {
    std::vector<double> pts{0.0};
    if (c > 0.0) {
        const double s = std::asinh(c);
        if (s < theta_max) {
            if (0.5 * s > 0.0) pts.push_back(0.5 * s);
            for (double p = s; p < theta_max; p *= 2.0) pts.push_back(p);
        }
    }
    if (pts.back() < 1.0 && 1.0 < theta_max) pts.push_back(1.0);
    pts.push_back(theta_max);
    return pts;
}

// e^{x} * int_0^inf e^{-x cosh th} sinh^2 th / (sinh^2 th + c2)^power dth
double scaled_cut_integral(double x, double c2, int power) {
    const double theta_max = theta_cutoff(x);
    auto f = [&](double th) {
        const double sh = std::sinh(th);
        const double s2 = sh * sh;
        const double hs = std::sinh(0.5 * th);
        const double damp = std::exp(-2.0 * x * hs * hs);
        // s2/(s2 + c2) written to survive s2 = inf at tiny x
        const double ratio = c2 == 0.0 ? 1.0 : 1.0 / (1.0 + c2 / s2);
        return power == 1 ? damp * ratio : damp * ratio * ratio / s2;
    };
    return quad::integrate(f, theta_panels(std::sqrt(c2), theta_max), kernel_tol).value;
}

// e^{x} * int_0^inf e^{-x cosh th} sinh^2 th / (cosh^2 th + q2) dth
double scaled_scatter_integral(double x, double q2) {
    const double theta_max = theta_cutoff(x);
    auto f = [&](double th) {
        const double sh = std::sinh(th);
        const double hs = std::sinh(0.5 * th);
        return std::exp(-2.0 * x * hs * hs) / (1.0 + (1.0 + q2) / (sh * sh));
    };
    std::vector<double> pts{0.0};
    if (1.0 < theta_max) pts.push_back(1.0);
    pts.push_back(theta_max);
    return quad::integrate(f, pts, kernel_tol).value;
}

}  // namespace

double heat_kernel(double t, double d, double m) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat_kernel: t must be positive");
    if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("heat_kernel: d must be non-negative");
    check_mass(m);
    if (m == 0.0) return t / (pi * (t * t + d * d));
    const double r = std::hypot(d, t);
    const double z = m * r;
    // x K1(x) form keeps the small-z limit clean
    return (1.0 + specfun::x_k1_minus_one(z)) * t / (pi * r * r);
}

double massless_damped(double x) {
    if (!(x > 0.0)) throw DomainError("massless_damped: argument must be positive");
    const auto sc = specfun::sin_cos_integral(x);
    return -(std::cos(x) * sc.ci + std::sin(x) * (sc.si - 0.5 * pi)) / pi;
}

double massless_damped_deriv(double x) {
    if (!(x > 0.0)) throw DomainError("massless_damped_deriv: argument must be positive");
    const auto sc = specfun::sin_cos_integral(x);
    return (std::sin(x) * sc.ci - std::cos(x) * (sc.si - 0.5 * pi) - 1.0 / x) / pi;
}

double free_resolvent_bound(double d, double E, double m) {
    check_separation(d);
    check_mass(m);
    if (!std::isfinite(E)) throw DomainError("free_resolvent_bound: energy must be finite");
    if (m == 0.0) {
        if (!(E < 0.0)) throw DomainError("free_resolvent_bound: massless case needs E < 0");
        return massless_damped(-E * d);
    }
    if (!(E < m)) throw DomainError("free_resolvent_bound: requires E < m");
    const double x = m * d;
    const double e = E / m;
    double value = 0.0;
    if (x < 740.0) value = std::exp(-x) * scaled_cut_integral(x, e * e, 1) / pi;
    if (e > 0.0) {
        // real continuation of the pole contribution for 0 < E < m
        const double kappa = std::sqrt((1.0 - e) * (1.0 + e));
        value += e / kappa * std::exp(-kappa * x);
    }
    return value;
}

double free_resolvent_bound_deriv(double d, double E, double m) {
    check_separation(d);
    check_mass(m);
    if (!std::isfinite(E)) throw DomainError("free_resolvent_bound_deriv: energy must be finite");
    if (m == 0.0) {
        if (!(E < 0.0)) throw DomainError("free_resolvent_bound_deriv: massless case needs E < 0");
        // G = g(-E d), dG/dE = -d g'(x)
        return -d * massless_damped_deriv(-E * d);
    }
    if (!(E < m)) throw DomainError("free_resolvent_bound_deriv: requires E < m");
    const double x = m * d;
    const double e = E / m;
    double de = 0.0;  // dG/de
    if (x < 740.0) {
        if (e == 0.0) {
            // limit from below of -(2e/pi) int ...; the jump is compensated by the pole term
            de = 0.5 * std::exp(-x);
        } else {
            de = -(2.0 * e / pi) * std::exp(-x) * scaled_cut_integral(x, e * e, 2);
        }
    }
    if (e > 0.0) {
        const double k2 = (1.0 - e) * (1.0 + e);
        const double kappa = std::sqrt(k2);
        de += std::exp(-kappa * x) * (1.0 / (k2 * kappa) + x * e * e / k2);
    }
    return de / m;
}

double damped_scatter_term(double d, double k, double m) {
    check_separation(d);
    check_mass(m);
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scattering kernel: k must be positive");
    if (m == 0.0) return massless_damped(k * d);
    const double x = m * d;
    if (x >= 740.0) return 0.0;
    const double q = k / m;
    return std::exp(-x) * scaled_scatter_integral(x, q * q) / pi;
}

double damped_scatter_term_asymptotic(double d, double k, double m) {
    check_separation(d);
    if (!(m > 0.0)) throw RegimeError("asymptotic damped term needs m > 0");
    if (!(k > 0.0)) throw DomainError("scattering kernel: k must be positive");
    const double x = m * d;
    return (m * m / (k * k + m * m)) * std::exp(-x) / (std::sqrt(2.0 * pi) * x * std::sqrt(x));
}

std::complex<double> free_resolvent_scatter(double d, double k, double m) {
    const double damped = damped_scatter_term(d, k, m);
    const double ratio = m == 0.0 ? 1.0 : std::hypot(k, m) / k;
    const std::complex<double> osc = std::complex<double>(0.0, ratio) * std::polar(1.0, k * d);
    return osc + damped;
}

}  // namespace salpeter::kernels
