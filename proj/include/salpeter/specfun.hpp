#pragma once

namespace salpeter::specfun {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// Modified Bessel functions of the second kind, x > 0.
double bessel_k0(double x);
double bessel_k1(double x);
double bessel_k(int order, double x);
// e^x K1(x), finite for large x
double bessel_k1_scaled(double x);

// x*K1(x) - 1 without cancellation at small x.
double x_k1_minus_one(double x);

struct SinCosIntegral {
    double si;
    double ci;
};

// Si(x) for any finite x; Ci evaluated at |x| (requires x != 0 for ci).
SinCosIntegral sin_cos_integral(double x);

// Principal branch of Lambert W, x >= -1/e.
double lambert_w0(double x);

// f(u) = arccos(1-u)/sqrt(u(2-u)) continued to u <= 0; defined for u < 2.
// f(0) = 1, f -> infinity as u -> 2.
double arc_ratio(double u);
double arc_ratio_deriv(double u);

}  // namespace salpeter::specfun
