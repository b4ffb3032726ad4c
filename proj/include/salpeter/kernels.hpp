#pragma once

#include <complex>

namespace salpeter::kernels {

// Heat kernel of sqrt(P^2 + m^2) at time t > 0 and separation d >= 0.
double heat_kernel(double t, double d, double m);

// Free resolvent kernel G(d; E) = <x| (H0 - E)^-1 |y>, d = |x - y| > 0, real E < m.
// For m = 0 this requires E < 0.
double free_resolvent_bound(double d, double E, double m);

// dG/dE at fixed d (strictly positive).
double free_resolvent_bound_deriv(double d, double E, double m);

// Exponentially damped part of the outgoing resolvent at E_k = sqrt(k^2 + m^2):
// (1/pi) int_m^inf dmu e^{-mu d} sqrt(mu^2 - m^2)/(mu^2 + k^2).
double damped_scatter_term(double d, double k, double m);

// Large-(m d) approximation of damped_scatter_term (m > 0).
double damped_scatter_term_asymptotic(double d, double k, double m);

// Outgoing resolvent kernel: i (E_k/k) e^{ikd} + damped_scatter_term.
std::complex<double> free_resolvent_scatter(double d, double k, double m);

// Massless damped integral (1/pi) int_0^inf e^{-s x} s/(s^2+1) ds
// = -(cos x Ci x + sin x (Si x - pi/2))/pi, and its x derivative.
double massless_damped(double x);
double massless_damped_deriv(double x);

}  // namespace salpeter::kernels
