#pragma once

#include <functional>
#include <vector>

namespace salpeter::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

struct Tolerance {
    double abs = 1e-14;
    double rel = 1e-12;
    int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

// Global adaptive 21-point Gauss-Kronrod over the panels [b0,b1],[b1,b2],...
// Breakpoints must be finite and non-decreasing.
Result integrate(const Integrand& f, const std::vector<double>& breakpoints, Tolerance tol = {});
Result integrate(const Integrand& f, double a, double b, Tolerance tol = {});

// Integral over [a, inf) via x = a + scale*s/(1-s) mapped onto [0,1).
Result integrate_to_infinity(const Integrand& f, double a, double scale, Tolerance tol = {});

// Raw 21-point rule on one panel: returns Kronrod estimate and |K - G| error.
Result gauss_kronrod21(const Integrand& f, double a, double b);

// Geometric breakpoints {0, h, 2h, 4h, ..., } up to hi (inclusive), h > 0.
std::vector<double> geometric_panels(double h, double hi);

}  // namespace salpeter::quad
