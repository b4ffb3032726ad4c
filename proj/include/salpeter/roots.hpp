#pragma once

#include <functional>

namespace salpeter::roots {

struct Root {
    double x;
    int iterations;
};

// Brent's method on a sign-changing bracket [a, b]; throws NumericalFailure with the
// bracket when f(a), f(b) do not straddle zero or the iteration cap is hit.
Root brent(const std::function<double(double)>& f, double a, double b, double xtol,
           int max_iter = 300);

// Same, reusing already-known endpoint values.
Root brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
           double xtol, int max_iter = 300);

struct Minimum {
    double x;
    double fx;
};

// Golden-section search for a minimum inside [a, b].
Minimum golden_section(const std::function<double(double)>& f, double a, double b, double xtol,
                       int max_iter = 200);

}  // namespace salpeter::roots
