#include "salpeter/rgflow.hpp"

#include <cmath>

#include "salpeter/errors.hpp"
#include "salpeter/kernels.hpp"
#include "salpeter/principal.hpp"
#include "salpeter/quadrature.hpp"
#include "salpeter/specfun.hpp"

namespace salpeter::rg {

namespace {
using specfun::pi;
}

double subtracted_trace(double M, double E, double m) {
    if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("subtracted_trace: M must be positive");
    if (!(m > 0.0)) throw RegimeError("subtracted_trace: needs m > 0");
    if (!(E < m)) throw DomainError("subtracted_trace: requires E < m");

    // Near t = 0 both terms behave like 1/(pi t); regroup them as
    //   (x K1(x) - 1) e^{tE}/t + e^{-Mt} expm1(t(E+M))/t,   x = m t,
    // which is finite at t = 0. Far out the plain form has no cancellation.
    const double t0 = 0.1 / std::max({m, M, std::abs(E)});
    auto near = [&](double t) {
        if (t == 0.0) return (E + M) / pi;
        const double x = m * t;
        return (specfun::x_k1_minus_one(x) * std::exp(t * E) + std::exp(-M * t) * std::expm1(t * (E + M))) /
               (pi * t);
    };
    auto far = [&](double t) {
        return (m / pi) * specfun::bessel_k1_scaled(m * t) * std::exp(-t * (m - E)) - std::exp(-M * t) / (pi * t);
    };
    const quad::Tolerance tol{1e-15, 1e-13, 20000};
    std::vector<double> pts{0.0};
    for (int j = 60; j >= 1; --j) pts.push_back(t0 * std::ldexp(1.0, -j));
    pts.push_back(t0);
    double value = quad::integrate(near, pts, tol).value;

    const double rate = std::min(m - E, M);
    const double t_end = t0 + 80.0 / rate;
    std::vector<double> far_pts{t0};
    for (double t = 2.0 * t0; t < t_end; t *= 2.0) far_pts.push_back(t);
    far_pts.push_back(t_end);
    value += quad::integrate(far, far_pts, tol).value;
    return value;
}

double inverse_running_coupling(double M, double binding_ref, double m, double sigma) {
    return subtracted_trace(M, binding_ref, m) + sigma;
}

double running_coupling(double M, double binding_ref, double m, double sigma) {
    const double inv = inverse_running_coupling(M, binding_ref, m, sigma);
    if (!std::isfinite(inv) || inv == 0.0) throw NumericalFailure("running_coupling: divergent inverse", M, M);
    return 1.0 / inv;
}

double sigma_offset(double binding_ref, double binding_i, double m) {
    // I(M, E) = F(E) + c(M) with F the single-center closed form
    return principal::diag_closed_form(binding_ref, m) - principal::diag_closed_form(binding_i, m);
}

Eigen::MatrixXd renormalized_phi(double M, double lambda_R, const std::vector<double>& sigmas,
                                 const std::vector<double>& centers, double E, double m) {
    const std::size_t n = centers.size();
    if (sigmas.size() != n) throw DomainError("renormalized_phi: one offset per center required");
    Eigen::MatrixXd out(n, n);
    const double trace = subtracted_trace(M, E, m);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0 / lambda_R - sigmas[i] - trace;
        for (std::size_t j = 0; j < i; ++j) {
            const double g = -kernels::free_resolvent_bound(std::abs(centers[i] - centers[j]), E, m);
            out(i, j) = g;
            out(j, i) = g;
        }
    }
    return out;
}

double beta(double lambda_R) { return -lambda_R * lambda_R / pi; }

std::vector<FixedPoint> fixed_points() { return {{0.0, "ultraviolet"}}; }

double flow(double lambda_R, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("flow: alpha must be positive");
    const double denom = 1.0 + (lambda_R / pi) * std::log(alpha);
    if (!(denom > 0.0)) {
        // the denominator decreases through zero between 1 and alpha
        throw PoleError("flow: coupling passes a pole before reaching alpha", std::exp(-pi / lambda_R));
    }
    return lambda_R / denom;
}

double running_coupling_massless(double M, double binding) {
    if (!(M > 0.0)) throw DomainError("massless coupling: M must be positive");
    if (!(binding < 0.0)) throw DomainError("massless coupling: binding must be negative");
    const double l = std::log(-M / binding);
    if (l == 0.0) throw PoleError("massless coupling: M = -E_B is a pole", 1.0);
    return pi / l;
}

double beta_massless(double M, double binding) {
    const double lam = running_coupling_massless(M, binding);
    return -lam * lam / pi;
}

}  // namespace salpeter::rg
