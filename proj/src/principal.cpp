#include "salpeter/principal.hpp"

#include <cmath>

#include "salpeter/errors.hpp"
#include "salpeter/kernels.hpp"
#include "salpeter/specfun.hpp"

namespace salpeter {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::massive_bound: return "massive-bound";
        case Regime::massive_scatter: return "massive-scatter";
        case Regime::massless_bound: return "massless-bound";
        case Regime::massless_scatter: return "massless-scatter";
        case Regime::nonrel_bound: return "nonrel-bound";
        case Regime::nonrel_scatter: return "nonrel-scatter";
    }
    return "?";
}

namespace principal {

namespace {

using specfun::pi;
using cd = std::complex<double>;

void require_massive(const ModelConfig& cfg, const char* who) {
    if (cfg.massless()) throw RegimeError(std::string(who) + ": m = 0, use the massless routines");
}

void require_massless(const ModelConfig& cfg, const char* who) {
    if (!cfg.massless()) throw RegimeError(std::string(who) + ": requires m = 0");
}

void require_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scattering requires finite k > 0");
}

}  // namespace

double diag_closed_form(double x, double m) {
    if (!(m > 0.0)) throw RegimeError("diag_closed_form: needs m > 0");
    if (!(x < m)) throw DomainError("diag_closed_form: requires x < m");
    return x / (pi * m) * specfun::arc_ratio(1.0 + x / m);
}

double diag_closed_form_deriv(double x, double m) {
    if (!(m > 0.0)) throw RegimeError("diag_closed_form_deriv: needs m > 0");
    if (!(x < m)) throw DomainError("diag_closed_form_deriv: requires x < m");
    const double u = 1.0 + x / m;
    return (specfun::arc_ratio(u) + (x / m) * specfun::arc_ratio_deriv(u)) / (pi * m);
}

double inverse_running_coupling(double k, double binding, double m) {
    require_k(k);
    const double q = k / m;
    // E_k/(pi k) artanh(k/E_k) written through asinh(k/m), finite as k -> 0
    const double kinetic = std::sqrt(1.0 + q * q) * (std::asinh(q) / q) / pi;
    return -(kinetic + diag_closed_form(binding, m));
}

PrincipalMatrix phi_bound(const ModelConfig& cfg, double E) {
    require_massive(cfg, "phi_bound");
    const double m = cfg.mass;
    if (!(E < m)) throw DomainError("phi_bound: requires E < m");
    const std::size_t n = cfg.size();
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::massive_bound, E, 0.0};
    const double fe = diag_closed_form(E, m);
    for (std::size_t i = 0; i < n; ++i) {
        out.entries(i, i) = diag_closed_form(cfg.bindings[i], m) - fe;
        for (std::size_t j = 0; j < i; ++j) {
            const double g = -kernels::free_resolvent_bound(std::abs(cfg.centers[i] - cfg.centers[j]), E, m);
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

PrincipalMatrix phi_scatter(const ModelConfig& cfg, double k, OffDiagonal offdiag) {
    require_massive(cfg, "phi_scatter");
    require_k(k);
    const double m = cfg.mass;
    const std::size_t n = cfg.size();
    const double ek = std::hypot(k, m);
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::massive_scatter, ek, k};
    const cd absorptive(0.0, -ek / k);
    for (std::size_t i = 0; i < n; ++i) {
        out.entries(i, i) = -inverse_running_coupling(k, cfg.bindings[i], m) + absorptive;
        for (std::size_t j = 0; j < i; ++j) {
            const double d = std::abs(cfg.centers[i] - cfg.centers[j]);
            const cd g = offdiag == OffDiagonal::exact ? -kernels::free_resolvent_scatter(d, k, m)
                                                       : phi_offdiag_asymptotic(d, k, m);
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

PrincipalMatrix phi_massless(const ModelConfig& cfg, double E) {
    require_massless(cfg, "phi_massless");
    if (!(E < 0.0)) throw DomainError("phi_massless: bound regime requires E < 0");
    const std::size_t n = cfg.size();
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::massless_bound, E, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        out.entries(i, i) = std::log(E / cfg.bindings[i]) / pi;
        for (std::size_t j = 0; j < i; ++j) {
            const double d = std::abs(cfg.centers[i] - cfg.centers[j]);
            const double g = -kernels::massless_damped(-E * d);
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

PrincipalMatrix phi_massless_scatter(const ModelConfig& cfg, double k) {
    require_massless(cfg, "phi_massless_scatter");
    require_k(k);
    const std::size_t n = cfg.size();
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::massless_scatter, k, k};
    for (std::size_t i = 0; i < n; ++i) {
        // continuation of ln(E/E_B)/pi to E = k + i0 gives -i on the physical sheet
        out.entries(i, i) = cd(std::log(k / std::abs(cfg.bindings[i])) / pi, -1.0);
        for (std::size_t j = 0; j < i; ++j) {
            const double d = std::abs(cfg.centers[i] - cfg.centers[j]);
            const cd g = -kernels::free_resolvent_scatter(d, k, 0.0);
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

Eigen::MatrixXd phi_real(const ModelConfig& cfg, double E) {
    const PrincipalMatrix p = cfg.massless() ? phi_massless(cfg, E) : phi_bound(cfg, E);
    return p.entries.real();
}

Eigen::MatrixXd phi_derivative(const ModelConfig& cfg, double E) {
    const double m = cfg.mass;
    if (cfg.massless()) {
        if (!(E < 0.0)) throw DomainError("phi_derivative: massless bound regime requires E < 0");
    } else if (!(E < m)) {
        throw DomainError("phi_derivative: requires E < m");
    }
    const std::size_t n = cfg.size();
    Eigen::MatrixXd out(n, n);
    const double diag = cfg.massless() ? 1.0 / (pi * E) : -diag_closed_form_deriv(E, m);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = diag;
        for (std::size_t j = 0; j < i; ++j) {
            const double d = std::abs(cfg.centers[i] - cfg.centers[j]);
            const double g = -kernels::free_resolvent_bound_deriv(d, E, m);
            out(i, j) = g;
            out(j, i) = g;
        }
    }
    return out;
}

std::complex<double> phi_offdiag_asymptotic(double d, double k, double m) {
    require_k(k);
    if (!(m > 0.0)) throw RegimeError("phi_offdiag_asymptotic: needs m > 0");
    if (!(d > 0.0)) throw DomainError("phi_offdiag_asymptotic: separation must be positive");
    const double ratio = std::hypot(k, m) / k;
    const cd osc = cd(0.0, ratio) * std::polar(1.0, k * d);
    return -(osc + kernels::damped_scatter_term_asymptotic(d, k, m));
}

PrincipalMatrix phi_nonrel_bound(double m, const std::vector<double>& centers,
                                 const std::vector<double>& inverse_couplings, double E) {
    if (!(m > 0.0)) throw RegimeError("phi_nonrel_bound: needs m > 0");
    if (!(E < 0.0)) throw DomainError("phi_nonrel_bound: requires E < 0 (measured from m)");
    if (centers.size() != inverse_couplings.size()) throw DomainError("phi_nonrel_bound: size mismatch");
    const std::size_t n = centers.size();
    const double kappa = std::sqrt(-2.0 * m * E);
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::nonrel_bound, E, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        out.entries(i, i) = inverse_couplings[i] - m / kappa;
        for (std::size_t j = 0; j < i; ++j) {
            const double g = -(m / kappa) * std::exp(-kappa * std::abs(centers[i] - centers[j]));
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

PrincipalMatrix phi_nonrel_scatter(double m, const std::vector<double>& centers,
                                   const std::vector<double>& inverse_couplings, double k) {
    if (!(m > 0.0)) throw RegimeError("phi_nonrel_scatter: needs m > 0");
    require_k(k);
    if (centers.size() != inverse_couplings.size()) throw DomainError("phi_nonrel_scatter: size mismatch");
    const std::size_t n = centers.size();
    PrincipalMatrix out{Eigen::MatrixXcd::Zero(n, n), Regime::nonrel_scatter, 0.5 * k * k / m, k};
    const cd pref(0.0, m / k);
    for (std::size_t i = 0; i < n; ++i) {
        out.entries(i, i) = inverse_couplings[i] - pref;
        for (std::size_t j = 0; j < i; ++j) {
            const cd g = -pref * std::polar(1.0, k * std::abs(centers[i] - centers[j]));
            out.entries(i, j) = g;
            out.entries(j, i) = g;
        }
    }
    return out;
}

std::vector<double> nonrel_inverse_couplings(const ModelConfig& cfg) {
    require_massive(cfg, "nonrel_inverse_couplings");
    const double m = cfg.mass;
    std::vector<double> out;
    for (double eb : cfg.bindings) {
        const double shift = eb - m;
        if (!(shift < 0.0)) throw DomainError("nonrel_inverse_couplings: needs E_B < m");
        out.push_back(m / std::sqrt(-2.0 * m * shift));
    }
    return out;
}

}  // namespace principal
}  // namespace salpeter
