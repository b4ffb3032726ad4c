#include "salpeter/scatter.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "salpeter/errors.hpp"
#include "salpeter/kernels.hpp"
#include "salpeter/parallel.hpp"
#include "salpeter/roots.hpp"
#include "salpeter/specfun.hpp"
#include "salpeter/spectrum.hpp"

namespace salpeter::scatter {

namespace {

using cd = std::complex<double>;
using specfun::pi;

Eigen::MatrixXcd inverse_checked(const Eigen::MatrixXcd& phi, double k) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(phi);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) throw NumericalFailure("principal matrix is singular at real k", k, k);
    return lu.inverse();
}

ScatteringPoint amplitudes(const Eigen::MatrixXcd& inv, const std::vector<double>& a, double k, cd pref) {
    cd rsum = 0.0, tsum = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rsum += inv(i, j) * std::polar(1.0, k * (a[i] + a[j]));
            tsum += inv(i, j) * std::polar(1.0, k * (a[j] - a[i]));
        }
    ScatteringPoint p;
    p.k = k;
    p.r = pref * rsum;
    p.t = 1.0 + pref * tsum;
    p.R = std::norm(p.r);
    p.T = std::norm(p.t);
    p.delta = 0.5 * std::arg(p.r + p.t);
    return p;
}

Eigen::MatrixXcd scatter_matrix(const ModelConfig& cfg, double k, OffDiagonal offdiag) {
    if (cfg.massless()) {
        if (offdiag == OffDiagonal::asymptotic)
            throw RegimeError("asymptotic off-diagonal is defined for m > 0 only");
        return principal::phi_massless_scatter(cfg, k).entries;
    }
    return principal::phi_scatter(cfg, k, offdiag).entries;
}

cd prefactor(const ModelConfig& cfg, double k) {
    return cfg.massless() ? cd(0.0, 1.0) : cd(0.0, std::hypot(k, cfg.mass) / k);
}

}  // namespace

ScatteringPoint scatter_point(const ModelConfig& cfg, double k, OffDiagonal offdiag) {
    cfg.validate();
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scatter_point: k must be positive");
    const Eigen::MatrixXcd inv = inverse_checked(scatter_matrix(cfg, k, offdiag), k);
    return amplitudes(inv, cfg.centers, k, prefactor(cfg, k));
}

ScatteringPoint scatter_point_nonrel(double m, const std::vector<double>& centers,
                                     const std::vector<double>& inverse_couplings, double k) {
    const auto phi = principal::phi_nonrel_scatter(m, centers, inverse_couplings, k);
    return amplitudes(inverse_checked(phi.entries, k), centers, k, cd(0.0, m / k));
}

void unwrap_phase(std::vector<ScatteringPoint>& pts) {
    if (pts.empty()) return;
    // start on the branch (0, pi]
    double d0 = pts.front().delta;
    while (d0 <= 0.0) d0 += pi;
    while (d0 > pi) d0 -= pi;
    pts.front().delta = d0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double prev = pts[i - 1].delta;
        double d = pts[i].delta;
        d += pi * std::round((prev - d) / pi);
        pts[i].delta = d;
    }
}

std::vector<ScatteringPoint> phase_shift_sweep(const ModelConfig& cfg, const std::vector<double>& ks,
                                               OffDiagonal offdiag, int threads) {
    cfg.validate();
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(ks[i] > 0.0)) throw DomainError("phase_shift_sweep: k must be positive");
        if (i > 0 && !(ks[i] > ks[i - 1])) throw DomainError("phase_shift_sweep: grid must increase");
    }
    std::vector<ScatteringPoint> out(ks.size());
    parallel_for(ks.size(), threads, [&](std::size_t i) { out[i] = scatter_point(cfg, ks[i], offdiag); });
    unwrap_phase(out);
    return out;
}

std::complex<double> scatter_wavefunction(const ModelConfig& cfg, double k, double x) {
    cfg.validate();
    const Eigen::MatrixXcd inv = inverse_checked(scatter_matrix(cfg, k, OffDiagonal::exact), k);
    const std::size_t n = cfg.size();
    cd psi = std::polar(1.0, k * x);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(x - cfg.centers[i]);
        if (r == 0.0) throw SingularityError("scattering wave function diverges at a center");
        const cd g = kernels::free_resolvent_scatter(r, k, cfg.mass);
        cd s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += inv(i, j) * std::polar(1.0, k * cfg.centers[j]);
        psi += g * s;
    }
    return psi;
}

double probability_current(const ModelConfig& cfg, double k, double x) {
    const double h = 1e-4 / std::max(k, cfg.scale());
    const cd psi = scatter_wavefunction(cfg, k, x);
    const cd dpsi = (scatter_wavefunction(cfg, k, x + h) - scatter_wavefunction(cfg, k, x - h)) / (2.0 * h);
    return std::imag(std::conj(psi) * dpsi) / std::hypot(k, cfg.mass);
}

ModelConfig twin_config(double mass, double separation, double binding) {
    ModelConfig c;
    c.mass = mass;
    c.centers = {-0.5 * separation, 0.5 * separation};
    c.bindings = {binding, binding};
    return c;
}

double twin_threshold_separation(double mass, double binding, double lo, double hi) {
    auto second = [&](double d) {
        const ModelConfig c = twin_config(mass, d, binding);
        return spectrum::eigenvalues(c, spectrum::search_ceiling(c))(1);
    };
    return roots::brent(second, lo, hi, 1e-12 * (hi - lo)).x;
}

AnomalyResult anomaly_scan(double mass, double binding, double k_probe, const std::vector<double>& separations,
                           OffDiagonal offdiag, int threads) {
    if (!(mass > 0.0)) throw RegimeError("anomaly_scan: needs m > 0");
    if (separations.size() < 3) throw DomainError("anomaly_scan: need at least three separations");
    for (std::size_t i = 0; i < separations.size(); ++i) {
        if (!(separations[i] > 0.0)) throw DomainError("anomaly_scan: separations must be positive");
        if (i > 0 && !(separations[i] > separations[i - 1]))
            throw DomainError("anomaly_scan: separation grid must increase");
    }
    AnomalyResult res;
    res.separations = separations;
    res.reflection.resize(separations.size());
    auto refl = [&](double d) { return scatter_point(twin_config(mass, d, binding), k_probe, offdiag).R; };
    parallel_for(separations.size(), threads, [&](std::size_t i) { res.reflection[i] = refl(separations[i]); });

    const auto it = std::min_element(res.reflection.begin(), res.reflection.end());
    const std::size_t i = std::size_t(it - res.reflection.begin());
    const double lo = separations[i == 0 ? 0 : i - 1];
    const double hi = separations[std::min(i + 1, separations.size() - 1)];
    const auto mn = roots::golden_section(refl, lo, hi, 1e-9 * std::max(1.0, hi));
    if (mn.fx < *it) {
        res.dip_location = mn.x;
        res.dip_depth = mn.fx;
    } else {
        res.dip_location = separations[i];
        res.dip_depth = *it;
    }
    res.present = res.dip_depth < 0.1;

    auto second = [&](double d) {
        const ModelConfig c = twin_config(mass, d, binding);
        return spectrum::eigenvalues(c, spectrum::search_ceiling(c))(1);
    };
    const double s_lo = second(separations.front());
    const double s_hi = second(separations.back());
    if ((s_lo > 0.0) != (s_hi > 0.0)) {
        const double span = separations.back() - separations.front();
        res.critical_separation =
            roots::brent(second, separations.front(), separations.back(), s_lo, s_hi, 1e-12 * span).x;
        res.critical_found = true;
    }
    return res;
}

ModelConfig chain_config(int n, double mass, double spacing, double binding) {
    if (n < 1) throw DomainError("chain_config: need at least one center");
    if (!(spacing > 0.0)) throw DomainError("chain_config: spacing must be positive");
    ModelConfig c;
    c.mass = mass;
    for (int j = 0; j < n; ++j) {
        c.centers.push_back((j - 0.5 * (n - 1)) * spacing);
        c.bindings.push_back(binding);
    }
    return c;
}

GapSummary gap_metric(int n, const std::vector<ScatteringPoint>& pts, double lo, double hi) {
    GapSummary g;
    g.n = n;
    g.window_lo = lo;
    g.window_hi = hi;
    bool any = false;
    for (const auto& p : pts) {
        g.max_flux_error = std::max(g.max_flux_error, std::abs(p.R + p.T - 1.0));
        if (p.k < lo || p.k > hi) continue;
        if (!any || p.T < g.min_T) {
            g.min_T = p.T;
            g.k_at_min = p.k;
            any = true;
        }
    }
    if (!any) throw DomainError("gap_metric: no grid point inside the window");
    return g;
}

}  // namespace salpeter::scatter
