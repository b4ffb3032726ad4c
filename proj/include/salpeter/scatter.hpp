#pragma once

#include <complex>
#include <vector>

#include "salpeter/model.hpp"
#include "salpeter/principal.hpp"

namespace salpeter {

struct ScatteringPoint {
    double k = 0.0;
    std::complex<double> r;
    std::complex<double> t;
    double R = 0.0;
    double T = 0.0;
    double delta = 0.0;  // arg(r + t)/2; unwrapped along sweeps
};

namespace scatter {

ScatteringPoint scatter_point(const ModelConfig& cfg, double k, OffDiagonal offdiag = OffDiagonal::exact);

// Nonrelativistic counterpart built from phi_nonrel_scatter.
ScatteringPoint scatter_point_nonrel(double m, const std::vector<double>& centers,
                                     const std::vector<double>& inverse_couplings, double k);

// Strictly increasing k grid; points may be evaluated on `threads` workers,
// the phase is unwrapped afterwards so that delta(k_min) lies in (0, pi].
std::vector<ScatteringPoint> phase_shift_sweep(const ModelConfig& cfg, const std::vector<double>& ks,
                                               OffDiagonal offdiag = OffDiagonal::exact,
                                               int threads = 1);

void unwrap_phase(std::vector<ScatteringPoint>& pts);

std::complex<double> scatter_wavefunction(const ModelConfig& cfg, double k, double x);

// Heuristic flux Im(psi* psi')/E_k from a central difference.
double probability_current(const ModelConfig& cfg, double k, double x);

// Twin configuration with centers at -+ d/2 (d = separation).
ModelConfig twin_config(double mass, double separation, double binding);

struct AnomalyResult {
    std::vector<double> separations;  // 2a values (times m for m = 1 inputs)
    std::vector<double> reflection;
    double dip_location = 0.0;
    double dip_depth = 1.0;
    bool present = false;       // depth < 0.1
    double critical_separation = 0.0;  // where the second bound state reaches the threshold
    bool critical_found = false;
};

// Reflection of a symmetric twin pair at fixed probe momentum along a grid of
// separations, with golden-section refinement of the minimum.
AnomalyResult anomaly_scan(double mass, double binding, double k_probe,
                           const std::vector<double>& separations,
                           OffDiagonal offdiag = OffDiagonal::exact, int threads = 1);

// Separation at which the second eigenvalue of the twin pair vanishes at the
// search ceiling, bracketed in [lo, hi].
double twin_threshold_separation(double mass, double binding, double lo, double hi);

ModelConfig chain_config(int n, double mass, double spacing, double binding);

struct GapSummary {
    int n = 0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double min_T = 1.0;
    double k_at_min = 0.0;
    double max_flux_error = 0.0;
};

GapSummary gap_metric(int n, const std::vector<ScatteringPoint>& pts, double lo, double hi);

}  // namespace scatter
}  // namespace salpeter
