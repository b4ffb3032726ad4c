#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "salpeter/model.hpp"

namespace salpeter {

// Eigen-decomposition of the bound-regime principal matrix at one energy.
struct EigenFlowSample {
    double energy = 0.0;
    Eigen::VectorXd omegas;   // ascending
    Eigen::MatrixXd vectors;  // column k belongs to omegas[k]
    Eigen::VectorXd domegas;  // d omega_k / dE (Feynman-Hellmann)
};

struct BoundState {
    double energy = 0.0;
    BoundClass cls = BoundClass::weak;
    bool threshold = false;  // within 1e-8 m of the continuum edge
    int branch = 0;          // index of the eigenvalue branch that vanishes here
    Eigen::VectorXd vector;
    double norm_const = 1.0;  // 1 up to quadrature error; see normalize_state
    double slope = 0.0;       // d omega / dE at the root, < 0
};

struct BoundSearchOptions {
    std::optional<double> energy_floor;  // default: gershgorin_lower_bound - scale
    double tol = 1e-14;                  // root tolerance relative to cfg.scale()
};

namespace spectrum {

EigenFlowSample eigen_flow(const ModelConfig& cfg, double E);

// Sorted eigenvalues only (cheaper, used by root finding).
Eigen::VectorXd eigenvalues(const ModelConfig& cfg, double E);

double gershgorin_lower_bound(const ModelConfig& cfg);

// Highest energy probed for bound states: m(1 - 1e-8), or -1e-12 |E_B^1| when m = 0.
double search_ceiling(const ModelConfig& cfg);

int count_bound_states(const ModelConfig& cfg);

std::vector<BoundState> find_bound_states(const ModelConfig& cfg, BoundSearchOptions opts = {});

// Bound-state wave function; throws SingularityError at a center.
double bound_wavefunction(const ModelConfig& cfg, const BoundState& state, double x);

// Integral of the residue-normalized |psi|^2 over the line; equals 1 analytically.
double residue_norm_integral(const ModelConfig& cfg, const BoundState& state);

// Sets norm_const from residue_norm_integral.
void normalize_state(const ModelConfig& cfg, BoundState& state);

// Exponential envelope that bounds |psi(x)| for m > 0 and energy < m/sqrt(2).
double wavefunction_pointwise_bound(const ModelConfig& cfg, const BoundState& state, double x);

struct PositivityReport {
    bool positive = false;
    double min_component = 0.0;
    double gap = 0.0;  // omega_2 - omega_1 at the ground-state energy (inf for N = 1)
    double energy = 0.0;
    Eigen::VectorXd vector;
};

PositivityReport check_ground_positivity(const ModelConfig& cfg);

}  // namespace spectrum
}  // namespace salpeter
