#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "salpeter/model.hpp"

namespace salpeter {

enum class Regime {
    massive_bound,
    massive_scatter,
    massless_bound,
    massless_scatter,
    nonrel_bound,
    nonrel_scatter,
};

const char* to_string(Regime r);

struct PrincipalMatrix {
    Eigen::MatrixXcd entries;
    Regime regime;
    double energy = 0.0;    // real energy for bound regimes, E_k for scattering
    double momentum = 0.0;  // k for scattering regimes (approached as E_k + i0)
};

// Which damped off-diagonal term to use in scattering matrices.
enum class OffDiagonal { exact, asymptotic };

namespace principal {

// Single-center closed form: F(x) = x/(pi sqrt(m^2-x^2)) (pi/2 + arcsin(x/m)), x < m,
// so that the diagonal entry is F(E_B) - F(E).
double diag_closed_form(double x, double m);
double diag_closed_form_deriv(double x, double m);

// 1/lambda(E_k, E_B) of the energy-dependent running coupling (m > 0).
double inverse_running_coupling(double k, double binding, double m);

PrincipalMatrix phi_bound(const ModelConfig& cfg, double E);
PrincipalMatrix phi_scatter(const ModelConfig& cfg, double k,
                            OffDiagonal offdiag = OffDiagonal::exact);
PrincipalMatrix phi_massless(const ModelConfig& cfg, double E);
PrincipalMatrix phi_massless_scatter(const ModelConfig& cfg, double k);

// Real symmetric bound-regime matrix for either m > 0 or m = 0.
Eigen::MatrixXd phi_real(const ModelConfig& cfg, double E);

// dPhi/dE in the bound regime (m >= 0); every entry is negative.
Eigen::MatrixXd phi_derivative(const ModelConfig& cfg, double E);

// Off-diagonal scattering entry with the damped integral replaced by its
// large-(m d) expansion; the oscillating term is kept exactly.
std::complex<double> phi_offdiag_asymptotic(double d, double k, double m);

// Nonrelativistic limit measured from the rest energy: E here is E - m < 0 for
// bound states, k > 0 for scattering; inverse_couplings holds 1/lambda_i > 0.
PrincipalMatrix phi_nonrel_bound(double m, const std::vector<double>& centers,
                                 const std::vector<double>& inverse_couplings, double E);
PrincipalMatrix phi_nonrel_scatter(double m, const std::vector<double>& centers,
                                   const std::vector<double>& inverse_couplings, double k);

// 1/lambda_i = m / sqrt(-2 m (E_B^i - m)) so that the single-center root is at E_B^i.
std::vector<double> nonrel_inverse_couplings(const ModelConfig& cfg);

}  // namespace principal
}  // namespace salpeter
