#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace salpeter::rg {

// Subtracted heat-kernel trace
//   I(M, E; m) = int_0^inf dt [ (m/pi) K1(m t) e^{t E} - e^{-M t}/(pi t) ],  E < m, M > 0.
double subtracted_trace(double M, double E, double m);

// 1/lambda_R(M) = I(M, E_B_ref; m) + sigma.
double inverse_running_coupling(double M, double binding_ref, double m, double sigma = 0.0);
double running_coupling(double M, double binding_ref, double m, double sigma = 0.0);

// Offset that lets center i share the coupling defined by the reference center:
// sigma_i = I(M, E_B^ref) - I(M, E_B^i), independent of M.
double sigma_offset(double binding_ref, double binding_i, double m);

// Renormalized principal matrix at energy E for scale M and coupling lambda_R:
// diagonal 1/lambda_R - sigma_i - I(M, E; m), off-diagonal -G(d_ij; E).
Eigen::MatrixXd renormalized_phi(double M, double lambda_R, const std::vector<double>& sigmas,
                                 const std::vector<double>& centers, double E, double m);

double beta(double lambda_R);

struct FixedPoint {
    double lambda_R;
    std::string kind;
};
std::vector<FixedPoint> fixed_points();

// lambda_R(alpha M) from lambda_R(M); throws PoleError when the flow passes a pole.
double flow(double lambda_R, double alpha);

double running_coupling_massless(double M, double binding);
double beta_massless(double M, double binding);

}  // namespace salpeter::rg
