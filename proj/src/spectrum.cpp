#include "salpeter/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "salpeter/errors.hpp"
#include "salpeter/kernels.hpp"
#include "salpeter/principal.hpp"
#include "salpeter/quadrature.hpp"
#include "salpeter/roots.hpp"
#include "salpeter/specfun.hpp"

namespace salpeter::spectrum {

namespace {

using specfun::pi;

// Sign convention for eigenvectors: component sum positive, falling back to the
// largest component when the sum vanishes (odd states of symmetric configurations).
void fix_phase(Eigen::Ref<Eigen::VectorXd> v) {
    const double s = v.sum();
    if (std::abs(s) > 1e-12 * v.cwiseAbs().sum()) {
        if (s < 0.0) v = -v;
        return;
    }
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v(idx) < 0.0) v = -v;
}

double psi_raw(const ModelConfig& cfg, const BoundState& st, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const double r = std::abs(x - cfg.centers[i]);
        if (r == 0.0) throw SingularityError("bound wave function diverges at a center");
        s += st.vector(i) * kernels::free_resolvent_bound(r, st.energy, cfg.mass);
    }
    return s;
}

// Same sum evaluated at a_j + offset; the distance to a_j is taken as |offset|
// so that tiny offsets are not lost to rounding of a_j + offset.
double psi_raw_near(const ModelConfig& cfg, const BoundState& st, std::size_t j, double offset) {
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const double r = i == j ? std::abs(offset) : std::abs(cfg.centers[j] + offset - cfg.centers[i]);
        if (r == 0.0) throw SingularityError("bound wave function diverges at a center");
        s += st.vector(i) * kernels::free_resolvent_bound(r, st.energy, cfg.mass);
    }
    return s;
}

// Spatial decay rate of the free resolvent at energy E.
double decay_rate(const ModelConfig& cfg, double E) {
    if (cfg.massless()) return -E;
    const double m = cfg.mass;
    if (E > 0.0) return std::sqrt((m - E) * (m + E));
    return m;
}

}  // namespace

EigenFlowSample eigen_flow(const ModelConfig& cfg, double E) {
    const Eigen::MatrixXd phi = principal::phi_real(cfg, E);
    const Eigen::MatrixXd dphi = principal::phi_derivative(cfg, E);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
    if (es.info() != Eigen::Success) throw NumericalFailure("eigen_flow: eigensolver failed", E, E);
    EigenFlowSample out;
    out.energy = E;
    out.omegas = es.eigenvalues();
    out.vectors = es.eigenvectors();
    const Eigen::Index n = out.omegas.size();
    const double scale = std::max(1.0, out.omegas.cwiseAbs().maxCoeff());
    // Within (near-)degenerate blocks the Feynman-Hellmann derivative is only
    // well defined after diagonalizing dPhi/dE inside the block.
    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && out.omegas(end) - out.omegas(end - 1) < 1e-12 * scale) ++end;
        const Eigen::Index len = end - start;
        if (len > 1) {
            const Eigen::MatrixXd block = out.vectors.middleCols(start, len);
            const Eigen::MatrixXd sub = block.transpose() * dphi * block;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bs(sub);
            out.vectors.middleCols(start, len) = block * bs.eigenvectors();
        }
        start = end;
    }
    out.domegas.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        fix_phase(out.vectors.col(k));
        out.domegas(k) = out.vectors.col(k).dot(dphi * out.vectors.col(k));
    }
    return out;
}

Eigen::VectorXd eigenvalues(const ModelConfig& cfg, double E) {
    const Eigen::MatrixXd phi = principal::phi_real(cfg, E);
    if (phi.rows() == 1) return phi.diagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver failed", E, E);
    return es.eigenvalues();
}

double gershgorin_lower_bound(const ModelConfig& cfg) {
    cfg.validate();
    const double mu = cfg.min_binding();
    const std::size_t n = cfg.size();
    if (n == 1) return mu;
    const double m = cfg.mass;
    const double d = cfg.min_separation();
    const double c = 1.0 / (pi * d * d) + m / (2.0 * pi * d);
    const double x = 2.0 * pi * double(n - 1) * c;
    const double gap = m - mu;
    return m - std::sqrt(x / specfun::lambert_w0(x / (gap * gap)));
}

double search_ceiling(const ModelConfig& cfg) {
    if (cfg.massless()) return -1e-12 * cfg.scale();
    return cfg.mass * (1.0 - 1e-8);
}

int count_bound_states(const ModelConfig& cfg) {
    cfg.validate();
    const Eigen::VectorXd w = eigenvalues(cfg, search_ceiling(cfg));
    return int((w.array() < 0.0).count());
}

std::vector<BoundState> find_bound_states(const ModelConfig& cfg, BoundSearchOptions opts) {
    cfg.validate();
    const double s = cfg.scale();
    const double top = search_ceiling(cfg);
    const double floor = opts.energy_floor ? *opts.energy_floor : gershgorin_lower_bound(cfg) - s;
    if (!(floor < top)) throw DomainError("find_bound_states: energy floor must lie below the ceiling");
    if (!(opts.tol > 0.0)) throw DomainError("find_bound_states: tolerance must be positive");

    const Eigen::VectorXd w_top = eigenvalues(cfg, top);
    const Eigen::VectorXd w_floor = eigenvalues(cfg, floor);
    if (!(w_floor.minCoeff() > 0.0))
        throw DomainError("find_bound_states: energy floor is not below the Gershgorin bound");

    const int count = int((w_top.array() < 0.0).count());
    // independent parity check through the LU determinant
    const double det_top = principal::phi_real(cfg, top).partialPivLu().determinant();
    if ((det_top < 0.0) != (count % 2 == 1))
        throw NumericalFailure("bound-state count disagrees with sign of det Phi", floor, top);

    std::vector<BoundState> states;
    for (int k = 0; k < count; ++k) {
        auto branch = [&](double E) { return eigenvalues(cfg, E)(k); };
        const auto root = roots::brent(branch, floor, top, w_floor(k), w_top(k), opts.tol * s);
        const EigenFlowSample flow = eigen_flow(cfg, root.x);
        BoundState st;
        st.energy = root.x;
        st.cls = classify(root.x, cfg.mass);
        st.threshold = !cfg.massless() && cfg.mass - root.x <= 1e-8 * cfg.mass * (1.0 + 1e-6);
        st.branch = k;
        st.vector = flow.vectors.col(k);
        st.slope = flow.domegas(k);
        if (!(st.slope < 0.0))
            throw NumericalFailure("non-negative eigenvalue slope at a bound state", root.x, root.x);
        states.push_back(std::move(st));
    }
    std::sort(states.begin(), states.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return states;
}

double bound_wavefunction(const ModelConfig& cfg, const BoundState& state, double x) {
    return state.norm_const * psi_raw(cfg, state, x) / std::sqrt(-state.slope);
}

double residue_norm_integral(const ModelConfig& cfg, const BoundState& state) {
    std::vector<std::size_t> order(cfg.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cfg.centers[a] < cfg.centers[b]; });
    const double kappa = decay_rate(cfg, state.energy);
    const quad::Tolerance tol{1e-300, 1e-11, 20000};
    auto sq = [&](double x) {
        const double p = psi_raw(cfg, state, x);
        return p * p;
    };
    // log substitution r = h e^{-s} resolves the logarithmic peak at a center
    auto near_center = [&](std::size_t j, double dir, double h) {
        auto g = [&](double s) {
            const double r = h * std::exp(-s);
            const double p = psi_raw_near(cfg, state, j, dir * r);
            return p * p * r;
        };
        return quad::integrate(g, {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}, tol).value;
    };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const double h = 0.5 * (cfg.centers[order[k + 1]] - cfg.centers[order[k]]);
        total += near_center(order[k], 1.0, h) + near_center(order[k + 1], -1.0, h);
    }
    const double lo = cfg.centers[order.front()], hi = cfg.centers[order.back()];
    const double h0 = 1.0 / std::max(kappa, cfg.scale());
    const double len = 1.0 / kappa;
    total += near_center(order.back(), 1.0, h0) + near_center(order.front(), -1.0, h0);
    total += quad::integrate_to_infinity(sq, hi + h0, len, tol).value;
    total += quad::integrate_to_infinity([&](double y) { return sq(-y); }, -(lo - h0), len, tol).value;
    return total / (-state.slope);
}

void normalize_state(const ModelConfig& cfg, BoundState& state) {
    state.norm_const = 1.0 / std::sqrt(residue_norm_integral(cfg, state));
}

double wavefunction_pointwise_bound(const ModelConfig& cfg, const BoundState& state, double x) {
    const double m = cfg.mass;
    if (!(m > 0.0)) throw RegimeError("pointwise bound needs m > 0");
    const double gap = m / std::sqrt(2.0) - state.energy;
    if (!(gap > 0.0)) throw DomainError("pointwise bound needs energy < m/sqrt(2)");
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const double r = std::abs(x - cfg.centers[i]);
        if (r == 0.0) throw SingularityError("pointwise bound diverges at a center");
        s += std::abs(state.vector(i)) * m / (pi * r * gap * gap) * (1.0 / (m * r) + 0.5) *
             std::exp(-m * r / std::sqrt(2.0));
    }
    return state.norm_const * s / std::sqrt(-state.slope);
}

PositivityReport check_ground_positivity(const ModelConfig& cfg) {
    const auto states = find_bound_states(cfg);
    if (states.empty()) throw NumericalFailure("no ground state found");
    const BoundState& g = states.front();
    const EigenFlowSample flow = eigen_flow(cfg, g.energy);
    Eigen::VectorXd v = flow.vectors.col(0);
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (v(idx) < 0.0) v = -v;
    PositivityReport rep;
    rep.energy = g.energy;
    rep.vector = v;
    rep.min_component = v.minCoeff();
    rep.positive = rep.min_component > 0.0;
    rep.gap = flow.omegas.size() > 1 ? flow.omegas(1) - flow.omegas(0)
                                     : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace salpeter::spectrum
