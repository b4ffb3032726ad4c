#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "oracles.hpp"
#include "salpeter/errors.hpp"
#include "salpeter/principal.hpp"
#include "salpeter/rgflow.hpp"
#include "salpeter/specfun.hpp"

using namespace salpeter;
using specfun::pi;

namespace {

// Subtracted trace straight from its definition; the leading 1/t pieces cancel
// and the integrand tends to (E + M)/pi, which is used very close to t = 0.
double trace_oracle(double M, double E, double m) {
    const double cut = 1e-7 / std::max({m, M, std::abs(E)});
    auto f = [&](double t) {
        if (t < cut) return (E + M) / pi;
        return std::exp(std::log(m / pi) + oracle::log_k1(m * t) + t * E) - std::exp(-M * t) / (pi * t);
    };
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double t0 = 1.0 / std::max(m, M);
    double near = 0.0;
    for (double a = 0.0, b = t0 * 1e-6; b <= t0 * 1.0000001; a = b, b *= 10.0) near += gk::integrate(f, a, b, 15, 1e-14);
    boost::math::quadrature::exp_sinh<double> es;
    return near + es.integrate([&](double s) { return f(t0 + s); }, 1e-14);
}

// lambda(alpha) by integrating d lambda / d ln(alpha) = beta(lambda)
double ode_flow(double lam0, double alpha) {
    using namespace boost::numeric::odeint;
    double lam = lam0;
    auto rhs = [](const double& y, double& dy, double) { dy = -y * y / pi; };
    integrate_adaptive(make_controlled<runge_kutta_dopri5<double>>(1e-14, 1e-14), rhs, lam, 0.0, std::log(alpha),
                       1e-3);
    return lam;
}

}  // namespace

TEST_CASE("subtracted trace against direct quadrature") {
    for (double m : {0.5, 1.0, 2.0})
        for (double M : {0.3, 1.0, 10.0, 1e4})
            for (double e : {-3.0, -0.5, 0.0, 0.5, 0.9}) {
                const double E = e * m;
                CHECK(rg::subtracted_trace(M, E, m) == doctest::Approx(trace_oracle(M, E, m)).epsilon(1e-8));
            }
    CHECK_THROWS_AS(rg::subtracted_trace(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(rg::subtracted_trace(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(rg::subtracted_trace(1.0, -1.0, 0.0), RegimeError);
}

TEST_CASE("M dependence is the Frullani logarithm") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ul(-2.0, 6.0), ue(-2.0, 0.9);
    for (int i = 0; i < 20; ++i) {
        const double m1 = std::pow(10.0, ul(rng)), m2 = std::pow(10.0, ul(rng)), eb = ue(rng);
        const double diff = rg::inverse_running_coupling(m2, eb, 1.0) - rg::inverse_running_coupling(m1, eb, 1.0);
        CHECK(std::abs(diff - std::log(m2 / m1) / pi) <= 1e-8);
    }
}

TEST_CASE("sigma offsets: closed form equals the difference of traces, and restores Phi_ii(E_B^i) = 0") {
    for (double M : {0.5, 3.0, 1e3})
        for (double ref : {-1.0, 0.5})
            for (double other : {-2.5, 0.0, 0.3, 0.95}) {
                const double direct = rg::subtracted_trace(M, ref, 1.0) - rg::subtracted_trace(M, other, 1.0);
                CHECK(std::abs(rg::sigma_offset(ref, other, 1.0) - direct) <= 1e-8);
            }
    const double M = 4.0, ref = 0.5, eb2 = -0.3;
    const double lam = rg::running_coupling(M, ref, 1.0);
    const std::vector<double> sig{0.0, rg::sigma_offset(ref, eb2, 1.0)};
    const std::vector<double> centers{0.0, 1.3};
    CHECK(std::abs(rg::renormalized_phi(M, lam, sig, centers, ref, 1.0)(0, 0)) <= 1e-8);
    CHECK(std::abs(rg::renormalized_phi(M, lam, sig, centers, eb2, 1.0)(1, 1)) <= 1e-8);
    // and agrees with the E_B-parametrized matrix at any energy
    const ModelConfig cfg{1.0, centers, {ref, eb2}};
    const Eigen::MatrixXd a = rg::renormalized_phi(M, lam, sig, centers, 0.1, 1.0);
    const Eigen::MatrixXd b = principal::phi_real(cfg, 0.1);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK_THROWS_AS(rg::renormalized_phi(M, lam, {0.0}, centers, 0.1, 1.0), DomainError);
}

TEST_CASE("running coupling decreases logarithmically") {
    double prev = 1e300;
    for (double M = 1.0; M <= 1e16; M *= 10.0) {
        const double lam = rg::running_coupling(M, 0.5, 1.0);
        CHECK(lam > 0.0);
        CHECK(lam < prev);
        prev = lam;
    }
    CHECK(rg::running_coupling(1.0, 0.5, 1.0) == doctest::Approx(1.6514).epsilon(1e-4));
    CHECK(rg::running_coupling(1e6, 0.5, 1.0) == doctest::Approx(0.19987).epsilon(1e-4));
    CHECK(rg::running_coupling(1e14, 0.5, 1.0) < 0.1);
}

TEST_CASE("beta function and fixed points") {
    CHECK(rg::beta(0.0) == 0.0);
    CHECK(rg::beta(pi) == doctest::Approx(-pi).epsilon(1e-15));
    for (double l : {-3.0, -1e-3, 1e-3, 0.5, 7.0}) CHECK(rg::beta(l) < 0.0);
    const auto fp = rg::fixed_points();
    REQUIRE(fp.size() == 1);
    CHECK(fp[0].lambda_R == 0.0);
    CHECK(fp[0].kind == "ultraviolet");
}

TEST_CASE("beta equals M d lambda_R / dM of the quadrature coupling") {
    for (double M : {0.5, 2.0, 50.0, 1e4})
        for (double eb : {-0.7, 0.5}) {
            const double h = 1e-4;
            const double fd = (rg::running_coupling(M * (1 + h), eb, 1.0) - rg::running_coupling(M * (1 - h), eb, 1.0)) /
                              (2 * h);
            const double lam = rg::running_coupling(M, eb, 1.0);
            CHECK(fd == doctest::Approx(rg::beta(lam)).epsilon(1e-6));
        }
}

TEST_CASE("closed-form flow against ODE integration") {
    for (double lam : {0.05, 0.4, 1.6514, 5.0, -0.05})
        for (double alpha : {1.0, 1.5, 10.0, 1e3, 1e6}) {
            const double cf = rg::flow(lam, alpha);
            CHECK(cf == doctest::Approx(ode_flow(lam, alpha)).epsilon(1e-8));
        }
    CHECK(rg::flow(0.7, 1.0) == 0.7);
    // large alpha: pi / ln(alpha)
    CHECK(rg::flow(0.7, 1e200) * std::log(1e200) / pi == doctest::Approx(1.0).epsilon(0.01));
    // consistent with the quadrature coupling
    CHECK(rg::flow(rg::running_coupling(3.0, 0.2, 1.0), 1e5) ==
          doctest::Approx(rg::running_coupling(3e5, 0.2, 1.0)).epsilon(1e-9));
}

TEST_CASE("flow semigroup and poles") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ul(0.01, 3.0), ua(0.0, 6.0);
    for (int i = 0; i < 50; ++i) {
        const double lam = ul(rng), a1 = std::pow(10.0, ua(rng)), a2 = std::pow(10.0, ua(rng));
        CHECK(rg::flow(rg::flow(lam, a1), a2) == doctest::Approx(rg::flow(lam, a1 * a2)).epsilon(1e-12));
    }
    // positive coupling flowing to the infrared reaches the pole at exp(-pi/lambda)
    try {
        rg::flow(1.0, 0.01);
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.critical_alpha == doctest::Approx(std::exp(-pi)).epsilon(1e-14));
    }
    CHECK(rg::flow(1.0, 0.05) > 0.0);
    // negative coupling flowing to the ultraviolet
    CHECK_THROWS_AS(rg::flow(-1.0, 1e3), PoleError);
    CHECK(rg::flow(-1.0, 0.5) < 0.0);
    CHECK_THROWS_AS(rg::flow(1.0, 0.0), DomainError);
}

TEST_CASE("massless coupling and beta") {
    const double eb = -2.0;
    CHECK(rg::beta_massless(-eb * std::exp(1.0), eb) == doctest::Approx(-pi).epsilon(1e-14));
    for (double M : {1e-6, 0.1, 1.0, 3.0, 1e6}) {
        const double lam = rg::running_coupling_massless(M, eb);
        CHECK(rg::beta_massless(M, eb) == -lam * lam / pi);
        CHECK(rg::beta_massless(M, eb) == doctest::Approx(-pi / std::pow(std::log(-M / eb), 2)).epsilon(1e-14));
        // M d lambda / dM
        const double h = 1e-5;
        const double fd = (rg::running_coupling_massless(M * (1 + h), eb) - rg::running_coupling_massless(M * (1 - h), eb)) / (2 * h);
        CHECK(fd == doctest::Approx(rg::beta_massless(M, eb)).epsilon(1e-6));
    }
    CHECK(rg::beta_massless(1e300, eb) > -0.01);
    CHECK(rg::beta_massless(1e-300, eb) > -0.01);
    CHECK_THROWS_AS(rg::running_coupling_massless(2.0, eb), PoleError);
    CHECK_THROWS_AS(rg::running_coupling_massless(1.0, 0.5), DomainError);
}

TEST_CASE("no anomalous scaling of the renormalized matrix") {
    const double M = 5.0, E = 0.2, m = 1.0, lam = 0.8;
    const std::vector<double> sig{0.0, 0.1};
    const std::vector<double> centers{0.0, 1.7};
    const Eigen::MatrixXd base0 = rg::renormalized_phi(M, lam, sig, centers, E, m);
    for (double alpha : {0.5, 2.0, 10.0}) {
        const std::vector<double> shrunk{0.0, 1.7 / alpha};
        const Eigen::MatrixXd scaled = rg::renormalized_phi(M, lam, sig, shrunk, alpha * E, alpha * m);
        const Eigen::MatrixXd base = rg::renormalized_phi(M / alpha, lam, sig, centers, E, m);
        CHECK((scaled - base).cwiseAbs().maxCoeff() <= 1e-6);
        // and the coupling shift it implies is exactly the flow
        CHECK((base - base0)(0, 0) == doctest::Approx(std::log(alpha) / pi).epsilon(1e-8));
    }
}
