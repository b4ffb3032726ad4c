#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "salpeter/errors.hpp"
#include "salpeter/kernels.hpp"
#include "salpeter/principal.hpp"
#include "salpeter/roots.hpp"
#include "salpeter/specfun.hpp"

using namespace salpeter;
using specfun::pi;

namespace {

ModelConfig random_config(std::mt19937_64& rng, double mass) {
    std::uniform_int_distribution<int> un(1, 6);
    std::uniform_real_distribution<double> ugap(0.2, 3.0), ueb(-2.0, 0.95);
    ModelConfig c;
    c.mass = mass;
    const int n = un(rng);
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        c.centers.push_back(x);
        x += ugap(rng) / (mass > 0 ? mass : 1.0);
        c.bindings.push_back(mass > 0 ? ueb(rng) * mass : -std::exp(ueb(rng)));
    }
    return c;
}

ModelConfig twin(double m, double d, double eb) {
    ModelConfig c;
    c.mass = m;
    c.centers = {-0.5 * d, 0.5 * d};
    c.bindings = {eb, eb};
    return c;
}

// direct arcsin form of the single-center diagonal function, continued below -m
double diag_direct(double x, double m) {
    if (x < -m) return x / (pi * std::sqrt(x * x - m * m)) * std::acosh(-x / m);
    return x / (pi * std::sqrt(m * m - x * x)) * (pi / 2 + std::asin(x / m));
}

}  // namespace

TEST_CASE("diagonal closed form against the direct arcsin expression") {
    for (double x : {-50.0, -3.0, -0.9, -0.2, 0.0, 1e-6, 0.3, 0.5, 0.9, 0.999})
        CHECK(principal::diag_closed_form(x, 1.0) == doctest::Approx(diag_direct(x, 1.0)).epsilon(1e-13));
    CHECK(principal::diag_closed_form(1.0, 2.0) == doctest::Approx(diag_direct(1.0, 2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(principal::diag_closed_form(1.0, 1.0), DomainError);
}

TEST_CASE("renormalization condition and symmetry over random configs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const ModelConfig c = random_config(rng, trial % 5 == 0 ? 0.0 : 1.0 + 0.1 * (trial % 7));
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double e = c.bindings[i];
            const Eigen::MatrixXd p = principal::phi_real(c, e);
            CHECK(std::abs(p(i, i)) <= 1e-12);
            CHECK(p == p.transpose());
        }
    }
}

TEST_CASE("twin matrix at E = 0.4 against independent quadrature") {
    const ModelConfig c = twin(1.0, 1.0, 0.5);
    const auto p = principal::phi_bound(c, 0.4);
    CHECK(p.regime == Regime::massive_bound);
    CHECK(p.entries(0, 0).imag() == 0.0);
    CHECK(p.entries(0, 0).real() == doctest::Approx(diag_direct(0.5, 1.0) - diag_direct(0.4, 1.0)).epsilon(1e-13));
    CHECK(p.entries(0, 1).real() == doctest::Approx(-oracle::resolvent_time_form(1.0, 0.4, 1.0)).epsilon(1e-8));
    // frozen after the oracle agreement above
    CHECK(p.entries(0, 0).real() == doctest::Approx(0.1095136185224149).epsilon(1e-12));
    CHECK(p.entries(0, 1).real() == doctest::Approx(-0.2570722283828416).epsilon(1e-10));
    CHECK(p.entries(1, 1) == p.entries(0, 0));
    CHECK(p.entries(1, 0) == p.entries(0, 1));
}

TEST_CASE("bound matrix regime checks and threshold divergence") {
    const ModelConfig c = twin(1.0, 1.0, 0.5);
    CHECK(principal::phi_bound(c, 1.0 - 1e-6).entries(0, 0).real() < -100.0);
    CHECK_THROWS_AS(principal::phi_bound(c, 1.0), DomainError);
    CHECK_THROWS_AS(principal::phi_bound(twin(0.0, 1.0, -1.0), -0.5), RegimeError);
    CHECK_THROWS_AS(principal::phi_massless(c, -0.5), RegimeError);
    CHECK_THROWS_AS(principal::phi_massless(twin(0.0, 1.0, -1.0), 0.0), DomainError);
}

TEST_CASE("off-diagonal decay in separation") {
    for (double E : {-1.0, 0.0, 0.5}) {
        double prev = 1e300;
        for (double d = 0.05; d <= 50.0; d *= 1.25) {
            const double v = std::abs(principal::phi_bound(twin(1.0, d, 0.3), E).entries(0, 1).real());
            CHECK(v < prev);
            prev = v;
        }
        CHECK(std::abs(principal::phi_bound(twin(1.0, 50.0, 0.3), E).entries(0, 1)) < 1e-15);
    }
}

TEST_CASE("off-diagonal equals minus the time-integral form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(0.1, 5.0), ue(-2.0, 0.9);
    for (int i = 0; i < 10; ++i) {
        const double d = ud(rng), E = ue(rng);
        const double v = principal::phi_bound(twin(1.0, d, 0.5), E).entries(0, 1).real();
        CHECK(v == doctest::Approx(-oracle::resolvent_time_form(d, E, 1.0)).epsilon(1e-8));
    }
}

TEST_CASE("scattering matrix structure") {
    ModelConfig c;
    c.mass = 1.0;
    c.centers = {0.0, 0.7, 2.1};
    c.bindings = {0.5, -0.3, 0.8};
    const auto p = principal::phi_scatter(c, 0.8);
    CHECK(p.regime == Regime::massive_scatter);
    CHECK(p.momentum == 0.8);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(p.entries(i, j) == p.entries(j, i));
    // common absorptive part on the diagonal
    CHECK(p.entries(0, 0).imag() == doctest::Approx(-std::hypot(0.8, 1.0) / 0.8).epsilon(1e-15));
    CHECK(p.entries(1, 1).imag() == p.entries(0, 0).imag());
    CHECK(std::abs(principal::phi_scatter(c, 1e-3).entries(0, 0).imag()) > 1e3);
    CHECK_THROWS_AS(principal::phi_scatter(c, 0.0), DomainError);
    CHECK_THROWS_AS(principal::phi_scatter(c, -1.0), DomainError);
}

TEST_CASE("running coupling: direct artanh form, small-k limit, asymptotic freedom") {
    for (double k : {1e-3, 0.1, 1.0, 10.0}) {
        const double ek = std::hypot(k, 1.0);
        const double direct = -(ek / (pi * k) * std::atanh(k / ek) + diag_direct(0.5, 1.0));
        CHECK(principal::inverse_running_coupling(k, 0.5, 1.0) == doctest::Approx(direct).epsilon(1e-12));
    }
    // k -> 0: first bracket term tends to 1/pi
    CHECK(principal::inverse_running_coupling(1e-9, 0.5, 1.0) ==
          doctest::Approx(-(1.0 / pi + diag_direct(0.5, 1.0))).epsilon(1e-12));
    double prev = 1e300;
    for (double k = 1.0; k < 1e30; k *= 10.0) {
        const double lam = std::abs(1.0 / principal::inverse_running_coupling(k, 0.5, 1.0));
        CHECK(lam < prev);
        prev = lam;
    }
    // decay is only logarithmic: |lambda| ~ pi / ln(2 E_k / m)
    const double at_1e6 = std::abs(1.0 / principal::inverse_running_coupling(1e6, 0.5, 1.0));
    CHECK(at_1e6 == doctest::Approx(0.19987).epsilon(1e-4));
    CHECK(std::abs(1.0 / principal::inverse_running_coupling(1e30, 0.5, 1.0)) < 0.05);
}

TEST_CASE("massless matrices") {
    const ModelConfig c = twin(0.0, 2.0, -1.0);
    const auto p = principal::phi_massless(c, -1.0);
    CHECK(p.regime == Regime::massless_bound);
    CHECK(p.entries(0, 0).real() == 0.0);
    // omega_2(E -> 0-) -> -(gamma + ln(2 a |E_B|))/pi with a = 1
    const double E = -1e-10;
    const Eigen::MatrixXd pr = principal::phi_real(c, E);
    const double w2 = pr(0, 0) + std::abs(pr(0, 1));
    CHECK(w2 == doctest::Approx(-0.4043690528).epsilon(1e-6));
    CHECK(w2 == doctest::Approx(-(specfun::euler_gamma + std::log(2.0)) / pi).epsilon(1e-8));
    // twin eigenvalues are Phi_11 -/+ |Phi_12| at any E
    for (double e : {-3.0, -1.0, -0.2}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(principal::phi_real(c, e));
        const double d11 = std::log(e / -1.0) / pi, g = kernels::massless_damped(-e * 2.0);
        CHECK(es.eigenvalues()(0) == doctest::Approx(d11 - g).epsilon(1e-13));
        CHECK(es.eigenvalues()(1) == doctest::Approx(d11 + g).epsilon(1e-13));
    }
    // scattering at k = |E_B|: real part vanishes, unit absorptive part (outgoing sheet)
    const auto s = principal::phi_massless_scatter(c, 1.0);
    CHECK(s.entries(0, 0).real() == doctest::Approx(0.0));
    CHECK(std::abs(s.entries(0, 0).imag()) == doctest::Approx(1.0));
    CHECK(s.entries(0, 0).imag() == -1.0);
}

TEST_CASE("derivative matrix: finite differences, sign, single-center value") {
    const ModelConfig c = twin(1.0, 1.0, 0.5);
    const Eigen::MatrixXd der = principal::phi_derivative(c, -0.3);
    const double h = 1e-5;
    const Eigen::MatrixXd fd = (principal::phi_real(c, -0.3 + h) - principal::phi_real(c, -0.3 - h)) / (2 * h);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(der(i, j) == doctest::Approx(fd(i, j)).epsilon(1e-6));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ModelConfig r = random_config(rng, trial % 4 == 0 ? 0.0 : 1.0);
        const double top = r.massless() ? -1e-3 : 0.99;
        for (double E = -3.0; E < top; E += 0.37) {
            const Eigen::MatrixXd dp = principal::phi_derivative(r, E);
            CHECK((dp.array() < 0.0).all());
        }
    }
    ModelConfig one;
    one.mass = 1.0;
    one.centers = {0.0};
    one.bindings = {0.3};
    CHECK(principal::phi_derivative(one, 0.3)(0, 0) == -principal::diag_closed_form_deriv(0.3, 1.0));
}

TEST_CASE("asymptotic off-diagonal") {
    const double m = 1.0;
    // the expansion parameter is m d; at k d = 10 it is inside 5% once m d is a few
    for (double d : {2.5, 3.0, 4.0}) {
        const double k = 10.0 / d;
        const double exact = kernels::damped_scatter_term(d, k, m);
        CHECK(kernels::damped_scatter_term_asymptotic(d, k, m) == doctest::Approx(exact).epsilon(0.05));
    }
    // relative error shrinks like 1/(m d)
    double prev = 1.0;
    for (double d : {10.0, 20.0, 40.0, 80.0}) {
        const double exact = kernels::damped_scatter_term(d, 1.0, m);
        const double err = std::abs(kernels::damped_scatter_term_asymptotic(d, 1.0, m) / exact - 1.0);
        CHECK(err < prev);
        CHECK(err * d < 1.2);
        prev = err;
    }
    const std::complex<double> full = -kernels::free_resolvent_scatter(3.0, 2.0, m);
    const std::complex<double> asym = principal::phi_offdiag_asymptotic(3.0, 2.0, m);
    CHECK(asym.imag() == doctest::Approx(full.imag()).epsilon(1e-14));
    CHECK(asym.real() == doctest::Approx(full.real()).epsilon(1e-3));
    CHECK_THROWS_AS(principal::phi_offdiag_asymptotic(1.0, 1.0, 0.0), RegimeError);
}

TEST_CASE("nonrelativistic limit") {
    const double m = 1.0, eb = 1.0 - 1e-5, E = 1.0 - 2e-5;
    ModelConfig c = twin(m, 1.0, eb);
    const auto inv = principal::nonrel_inverse_couplings(c);
    const auto rel = principal::phi_bound(c, E);
    const auto nr = principal::phi_nonrel_bound(m, c.centers, inv, E - m);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(rel.entries(i, j).real() == doctest::Approx(nr.entries(i, j).real()).epsilon(1e-2));
    // single-center root at -m lambda^2 / 2
    const double lam = 0.8;
    auto f = [&](double e) { return principal::phi_nonrel_bound(m, {0.0}, {1.0 / lam}, e).entries(0, 0).real(); };
    const double root = roots::brent(f, -10.0, -1e-9, 1e-15).x;
    CHECK(root == doctest::Approx(-m * lam * lam / 2).epsilon(1e-12));
    // derived couplings put the single-center root at E_B - m
    CHECK(inv[0] == doctest::Approx(m / std::sqrt(2.0 * m * 1e-5)).epsilon(1e-9));
    CHECK(inv[0] > 0.0);
    CHECK_THROWS_AS(principal::phi_nonrel_bound(m, {0.0}, {1.0}, 0.1), DomainError);
    const auto s = principal::phi_nonrel_scatter(m, {0.0, 1.0}, {1.0, 1.0}, 0.5);
    CHECK(s.entries(0, 0) == std::complex<double>(1.0, -2.0));
    CHECK(s.entries(0, 1) == s.entries(1, 0));
}
