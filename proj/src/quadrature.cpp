#include "salpeter/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "salpeter/errors.hpp"

namespace salpeter::quad {

namespace {

// nodes in decreasing order; odd indices are the embedded 10-point Gauss nodes
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525990273, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

Result gauss_kronrod21(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = wgk[10] * fc;
    double g = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = h * xgk[j];
        const double s = f(c - dx) + f(c + dx);
        k += wgk[j] * s;
        if (j % 2 == 1) g += wg[j / 2] * s;
    }
    Result r;
    r.value = k * h;
    r.error = std::abs((k - g) * h);
    r.intervals = 1;
    return r;
}

Result integrate(const Integrand& f, const std::vector<double>& breakpoints, Tolerance tol) {
    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a)) continue;
        const Result r = gauss_kronrod21(f, a, b);
        heap.push({a, b, r.value, r.error});
        total += r.value;
        err += r.error;
    }
    int count = int(heap.size());
    while (!heap.empty() && err > std::max(tol.abs, tol.rel * std::abs(total))) {
        if (count >= tol.max_intervals) {
            if (err <= 1e3 * std::max(tol.abs, tol.rel * std::abs(total))) break;
            throw NumericalFailure("adaptive quadrature did not converge", breakpoints.front(),
                                   breakpoints.back());
        }
        const Panel p = heap.top();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) break;  // panel at machine resolution
        heap.pop();
        const Result l = gauss_kronrod21(f, p.a, mid);
        const Result r = gauss_kronrod21(f, mid, p.b);
        heap.push({p.a, mid, l.value, l.error});
        heap.push({mid, p.b, r.value, r.error});
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        ++count;
    }
    // resum to shed accumulated update roundoff
    double value = 0.0, error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, count};
}

Result integrate(const Integrand& f, double a, double b, Tolerance tol) {
    return integrate(f, std::vector<double>{a, b}, tol);
}

Result integrate_to_infinity(const Integrand& f, double a, double scale, Tolerance tol) {
    auto g = [&](double s) {
        if (s >= 1.0) return 0.0;
        const double one_minus = 1.0 - s;
        const double x = a + scale * s / one_minus;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * scale / (one_minus * one_minus);
    };
    return integrate(g, std::vector<double>{0.0, 0.5, 0.75, 0.875, 0.9375, 1.0}, tol);
}

std::vector<double> geometric_panels(double h, double hi) {
    std::vector<double> pts{0.0};
    double x = h;
    while (x < hi) {
        pts.push_back(x);
        x *= 2.0;
    }
    pts.push_back(hi);
    return pts;
}

}  // namespace salpeter::quad
