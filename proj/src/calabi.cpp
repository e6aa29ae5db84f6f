#include "kecalc/calabi.hpp"

#include <cmath>
#include <limits>

#include "kecalc/format.hpp"
#include "kecalc/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kecalc {

namespace {

void check_orders(int n, int k) {
    if (n < 2)
        throw validation_error("ParameterOutOfRange", "need complex dimension n >= 2, got " + std::to_string(n));
    if (k < 1)
        throw validation_error("ParameterOutOfRange", "need order k >= 1, got " + std::to_string(k));
}

// s_* when a positive root exists, 0 when phi > 0 on all of (0, inf).
double root_floor(const einstein_profile& p) {
    try {
        return positive_root(p);
    } catch (const validation_error& e) {
        if (e.code() == "NoPositiveRoot") return 0.0;
        throw;
    }
}

void check_above_root(double s_star, double tau, const char* what) {
    if (!(1.0 + tau > s_star))
        throw validation_error("DomainError",
                               std::string(what) + " must lie above tau_* = " + std::to_string(s_star - 1.0));
}

} // namespace

einstein_profile solve_profile(int n, int k, const rational& lambda, const rational& c) {
    check_orders(n, k);
    einstein_profile p;
    p.n = n;
    p.k = k;
    p.lambda = lambda;
    p.integration_constant = c;
    p.phi = laurent_poly::monomial(1, rational(1, k)) +
            laurent_poly::monomial(2, lambda / rational(n + 1)) +
            laurent_poly::monomial(1 - n, c);
    return p;
}

einstein_profile canonical_profile(int n, int k, bool allow_inadmissible) {
    check_orders(n, k);
    if (k <= n && !allow_inadmissible)
        throw validation_error("InadmissibleOrder",
                               "c_1 < 0 requires k > n, got n = " + std::to_string(n) +
                                   ", k = " + std::to_string(k));
    rational lambda = rational(2) - rational(n, k);
    rational c = -rational(2LL * n + k, static_cast<long long>(n) * (n + 1));
    return solve_profile(n, k, lambda, c);
}

laurent_poly einstein_residual(const einstein_profile& p) {
    laurent_poly r = laurent_poly::constant(rational(p.n, p.k));
    r = r - p.phi.shifted(-1).scaled(rational(p.n - 1));
    r = r - p.phi.derivative();
    r = r + laurent_poly::monomial(1, p.lambda);
    return r;
}

bool check_einstein_identity(const einstein_profile& p) {
    return einstein_residual(p).is_zero();
}

double positive_root(const einstein_profile& p) {
    const laurent_poly& phi = p.phi;
    if (phi.is_zero())
        throw validation_error("NotEventuallyPositive", "zero profile");
    const rational lead = phi.coeff(phi.max_exponent());
    if (lead.sign() <= 0)
        throw validation_error("NotEventuallyPositive",
                               "leading coefficient of phi is not positive");
    bool any_negative = false;
    for (const auto& [e, c] : phi.terms())
        if (c.sign() < 0) any_negative = true;
    if (!any_negative)
        throw validation_error("NoPositiveRoot", "phi > 0 on all of (0, inf)");

    // Cauchy-style bound: every root of s^m phi lies below 1 + max |c_e / lead|.
    rational bound(1);
    for (const auto& [e, c] : phi.terms()) {
        rational t = abs(c) / lead;
        if (t > bound) bound = t;
    }
    bound += rational(1);

    // exact sign probes descending from the root bound
    rational hi = bound;             // phi(hi) > 0 by the bound
    rational probe = bound;
    rational lo(0);
    bool bracketed = false;
    for (int j = 0; j < 200; ++j) {
        probe /= rational(2);
        int s = phi.eval_exact(probe).sign();
        if (s == 0) return probe.to_double();
        if (s < 0) {
            lo = probe;
            bracketed = true;
            break;
        }
        hi = probe;
    }
    if (!bracketed)
        throw validation_error("NoPositiveRoot", "no sign change found above s = 0");

    double a = lo.to_double(), b = hi.to_double();
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        double mid = 0.5 * (a + b);
        double v = phi.eval(mid);
        if (v == 0.0) return mid;
        if (v < 0.0) a = mid; else b = mid;
    }
    return 0.5 * (a + b);
}

double momentum_to_t(const einstein_profile& p, double tau0, double tau) {
    const double s_star = root_floor(p);
    check_above_root(s_star, tau0, "tau0");
    check_above_root(s_star, tau, "tau");
    const laurent_poly& phi = p.phi;
    return integrate([&](double x) { return 1.0 / phi.eval(1.0 + x); }, tau0, tau, 1e-11);
}

double kahler_potential(const einstein_profile& p, double tau0, double tau) {
    const double s_star = root_floor(p);
    check_above_root(s_star, tau0, "tau0");
    check_above_root(s_star, tau, "tau");
    const laurent_poly& phi = p.phi;
    return integrate([&](double x) { return x / phi.eval(1.0 + x); }, tau0, tau, 1e-11);
}

namespace {

// integral of 1/phi over [s, inf) via u = 1/x: the integrand becomes
// 1/q(u) with q(u) = u^2 phi(1/u), a genuine polynomial since phi has
// exponents <= 2.  Requires q(0) = lambda/(n+1) > 0.
double momentum_tail(const laurent_poly& phi, double s, double tol) {
    laurent_poly q;
    for (const auto& [e, c] : phi.terms())
        q = q + laurent_poly::monomial(2 - e, c);
    return integrate([&](double u) { return 1.0 / q.eval(u); }, 0.0, 1.0 / s, tol);
}

} // namespace

profile_diagnostics completeness_report(const einstein_profile& p, double tau0) {
    profile_diagnostics d;
    const double s_star = positive_root(p); // propagates NoPositiveRoot
    d.tau_star = s_star - 1.0;
    check_above_root(s_star, tau0, "tau0");

    const laurent_poly& phi = p.phi;
    const double s0 = 1.0 + tau0;
    const bool finite_range = p.lambda.sign() > 0;

    // fiber arclength increments over six decades; the integral diverges
    // when the increments do not decay toward zero
    const int decades = 6;
    std::vector<double> arc_inc(decades);
    for (int dce = 0; dce < decades; ++dce) {
        double a = s0 * std::pow(10.0, dce);
        double b = s0 * std::pow(10.0, dce + 1);
        arc_inc[dce] = integrate([&](double s) { return 1.0 / std::sqrt(phi.eval(s)); }, a, b, 1e-12);
    }
    d.arclength_divergent = arc_inc[decades - 1] > 0.1 * arc_inc[0];

    if (!finite_range) {
        d.t_upper = std::numeric_limits<double>::infinity();
        d.disc_radius = std::numeric_limits<double>::infinity();
        d.fitted_rate = 0.0;
        return d;
    }

    // c = t(inf), split at a moderate multiple of the root
    const double split = std::max(10.0 * s0, 10.0);
    const double head = integrate([&](double s) { return 1.0 / phi.eval(s); }, s0, split, 1e-12);
    d.t_upper = head + momentum_tail(phi, split, 1e-12);
    d.disc_radius = std::exp(d.t_upper / (2.0 * p.k));

    // beta: slope of log(c - t) against arclength over the last decade of a
    // geometric grid spanning six decades
    const int m = 257;
    std::vector<double> sg(m), arc(m);
    const double ratio = std::pow(1e6, 1.0 / (m - 1));
    sg[0] = s0;
    for (int j = 1; j < m; ++j) sg[j] = sg[j - 1] * ratio;
    arc[0] = 0.0;
    for (int j = 1; j < m; ++j)
        arc[j] = arc[j - 1] +
                 integrate([&](double s) { return 1.0 / std::sqrt(phi.eval(s)); }, sg[j - 1], sg[j], 1e-12);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int j = 0; j < m; ++j) {
        if (sg[j] < 0.1 * sg[m - 1]) continue;
        double rem = momentum_tail(phi, sg[j], 1e-14); // c - t at this node
        double x = arc[j], y = std::log(rem);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    d.fitted_rate = -slope;
    return d;
}

std::vector<profile_row> profile_table(const einstein_profile& p, double tau0, int grid_size) {
    if (grid_size < 2)
        throw validation_error("ParameterOutOfRange", "grid size must be >= 2");
    const double s_star = root_floor(p);
    check_above_root(s_star, tau0, "tau0");

    const laurent_poly& phi = p.phi;
    const double s0 = 1.0 + tau0;
    const double ratio = std::pow(1000.0, 1.0 / (grid_size - 1));

    std::vector<profile_row> rows(grid_size);
    double s_prev = s0, t = 0.0, F = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        double s = (j == 0) ? s0 : s_prev * ratio;
        if (j > 0) {
            t += integrate([&](double x) { return 1.0 / phi.eval(1.0 + x); }, s_prev - 1.0, s - 1.0, 1e-12);
            F += integrate([&](double x) { return x / phi.eval(1.0 + x); }, s_prev - 1.0, s - 1.0, 1e-12);
        }
        double ph = phi.eval(s);
        rows[j] = profile_row{s - 1.0, ph, t, F, s, 1.0 / ph};
        s_prev = s;
    }
    return rows;
}

std::string profile_csv(const std::vector<profile_row>& rows) {
    std::string out = "tau,phi,t,F,A,B\n";
    for (const auto& r : rows) {
        out += format_sig12(r.tau) + "," + format_sig12(r.phi) + "," + format_sig12(r.t) + "," +
               format_sig12(r.F) + "," + format_sig12(r.A) + "," + format_sig12(r.B) + "\n";
    }
    return out;
}

std::vector<double> momentum_grid(const einstein_profile& p, double tau0,
                                  const std::vector<double>& taus, bool parallel) {
    const double s_star = root_floor(p);
    check_above_root(s_star, tau0, "tau0");
    for (double t : taus) check_above_root(s_star, t, "tau");

    const laurent_poly& phi = p.phi;
    const int m = static_cast<int>(taus.size());
    std::vector<double> seg(m);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int j = 0; j < m; ++j) {
        const double a = (j == 0) ? tau0 : taus[j - 1];
        seg[j] = integrate([&](double x) { return 1.0 / phi.eval(1.0 + x); }, a, taus[j], 1e-12);
    }
#ifndef _OPENMP
    (void)parallel;
#endif

    std::vector<double> out(m);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        acc += seg[j];
        out[j] = acc;
    }
    return out;
}

} // namespace kecalc
