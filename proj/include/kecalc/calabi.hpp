#pragma once

#include <string>
#include <vector>

#include "kecalc/laurent.hpp"

namespace kecalc {

/**
 * Momentum profile of the cohomogeneity-one Einstein ansatz on the k-th
 * power of the tautological bundle over CP^{n-1}.  In the variable
 * s = 1 + tau the profile is the Laurent polynomial
 *
 *     phi(s) = s/k + (lambda/(n+1)) s^2 + C s^(1-n),
 *
 * and the Einstein condition reduces to the exact identity
 * n/k - (n-1) phi/s - phi' + lambda s = 0.
 */
struct einstein_profile {
    int n = 2;                // complex dimension
    int k = 1;                // quotient order / bundle power
    rational lambda;          // Einstein constant in ric = -lambda g
    rational integration_constant; // coefficient C of s^(1-n)
    laurent_poly phi;
};

/// General solution family with lambda and C free.
einstein_profile solve_profile(int n, int k, const rational& lambda, const rational& c);

/// Canonical instance lambda = 2 - n/k, C = -(2n+k)/(n(n+1)), the member of
/// the family that extends over the zero section.  Requires k > n unless
/// allow_inadmissible; otherwise throws InadmissibleOrder.
einstein_profile canonical_profile(int n, int k, bool allow_inadmissible = false);

/// Residual polynomial n/k - (n-1) phi/s - phi' + lambda s, computed from
/// the stored phi in exact arithmetic.
laurent_poly einstein_residual(const einstein_profile& p);

/// True iff the residual is identically zero.  No tolerance.
bool check_einstein_identity(const einstein_profile& p);

/**
 * Largest zero s_* > 0 of phi with phi > 0 on (s_*, inf), found by exact
 * sign probes at rational points followed by float bisection to absolute
 * tolerance 1e-12.  Throws NotEventuallyPositive when the leading
 * coefficient is negative, NoPositiveRoot when phi > 0 on all of (0, inf).
 */
double positive_root(const einstein_profile& p);

/// t(tau) - t(tau0) = integral of 1/phi over [tau0, tau]; adaptive
/// quadrature with absolute error <= 1e-10.  Endpoints must lie strictly
/// above tau_* = s_* - 1 (DomainError otherwise).
double momentum_to_t(const einstein_profile& p, double tau0, double tau);

/// F(tau) - F(tau0) = integral of x/phi(x) over [tau0, tau].
double kahler_potential(const einstein_profile& p, double tau0, double tau);

struct profile_diagnostics {
    double tau_star = 0.0;          // s_* - 1
    double t_upper = 0.0;           // c = t(inf); +inf when lambda <= 0
    double disc_radius = 0.0;       // e^(c / 2k)
    bool arclength_divergent = false;
    double fitted_rate = 0.0;       // beta from log(c - t) vs arclength
};

/**
 * Completeness diagnostics from tau0: the finite t-range endpoint c
 * (momentum quadrature plus a 1/s-substituted tail), the bounding radius
 * e^(c/2k), divergence of the fiber arclength L = integral of phi^(-1/2),
 * and the decay rate beta fitted by least squares on log(c - t) against L
 * over the last decade of a geometric grid.  The fiber line element
 * convention is phi^(-1/2) dtau.
 */
profile_diagnostics completeness_report(const einstein_profile& p, double tau0);

struct profile_row {
    double tau, phi, t, F, A, B;
};

/// Rows (tau, phi, t, F, A = 1+tau, B = 1/phi) sampled geometrically in
/// s = 1+tau from tau0 over three decades.  t and F accumulate from tau0.
std::vector<profile_row> profile_table(const einstein_profile& p, double tau0, int grid_size);

/// CSV with header "tau,phi,t,F,A,B", 12 significant digits, LF endings.
std::string profile_csv(const std::vector<profile_row>& rows);

/// Batch t(tau_j) for increasing targets taus, all measured from tau0.
/// The parallel variant computes per-segment integrals concurrently and
/// prefix-sums them in order, so both variants return identical values.
std::vector<double> momentum_grid(const einstein_profile& p, double tau0,
                                  const std::vector<double>& taus, bool parallel);

} // namespace kecalc
