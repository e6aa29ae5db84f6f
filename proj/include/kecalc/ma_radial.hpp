#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kecalc/errors.hpp"

namespace kecalc {

/// Complex Hessian determinant of a rotationally invariant potential in
/// rho = |z|^2 on C^n: (psi')^(n-1) (psi' + rho psi'').
double radial_ma_determinant(double psi_prime, double psi_second, double rho, int n);

enum class inner_bc {
    regularity, // one-sided second-order stencil at rho_min = 0
    dirichlet   // value pinned to u_inner
};

/**
 * Radial reduction of the Monge-Ampere boundary-value problem
 *
 *   log det(psi + u) - log det(psi) - (n+1) u - F = 0
 *
 * on a uniform grid rho_0 = rho_min < ... < rho_N = 1 - eps.  The model
 * potential enters through analytic samples of psi, psi', psi'' so that
 * only u is finite-differenced.  The outer boundary is Dirichlet; the
 * inner one is a regularity condition at rho = 0 by default.
 */
struct radial_problem {
    int n = 2;
    std::vector<double> rho;
    std::vector<double> psi;
    std::vector<double> psi_prime;
    std::vector<double> psi_second;
    std::vector<double> F;
    inner_bc inner = inner_bc::regularity;
    double u_inner = 0.0; // used only by the dirichlet inner mode
    double u_outer = 0.0;
    std::vector<double> u_exact; // oracle / manufactured solution, may be empty
};

/// Model psi = rho - log(1 - rho) with source
/// F = (n+1)(rho-1) - (n-1) log(2-rho) - log(rho^2 - 2 rho + 2),
/// whose exact solution is u = 1 - rho.
radial_problem hyperbolic_test_problem(int n, double eps, int N);

/// Same model potential with F back-computed so that the exact solution is
/// u = amplitude * (1 - rho)^order.  Throws ParameterOutOfRange when the
/// target potential loses positivity on the grid.
radial_problem manufactured_problem(int n, double eps, int N, int order, double amplitude);

/// Same model potential with a caller-supplied source F = f(rho) and zero
/// outer boundary value.  No exact solution attached.
radial_problem source_problem(int n, double eps, int N, const std::function<double(double)>& f);

struct radial_solution {
    std::vector<double> u;
    double residual_sup = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct iteration_record {
    std::vector<double> u;
    std::vector<double> residual;
};

/**
 * Damped Newton iteration with second-order central differences and a
 * step-halving line search that keeps (psi+u)' > 0 and
 * (psi+u)' + rho (psi+u)'' > 0 at every node of every accepted iterate.
 * iterations counts residual evaluations at accepted iterates, so an
 * initial guess that already solves the system reports one iteration.
 * Throws PositivityLoss when no damped step stays positive and
 * MaxIterExceeded when the budget runs out or the line search stalls.
 *
 * newton_solve runs the grid kernels (residual assembly, Jacobian
 * assembly, norms, positivity scans) under OpenMP for large grids;
 * newton_solve_serial is the plain reference.  Both produce identical
 * iterates.
 */
radial_solution newton_solve(const radial_problem& p, double tol, int max_iter,
                             std::vector<iteration_record>* trace = nullptr);
radial_solution newton_solve_serial(const radial_problem& p, double tol, int max_iter,
                                    std::vector<iteration_record>* trace = nullptr);

/// Least-squares slope of log|u| against log(1 - rho) over the outermost
/// quarter of the grid: the apparent vanishing order of u at the boundary.
/// Throws DegenerateFit when u vanishes on that window.
double asymptotic_order_fit(const radial_solution& s, const radial_problem& p);

/// True iff (psi+u)' > 0 and (psi+u)' + rho (psi+u)'' > 0 at every node,
/// the scan the Newton line search applies to each trial step.
bool metric_positive(const radial_problem& p, const std::vector<double>& u);

double sup_diff(const std::vector<double>& a, const std::vector<double>& b);

/// Per-iteration CSV dump: header "iter,rho,psi,F,u,residual", 12
/// significant digits, LF endings.
std::string radial_csv(const radial_problem& p, const std::vector<iteration_record>& trace);

} // namespace kecalc
