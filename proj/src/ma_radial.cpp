#include "kecalc/ma_radial.hpp"

#include <algorithm>
#include <cmath>

#include "kecalc/format.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kecalc {

double radial_ma_determinant(double psi_prime, double psi_second, double rho, int n) {
    return std::pow(psi_prime, n - 1) * (psi_prime + rho * psi_second);
}

namespace {

void check_problem_shape(int n, double eps, int N) {
    if (n < 1)
        throw validation_error("ParameterOutOfRange", "need n >= 1");
    if (!(eps > 0.0 && eps < 0.5))
        throw validation_error("ParameterOutOfRange", "need 0 < eps < 1/2");
    if (N < 16)
        throw validation_error("ParameterOutOfRange", "need N >= 16");
}

radial_problem model_grid(int n, double eps, int N) {
    radial_problem p;
    p.n = n;
    p.rho.resize(N + 1);
    p.psi.resize(N + 1);
    p.psi_prime.resize(N + 1);
    p.psi_second.resize(N + 1);
    p.F.assign(N + 1, 0.0);
    const double h = (1.0 - eps) / N;
    for (int i = 0; i <= N; ++i) {
        const double r = i * h;
        p.rho[i] = r;
        p.psi[i] = r - std::log(1.0 - r);
        p.psi_prime[i] = 1.0 + 1.0 / (1.0 - r);
        p.psi_second[i] = 1.0 / ((1.0 - r) * (1.0 - r));
    }
    return p;
}

} // namespace

radial_problem hyperbolic_test_problem(int n, double eps, int N) {
    check_problem_shape(n, eps, N);
    radial_problem p = model_grid(n, eps, N);
    p.u_exact.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double r = p.rho[i];
        p.F[i] = (n + 1) * (r - 1.0) - (n - 1) * std::log(2.0 - r) - std::log(r * r - 2.0 * r + 2.0);
        p.u_exact[i] = 1.0 - r;
    }
    p.u_outer = p.u_exact[N];
    return p;
}

radial_problem manufactured_problem(int n, double eps, int N, int order, double amplitude) {
    check_problem_shape(n, eps, N);
    if (order < 1)
        throw validation_error("ParameterOutOfRange", "need manufactured order >= 1");
    radial_problem p = model_grid(n, eps, N);
    p.u_exact.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double r = p.rho[i];
        const double s = 1.0 - r;
        const double ut = amplitude * std::pow(s, order);
        const double ut1 = -amplitude * order * std::pow(s, order - 1);
        const double ut2 = order > 1 ? amplitude * order * (order - 1) * std::pow(s, order - 2) : 0.0;
        const double w1 = p.psi_prime[i] + ut1;
        const double w2 = w1 + r * (p.psi_second[i] + ut2);
        const double m1 = p.psi_prime[i];
        const double m2 = m1 + r * p.psi_second[i];
        if (!(w1 > 0.0) || !(w2 > 0.0))
            throw validation_error("ParameterOutOfRange",
                                   "manufactured potential loses positivity at rho = " + std::to_string(r));
        p.F[i] = (n - 1) * (std::log(w1) - std::log(m1)) + std::log(w2) - std::log(m2) - (n + 1) * ut;
        p.u_exact[i] = ut;
    }
    p.u_outer = p.u_exact[N];
    return p;
}

radial_problem source_problem(int n, double eps, int N, const std::function<double(double)>& f) {
    check_problem_shape(n, eps, N);
    radial_problem p = model_grid(n, eps, N);
    for (int i = 0; i <= N; ++i) p.F[i] = f(p.rho[i]);
    p.u_outer = 0.0;
    return p;
}

namespace {

constexpr int par_threshold = 4096; // grid size below which OpenMP is not worth it

struct stencil_ctx {
    const radial_problem* p;
    int N;      // last node index
    double h;
    bool par;
};

// total-potential derivative samples at a node: w1 = (psi+u)', w2 = w1 + rho (psi+u)''
inline void total_derivs(const stencil_ctx& c, const std::vector<double>& u, int i,
                         double& w1, double& w2) {
    const radial_problem& p = *c.p;
    const double h = c.h;
    double u1, u2;
    if (i == 0) {
        u1 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
        u2 = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h);
    } else if (i == c.N) {
        u1 = (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * h);
        u2 = (2.0 * u[i] - 5.0 * u[i - 1] + 4.0 * u[i - 2] - u[i - 3]) / (h * h);
    } else {
        u1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
        u2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    }
    w1 = p.psi_prime[i] + u1;
    w2 = w1 + p.rho[i] * (p.psi_second[i] + u2);
}

bool positivity_ok(const stencil_ctx& c, const std::vector<double>& u) {
    const int N = c.N;
    bool ok = true;
#ifdef _OPENMP
#pragma omp parallel for reduction(&& : ok) if (c.par && N >= par_threshold)
#endif
    for (int i = 0; i <= N; ++i) {
        double w1, w2;
        total_derivs(c, u, i, w1, w2);
        ok = ok && (w1 > 0.0) && (w2 > 0.0);
    }
    return ok;
}

void assemble_residual(const stencil_ctx& c, const std::vector<double>& u, std::vector<double>& G) {
    const radial_problem& p = *c.p;
    const int N = c.N;
    const int n = p.n;
    const double h = c.h;
#ifdef _OPENMP
#pragma omp parallel for if (c.par && N >= par_threshold)
#endif
    for (int i = 0; i <= N; ++i) {
        if (i == N) {
            G[i] = u[i] - p.u_outer;
            continue;
        }
        if (i == 0) {
            if (p.inner == inner_bc::dirichlet) {
                G[0] = u[0] - p.u_inner;
                continue;
            }
            // rho_0 = 0: the radial eigenvalue collapses onto (psi+u)',
            // so only the one-sided first derivative enters
            const double u1 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
            const double w1 = p.psi_prime[0] + u1;
            G[0] = n * (std::log(w1) - std::log(p.psi_prime[0])) - (n + 1) * u[0] - p.F[0];
            continue;
        }
        const double u1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
        const double u2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
        const double w1 = p.psi_prime[i] + u1;
        const double w2 = w1 + p.rho[i] * (p.psi_second[i] + u2);
        const double m1 = p.psi_prime[i];
        const double m2 = m1 + p.rho[i] * p.psi_second[i];
        G[i] = (n - 1) * (std::log(w1) - std::log(m1)) + std::log(w2) - std::log(m2) -
               (n + 1) * u[i] - p.F[i];
    }
}

double sup_norm(const std::vector<double>& v, [[maybe_unused]] bool par) {
    double m = 0.0;
    const int N = static_cast<int>(v.size());
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) if (par && N >= par_threshold)
#endif
    for (int i = 0; i < N; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
}

// Band with one subdiagonal and up to three superdiagonals (the extra two
// hold the regularity row and pivoting fill).  Slot layout per row: column
// offsets -1..+3.
struct band_matrix {
    int n = 0;
    std::vector<double> a;

    explicit band_matrix(int size) : n(size), a(static_cast<size_t>(size) * 5, 0.0) {}
    double& at(int i, int j) { return a[static_cast<size_t>(i) * 5 + (j - i + 1)]; }
};

void solve_banded(band_matrix& m, std::vector<double>& rhs) {
    const int n = m.n;
    for (int k = 0; k + 1 < n; ++k) {
        if (std::fabs(m.at(k + 1, k)) > std::fabs(m.at(k, k))) {
            const int jmax = std::min(k + 3, n - 1);
            for (int j = k; j <= jmax; ++j) std::swap(m.at(k, j), m.at(k + 1, j));
            std::swap(rhs[k], rhs[k + 1]);
        }
        const double piv = m.at(k, k);
        if (piv == 0.0)
            throw numerical_error("SingularJacobian", "banded elimination hit a zero pivot");
        const double mult = m.at(k + 1, k) / piv;
        if (mult != 0.0) {
            const int jmax = std::min(k + 3, n - 1);
            for (int j = k + 1; j <= jmax; ++j) m.at(k + 1, j) -= mult * m.at(k, j);
            rhs[k + 1] -= mult * rhs[k];
            m.at(k + 1, k) = 0.0;
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[i];
        const int jmax = std::min(i + 3, n - 1);
        for (int j = i + 1; j <= jmax; ++j) s -= m.at(i, j) * rhs[j];
        if (m.at(i, i) == 0.0)
            throw numerical_error("SingularJacobian", "banded back substitution hit a zero pivot");
        rhs[i] = s / m.at(i, i);
    }
}

void assemble_jacobian(const stencil_ctx& c, const std::vector<double>& u, band_matrix& J) {
    const radial_problem& p = *c.p;
    const int N = c.N;
    const int n = p.n;
    const double h = c.h;
    const double a = 1.0 / (2.0 * h);
    const double b = 1.0 / (h * h);
#ifdef _OPENMP
#pragma omp parallel for if (c.par && N >= par_threshold)
#endif
    for (int i = 0; i <= N; ++i) {
        if (i == N) {
            J.at(i, i) = 1.0;
            continue;
        }
        if (i == 0) {
            if (p.inner == inner_bc::dirichlet) {
                J.at(0, 0) = 1.0;
                continue;
            }
            const double u1 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
            const double w1 = p.psi_prime[0] + u1;
            J.at(0, 0) = n * (-3.0 * a) / w1 - (n + 1);
            J.at(0, 1) = n * (4.0 * a) / w1;
            J.at(0, 2) = n * (-a) / w1;
            continue;
        }
        const double u1 = (u[i + 1] - u[i - 1]) / (2.0 * h);
        const double u2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
        const double w1 = p.psi_prime[i] + u1;
        const double w2 = w1 + p.rho[i] * (p.psi_second[i] + u2);
        const double rb = p.rho[i] * b;
        J.at(i, i - 1) = (n - 1) * (-a) / w1 + (-a + rb) / w2;
        J.at(i, i) = -2.0 * rb / w2 - (n + 1);
        J.at(i, i + 1) = (n - 1) * a / w1 + (a + rb) / w2;
    }
}

radial_solution newton_impl(const radial_problem& p, double tol, int max_iter, bool parallel,
                            std::vector<iteration_record>* trace) {
    const int N = static_cast<int>(p.rho.size()) - 1;
    if (N < 4)
        throw validation_error("ParameterOutOfRange", "grid too small");
    if (tol <= 0.0)
        throw validation_error("ParameterOutOfRange", "tolerance must be positive");
    if (p.inner == inner_bc::regularity && p.rho[0] != 0.0)
        throw validation_error("ParameterOutOfRange", "regularity condition requires rho_min = 0");
    const double h = p.rho[1] - p.rho[0];
    stencil_ctx ctx{&p, N, h, parallel};

    std::vector<double> u(N + 1, 0.0);
    u[N] = p.u_outer;
    if (p.inner == inner_bc::dirichlet) u[0] = p.u_inner;
    if (!positivity_ok(ctx, u))
        throw numerical_error("PositivityLoss", "model metric not positive at the initial iterate");

    std::vector<double> G(N + 1), cand(N + 1), Gc(N + 1), delta(N + 1);
    assemble_residual(ctx, u, G);
    double sup = sup_norm(G, parallel);
    int iters = 1;
    int wedged = 0; // consecutive positivity-throttled iterations without progress
    if (trace) trace->push_back({u, G});

    while (sup > tol) {
        if (iters >= max_iter)
            throw numerical_error("MaxIterExceeded",
                                  "no convergence after " + std::to_string(iters) + " iterations");
        band_matrix J(N + 1);
        assemble_jacobian(ctx, u, J);
        delta = G;
        for (double& v : delta) v = -v;
        solve_banded(J, delta);

        double alpha = 1.0;
        bool accepted = false;
        bool positivity_blocked = false;
        double sup_c = 0.0;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (int i = 0; i <= N; ++i) cand[i] = u[i] + alpha * delta[i];
            if (positivity_ok(ctx, cand)) {
                assemble_residual(ctx, cand, Gc);
                sup_c = sup_norm(Gc, parallel);
                if (sup_c <= (1.0 - 1e-4 * alpha) * sup) {
                    accepted = true;
                    break;
                }
            } else {
                positivity_blocked = true;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (positivity_blocked)
                throw numerical_error("PositivityLoss",
                                      "line search could not keep the metric positive");
            throw numerical_error("MaxIterExceeded", "line search stalled");
        }
        // a step throttled by the positivity constraint that no longer makes
        // real progress means the discrete solution sits on the wall
        if (positivity_blocked && sup_c > 0.999 * sup)
            ++wedged;
        else
            wedged = 0;
        if (wedged >= 3)
            throw numerical_error("PositivityLoss",
                                  "iterates wedged against the metric positivity constraint");
        u.swap(cand);
        G.swap(Gc);
        sup = sup_c;
        ++iters;
        if (trace) trace->push_back({u, G});
    }

    radial_solution sol;
    sol.u = std::move(u);
    sol.residual_sup = sup;
    sol.iterations = iters;
    sol.converged = true;
    return sol;
}

} // namespace

radial_solution newton_solve(const radial_problem& p, double tol, int max_iter,
                             std::vector<iteration_record>* trace) {
    return newton_impl(p, tol, max_iter, true, trace);
}

bool metric_positive(const radial_problem& p, const std::vector<double>& u) {
    const int N = static_cast<int>(p.rho.size()) - 1;
    stencil_ctx ctx{&p, N, p.rho[1] - p.rho[0], false};
    return positivity_ok(ctx, u);
}

radial_solution newton_solve_serial(const radial_problem& p, double tol, int max_iter,
                                    std::vector<iteration_record>* trace) {
    return newton_impl(p, tol, max_iter, false, trace);
}

double asymptotic_order_fit(const radial_solution& s, const radial_problem& p) {
    const int N = static_cast<int>(p.rho.size()) - 1;
    const double cutoff = p.rho[0] + 0.75 * (p.rho[N] - p.rho[0]);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    double umax = 0.0;
    for (int i = 0; i <= N; ++i) {
        if (p.rho[i] < cutoff) continue;
        umax = std::max(umax, std::fabs(s.u[i]));
    }
    if (umax < 1e-13)
        throw numerical_error("DegenerateFit", "u vanishes on the fit window");
    for (int i = 0; i <= N; ++i) {
        if (p.rho[i] < cutoff) continue;
        const double au = std::fabs(s.u[i]);
        if (au == 0.0) continue;
        const double x = std::log(1.0 - p.rho[i]);
        const double y = std::log(au);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt < 3)
        throw numerical_error("DegenerateFit", "not enough usable nodes in the fit window");
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

std::string radial_csv(const radial_problem& p, const std::vector<iteration_record>& trace) {
    std::string out = "iter,rho,psi,F,u,residual\n";
    for (size_t it = 0; it < trace.size(); ++it) {
        for (size_t i = 0; i < p.rho.size(); ++i) {
            out += std::to_string(it) + "," + format_sig12(p.rho[i]) + "," + format_sig12(p.psi[i]) +
                   "," + format_sig12(p.F[i]) + "," + format_sig12(trace[it].u[i]) + "," +
                   format_sig12(trace[it].residual[i]) + "\n";
        }
    }
    return out;
}

} // namespace kecalc
