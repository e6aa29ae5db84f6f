#include "kecalc/quadrature.hpp"

#include <cmath>

#include "kecalc/errors.hpp"

namespace kecalc {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights,
// with the embedded 7-point Gauss weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct panel {
    double kronrod;
    double err;
};

panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double gauss = fc * wg[3];
    double kron = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        kron += fsum * wgk[j];
        if (j % 2 == 1) gauss += fsum * wg[j / 2];
    }
    return panel{kron * h, std::fabs((kron - gauss) * h)};
}

double adaptive(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    panel p = gk15(f, a, b);
    if (p.err <= tol || b - a < 1e-14 * (std::fabs(a) + std::fabs(b)))
        return p.kronrod;
    if (depth > 60)
        throw numerical_error("MaxIterExceeded", "adaptive quadrature did not converge");
    const double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * tol, depth + 1) + adaptive(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, abs_tol);
    return adaptive(f, a, b, abs_tol, 0);
}

} // namespace kecalc
