#pragma once

#include <functional>

namespace kecalc {

/**
 * Adaptive Gauss-Kronrod (G7, K15) quadrature on a finite interval,
 * driven by an absolute error budget.  Subintervals are bisected until the
 * local K15-G7 discrepancy fits within their share of the budget.
 * Throws MaxIterExceeded if the recursion depth limit is hit.
 */
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

} // namespace kecalc
