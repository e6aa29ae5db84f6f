#include <doctest.h>

#include <cmath>
#include <random>

#include "kecalc/ma_radial.hpp"
#include "test_support.hpp"

using namespace kecalc;
using kecalc_testing::thrown_code;

TEST_CASE("radial determinant") {
    // flat potential
    CHECK(radial_ma_determinant(1.0, 0.0, 0.7, 2) == 1.0);
    CHECK(radial_ma_determinant(1.0, 0.0, 0.7, 5) == 1.0);

    // psi = -log(1-rho): determinant (1-rho)^-(n+1)
    for (int n : {2, 3, 4})
        for (double rho : {0.1, 0.5, 0.9}) {
            double p1 = 1.0 / (1.0 - rho);
            double p2 = p1 * p1;
            CHECK(radial_ma_determinant(p1, p2, rho, n) ==
                  doctest::Approx(std::pow(1.0 - rho, -(n + 1))).epsilon(1e-12));
        }

    // psi = rho^2/2 at rho = 1
    CHECK(radial_ma_determinant(1.0, 1.0, 1.0, 3) == 2.0);
}

TEST_CASE("hyperbolic problem data") {
    for (int n : {2, 3}) {
        radial_problem p = hyperbolic_test_problem(n, 1e-3, 64);
        // F extends to 0 at rho = 1
        double F1 = (n + 1) * (1.0 - 1.0) - (n - 1) * std::log(2.0 - 1.0) - std::log(1.0);
        CHECK(F1 == 0.0);
        // F(0) = -(n+1) - n log 2
        CHECK(p.F[0] == doctest::Approx(-(n + 1) - n * std::log(2.0)).epsilon(1e-14));

        // u = 1 - rho satisfies the continuum equation: with psi + u =
        // 1 - log(1-rho) the determinant is (1-rho)^-(n+1)
        for (int i = 0; i < 64; i += 7) {
            double r = p.rho[i];
            double lhs = std::log(std::pow(1.0 - r, -(n + 1)));
            double det_model =
                std::log(radial_ma_determinant(p.psi_prime[i], p.psi_second[i], r, n));
            double rhs = det_model + (n + 1) * (1.0 - r) + p.F[i];
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
    CHECK(thrown_code([] { hyperbolic_test_problem(2, 0.7, 64); }) == "ParameterOutOfRange");
    CHECK(thrown_code([] { hyperbolic_test_problem(2, 1e-3, 8); }) == "ParameterOutOfRange");
}

TEST_CASE("newton oracle against the closed-form solution") {
    for (int n : {2, 3}) {
        radial_problem p = hyperbolic_test_problem(n, 1e-3, 1024);
        std::vector<iteration_record> trace;
        radial_solution s = newton_solve(p, 1e-10, 30, &trace);
        CHECK(s.converged);
        CHECK(s.iterations <= 10);
        CHECK(sup_diff(s.u, p.u_exact) <= 1e-6);

        // every accepted iterate keeps the metric positive
        for (const auto& rec : trace) CHECK(metric_positive(p, rec.u));

        // quadratic tail: convergence order over the final iterations above
        // the rounding floor
        std::vector<double> errs;
        for (const auto& rec : trace) {
            double e = sup_diff(rec.u, p.u_exact);
            if (e > 1e-13) errs.push_back(e);
        }
        REQUIRE(errs.size() >= 4);
        const size_t m = errs.size();
        for (size_t i : {m - 3, m - 2}) {
            double order = std::log(errs[i + 1] / errs[i]) / std::log(errs[i] / errs[i - 1]);
            CHECK(order >= 1.5);
        }
    }
}

TEST_CASE("trivial source converges immediately") {
    radial_problem p = source_problem(2, 1e-3, 128, [](double) { return 0.0; });
    radial_solution s = newton_solve(p, 1e-12, 10);
    CHECK(s.iterations == 1);
    CHECK(s.residual_sup == 0.0);
    for (double v : s.u) CHECK(v == 0.0);
}

TEST_CASE("discrete maximum principle for a constant source") {
    const double delta = 0.1;
    for (int n : {2, 3}) {
        radial_problem p = source_problem(n, 1e-3, 256, [&](double) { return delta; });
        radial_solution s = newton_solve(p, 1e-11, 30);
        for (int i = 0; i < 256; ++i) {
            CHECK(s.u[i] <= 1e-9);
            CHECK(s.u[i] >= -delta / (n + 1) - 1e-9);
        }
    }
}

TEST_CASE("comparison principle") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> amp(0.0, 0.25);
    std::uniform_real_distribution<double> center(0.1, 0.9);
    for (int trial = 0; trial < 5; ++trial) {
        double a1 = amp(rng), c1 = center(rng), a2 = amp(rng), c2 = center(rng);
        auto f1 = [&](double r) { return a1 * std::exp(-20.0 * (r - c1) * (r - c1)) - 0.1; };
        auto f2 = [&](double r) {
            return f1(r) + a2 * std::exp(-12.0 * (r - c2) * (r - c2));
        };
        radial_problem p1 = source_problem(2, 1e-3, 256, f1);
        radial_problem p2 = source_problem(2, 1e-3, 256, f2);
        radial_solution s1 = newton_solve(p1, 1e-11, 40);
        radial_solution s2 = newton_solve(p2, 1e-11, 40);
        for (size_t i = 0; i < s1.u.size(); ++i) CHECK(s1.u[i] >= s2.u[i] - 1e-10);
    }
}

TEST_CASE("asymptotic order fit") {
    radial_problem hyp = hyperbolic_test_problem(2, 1e-3, 512);
    radial_solution s = newton_solve(hyp, 1e-10, 30);
    CHECK(std::fabs(asymptotic_order_fit(s, hyp) - 1.0) <= 0.1);

    radial_problem p2 = manufactured_problem(2, 1e-3, 512, 2, 0.5);
    radial_solution s2 = newton_solve(p2, 1e-10, 30);
    CHECK(std::fabs(asymptotic_order_fit(s2, p2) - 2.0) <= 0.1);

    radial_problem z = source_problem(2, 1e-3, 128, [](double) { return 0.0; });
    radial_solution sz = newton_solve(z, 1e-12, 10);
    CHECK(thrown_code([&] { asymptotic_order_fit(sz, z); }) == "DegenerateFit");
}

TEST_CASE("grid refinement order on a cubic manufactured solution") {
    // the hyperbolic oracle is linear in rho and therefore exact at the
    // stencil level; a cubic target exposes the genuine O(h^2) error
    std::vector<int> sizes{128, 256, 512, 1024};
    std::vector<double> errs;
    for (int N : sizes) {
        radial_problem p = manufactured_problem(2, 1e-3, N, 3, 0.3);
        radial_solution s = newton_solve(p, 1e-10, 40);
        errs.push_back(sup_diff(s.u, p.u_exact));
    }
    for (size_t i = 0; i + 1 < errs.size(); ++i) {
        double order = std::log2(errs[i] / errs[i + 1]);
        CHECK(order >= 1.8);
    }
}

TEST_CASE("positivity loss and iteration budget") {
    // a steep negative linear source forces u' ~ |S|/(n+1) < -psi'(0)
    radial_problem p = source_problem(2, 1e-3, 128, [](double r) { return -80.0 * (1.0 - r); });
    CHECK(thrown_code([&] { newton_solve(p, 1e-10, 60); }) == "PositivityLoss");

    radial_problem h = hyperbolic_test_problem(2, 1e-3, 128);
    CHECK(thrown_code([&] { newton_solve(h, 1e-10, 1); }) == "MaxIterExceeded");
}

TEST_CASE("serial and parallel solvers produce identical iterates") {
    // the residual floor scales like 1e-16/h^2, so the tolerance is looser
    // on this fine grid
    radial_problem p = manufactured_problem(2, 1e-3, 8192, 3, 0.3);
    radial_solution a = newton_solve_serial(p, 1e-7, 40);
    radial_solution b = newton_solve(p, 1e-7, 40);
    CHECK(a.iterations == b.iterations);
    CHECK(sup_diff(a.u, b.u) == 0.0);
    CHECK(a.residual_sup == b.residual_sup);
}

TEST_CASE("manufactured amplitude validation") {
    CHECK(thrown_code([] { manufactured_problem(2, 1e-3, 128, 3, 5.0); }) == "ParameterOutOfRange");
}

TEST_CASE("per-iteration csv") {
    radial_problem p = hyperbolic_test_problem(2, 1e-2, 32);
    std::vector<iteration_record> trace;
    radial_solution s = newton_solve(p, 1e-9, 30, &trace);
    CHECK(static_cast<int>(trace.size()) == s.iterations);
    std::string csv = radial_csv(p, trace);
    CHECK(csv.rfind("iter,rho,psi,F,u,residual\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
}
