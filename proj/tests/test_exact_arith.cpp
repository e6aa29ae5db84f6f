#include <doctest.h>

#include <cmath>
#include <random>

#include "kecalc/laurent.hpp"

using namespace kecalc;

namespace {

laurent_poly mono(int e, long num, long den = 1) {
    return laurent_poly::monomial(e, rational(num, den));
}

// random Laurent polynomial with exponents in [-5, 5] and small rational
// coefficients
laurent_poly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 6);
    std::uniform_int_distribution<int> expo(-5, 5);
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 9);
    laurent_poly p;
    int m = nterms(rng);
    for (int i = 0; i < m; ++i)
        p = p + laurent_poly::monomial(expo(rng), rational(num(rng), den(rng)));
    return p;
}

} // namespace

TEST_CASE("rational canonical form") {
    rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(rational(0, 7).denominator() == 1);
    CHECK(rational(2, 3) + rational(1, 3) == rational(1));
    CHECK_THROWS_AS(rational(1, 0), validation_error);
    CHECK(rational::parse("-7/6").str() == "-7/6");
    CHECK(rational::parse("5").str() == "5");
    CHECK_THROWS_AS(rational::parse("x/2"), validation_error);
    CHECK(rational(1, 3).pow_int(-2) == rational(9));
}

TEST_CASE("laurent arithmetic examples") {
    // (s + s^-1) + (-s^-1) = s
    laurent_poly a = mono(1, 1) + mono(-1, 1);
    laurent_poly b = mono(-1, -1);
    CHECK(a + b == mono(1, 1));

    // s^2 * s^-2 = 1
    CHECK(mono(2, 1) * mono(-2, 1) == laurent_poly::constant(rational(1)));

    // (3s - 6) scaled by 1/3 = s - 2
    laurent_poly c = mono(1, 3) + mono(0, -6);
    CHECK(c.scaled(rational(1, 3)) == mono(1, 1) + mono(0, -2));
}

TEST_CASE("laurent derivative examples") {
    CHECK(mono(2, 1).derivative() == mono(1, 2));
    CHECK(mono(-1, 1).derivative() == mono(-2, -1));

    // (4/9)s^2 + (1/3)s - (7/6)s^-1 -> (8/9)s + 1/3 + (7/6)s^-2
    laurent_poly p = mono(2, 4, 9) + mono(1, 1, 3) + mono(-1, -7, 6);
    laurent_poly d = mono(1, 8, 9) + mono(0, 1, 3) + mono(-2, 7, 6);
    CHECK(p.derivative() == d);
}

TEST_CASE("laurent display form") {
    CHECK(laurent_poly{}.str() == "0");
    laurent_poly p = mono(2, 4, 9) + mono(1, 1, 3) + mono(-1, -7, 6);
    CHECK(p.str() == "4/9*s^2 + 1/3*s - 7/6*s^-1");
    CHECK((mono(1, -1) + mono(0, 2)).str() == "-s + 2");
}

TEST_CASE("laurent evaluation") {
    CHECK(mono(2, 1).eval_exact(rational(3)) == rational(9));
    CHECK_THROWS_AS(mono(-1, 1).eval_exact(rational(0)), validation_error);
    CHECK_THROWS_AS(mono(-1, 1).eval(0.0), validation_error);

    // (1/3)s + (4/9)s^2 - (7/6)s^-1 at s = 1 is -7/18
    laurent_poly p = mono(1, 1, 3) + mono(2, 4, 9) + mono(-1, -7, 6);
    CHECK(p.eval_exact(rational(1)) == rational(-7, 18));

    // float path agrees with the exact path away from 0
    for (double x : {0.3, 0.5, 1.25, 2.0, 4.0}) {
        rational rx(static_cast<long>(std::lround(x * 100)), 100);
        CHECK(p.eval(x) == doctest::Approx(p.eval_exact(rx).to_double()).epsilon(1e-13));
    }
}

TEST_CASE("canonical form under random arithmetic") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        laurent_poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        laurent_poly prod = a * b, sum = a + b;
        for (const auto& [e, v] : prod.terms()) CHECK(!v.is_zero());
        for (const auto& [e, v] : sum.terms()) CHECK(!v.is_zero());
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("float evaluation tracks the exact path") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<long> xn(1, 16);
    std::uniform_int_distribution<int> xd(0, 2); // dyadic points are exact doubles
    for (int trial = 0; trial < 200; ++trial) {
        laurent_poly p = random_poly(rng);
        rational x(xn(rng), 1L << xd(rng));
        double exact = p.eval_exact(x).to_double();
        double approx = p.eval(x.to_double());
        double scale = 0.0;
        for (const auto& [e, v] : p.terms())
            scale += std::fabs(v.to_double() * std::pow(x.to_double(), e));
        CHECK(std::fabs(approx - exact) <= 1e-13 * (1.0 + scale));
    }
}

TEST_CASE("derivative against central finite differences") {
    std::mt19937 rng(7311);
    std::uniform_real_distribution<double> xs(0.5, 4.0);
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 120; ++trial) {
        laurent_poly p = random_poly(rng);
        if (p.is_zero()) continue;
        laurent_poly d = p.derivative();
        double x = xs(rng);
        double exact = d.eval(x);
        // skip ill-conditioned sample points where the derivative nearly
        // cancels; the finite-difference oracle has no accuracy there
        double scale = 0.0;
        for (const auto& [e, v] : d.terms()) scale += std::fabs(v.to_double() * std::pow(x, e));
        if (std::fabs(exact) < 1e-3 * (1.0 + scale)) continue;
        double h = 1e-5 * std::max(1.0, std::fabs(x));
        double fd = (p.eval(x + h) - p.eval(x - h)) / (2.0 * h);
        CHECK(std::fabs(fd - exact) / std::fabs(exact) <= 1e-8);
        ++tested;
    }
    CHECK(tested >= 100);
}
