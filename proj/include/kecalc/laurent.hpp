#pragma once

#include <map>
#include <string>

#include "kecalc/rational.hpp"

namespace kecalc {

/**
 * Laurent polynomial in one formal variable s with rational coefficients.
 * Exponents may be negative.  Zero coefficients are never stored, so two
 * values are equal iff their term maps are equal and the zero polynomial
 * has an empty term map.
 */
class laurent_poly {
public:
    laurent_poly() = default;

    static laurent_poly constant(const rational& c);
    static laurent_poly monomial(int exponent, const rational& coeff);

    const std::map<int, rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const; // requires !is_zero()
    int max_exponent() const;
    rational coeff(int exponent) const;

    laurent_poly operator+(const laurent_poly& o) const;
    laurent_poly operator-(const laurent_poly& o) const;
    laurent_poly operator*(const laurent_poly& o) const;
    laurent_poly scaled(const rational& c) const;
    laurent_poly shifted(int dexp) const; // multiply by s^dexp

    // Term a*s^m maps to a*m*s^(m-1); constants vanish.
    laurent_poly derivative() const;

    // Exact evaluation.  Throws EvalAtPole at x = 0 when negative exponents
    // are present.
    rational eval_exact(const rational& x) const;

    // Float evaluation, Horner form split into the polynomial part (in x)
    // and the principal part (in 1/x) for stability near small x.
    double eval(double x) const;

    bool operator==(const laurent_poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const laurent_poly& o) const { return !(*this == o); }

    std::string str() const;

private:
    void add_term(int exponent, const rational& c);

    std::map<int, rational> terms_;
};

} // namespace kecalc
