#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "kecalc/errors.hpp"

namespace kecalc {

/**
 * Arbitrary-precision rational number.
 *
 * Always held in canonical form: denominator > 0, gcd(|num|, den) = 1, and
 * zero is 0/1.  Reduction is eager so that identity checks can compare
 * against literal zero.  Backed by GMP's mpq layer.
 */
class rational {
public:
    rational() : v_(0) {}
    rational(long long n) : v_(static_cast<long>(n)) {
        static_assert(sizeof(long) == sizeof(long long), "LP64 layout assumed");
    }
    rational(long long num, long long den);
    rational(const mpz_class& num, const mpz_class& den);

    // Parses "N" or "N/D" with optional leading sign.
    static rational parse(const std::string& text);

    const mpz_class numerator() const { return v_.get_num(); }
    const mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    double to_double() const { return v_.get_d(); }
    std::string str() const;

    rational operator-() const;
    rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
    rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
    rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
    rational& operator/=(const rational& o);

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }

    friend bool operator==(const rational& a, const rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const rational& a, const rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const rational& a, const rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const rational& a, const rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const rational& a, const rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const rational& a, const rational& b) { return a.v_ >= b.v_; }

    // x^e with integer e; negative e inverts (x must be nonzero then).
    rational pow_int(long e) const;

    friend std::ostream& operator<<(std::ostream& os, const rational& r);

private:
    mpq_class v_;
};

rational abs(const rational& r);

} // namespace kecalc
