#include "kecalc/rational.hpp"

#include <ostream>

namespace kecalc {

rational::rational(long long num, long long den) {
    if (den == 0)
        throw validation_error("DivisionByZero", "rational with zero denominator");
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
}

rational::rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0)
        throw validation_error("DivisionByZero", "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

rational rational::parse(const std::string& text) {
    auto bad = [&]() -> validation_error {
        return validation_error("InvalidRational", "expected NUM or NUM/DEN, got '" + text + "'");
    };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text);
            return rational(n, mpz_class(1));
        }
        std::string ns = text.substr(0, slash);
        std::string ds = text.substr(slash + 1);
        if (ns.empty() || ds.empty()) throw bad();
        mpz_class n(ns), d(ds);
        if (sgn(d) == 0) throw bad();
        return rational(n, d);
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

std::string rational::str() const {
    std::string s = v_.get_num().get_str();
    if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
    return s;
}

rational rational::operator-() const {
    rational r;
    r.v_ = -v_;
    return r;
}

rational& rational::operator/=(const rational& o) {
    if (o.is_zero())
        throw validation_error("DivisionByZero", "rational division by zero");
    v_ /= o.v_;
    return *this;
}

rational rational::pow_int(long e) const {
    if (e == 0) return rational(1);
    if (is_zero()) {
        if (e < 0)
            throw validation_error("DivisionByZero", "0 raised to a negative power");
        return rational(0);
    }
    mpz_class num, den;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), ae);
    mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), ae);
    if (e < 0) std::swap(num, den);
    return rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const rational& r) {
    return os << r.str();
}

rational abs(const rational& r) {
    return r.sign() < 0 ? -r : r;
}

} // namespace kecalc
