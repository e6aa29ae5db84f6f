#include "kecalc/laurent.hpp"

#include <sstream>

namespace kecalc {

laurent_poly laurent_poly::constant(const rational& c) {
    return monomial(0, c);
}

laurent_poly laurent_poly::monomial(int exponent, const rational& coeff) {
    laurent_poly p;
    p.add_term(exponent, coeff);
    return p;
}

int laurent_poly::min_exponent() const {
    return terms_.begin()->first;
}

int laurent_poly::max_exponent() const {
    return terms_.rbegin()->first;
}

rational laurent_poly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? rational(0) : it->second;
}

void laurent_poly::add_term(int exponent, const rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(exponent, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

laurent_poly laurent_poly::operator+(const laurent_poly& o) const {
    laurent_poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

laurent_poly laurent_poly::operator-(const laurent_poly& o) const {
    laurent_poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

laurent_poly laurent_poly::operator*(const laurent_poly& o) const {
    laurent_poly r;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_)
            r.add_term(ea + eb, ca * cb);
    return r;
}

laurent_poly laurent_poly::scaled(const rational& c) const {
    laurent_poly r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

laurent_poly laurent_poly::shifted(int dexp) const {
    laurent_poly r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e + dexp, v);
    return r;
}

laurent_poly laurent_poly::derivative() const {
    laurent_poly r;
    for (const auto& [e, v] : terms_) {
        if (e == 0) continue;
        r.terms_.emplace(e - 1, v * rational(e));
    }
    return r;
}

rational laurent_poly::eval_exact(const rational& x) const {
    if (x.is_zero()) {
        if (!is_zero() && min_exponent() < 0)
            throw validation_error("EvalAtPole", "evaluation at s = 0 with negative exponents");
        return coeff(0);
    }
    rational acc(0);
    for (const auto& [e, v] : terms_) acc += v * x.pow_int(e);
    return acc;
}

double laurent_poly::eval(double x) const {
    if (is_zero()) return 0.0;
    if (x == 0.0) {
        if (min_exponent() < 0)
            throw validation_error("EvalAtPole", "evaluation at s = 0 with negative exponents");
        return coeff(0).to_double();
    }
    // polynomial part, Horner descending in x
    double poly = 0.0;
    int prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend() && it->first >= 0; ++it) {
        if (prev >= 0)
            for (int j = prev; j > it->first; --j) poly *= x;
        poly += it->second.to_double();
        prev = it->first;
    }
    if (prev > 0)
        for (int j = prev; j > 0; --j) poly *= x;

    // principal part, Horner in y = 1/x starting from the most negative
    // exponent and walking up to -1
    double princ = 0.0;
    const double y = 1.0 / x;
    bool any = false;
    int last_e = 0;
    for (auto it = terms_.begin(); it != terms_.end() && it->first < 0; ++it) {
        if (!any) {
            princ = it->second.to_double();
            last_e = it->first;
            any = true;
            continue;
        }
        for (int j = last_e; j < it->first; ++j) princ *= y;
        princ += it->second.to_double();
        last_e = it->first;
    }
    if (any)
        for (int j = last_e; j < 0; ++j) princ *= y;
    return poly + princ;
}

std::string laurent_poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const rational c = it->second;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        rational a = abs(c);
        int e = it->first;
        if (e == 0) {
            os << a.str();
        } else {
            if (a != rational(1)) os << a.str() << "*";
            os << "s";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

} // namespace kecalc
