#include "kecalc/hypersurface.hpp"

#include <numeric>

namespace kecalc {

weighted_hypersurface make_hypersurface(std::vector<long long> weights,
                                        std::vector<std::vector<long long>> monomials) {
    if (weights.empty())
        throw validation_error("ParameterOutOfRange", "need at least one weight");
    long long g = 0;
    for (long long w : weights) {
        if (w <= 0)
            throw validation_error("ParameterOutOfRange", "weights must be positive");
        g = std::gcd(g, w);
    }
    if (g != 1)
        throw validation_error("ParameterOutOfRange", "weights must have gcd 1");
    weighted_hypersurface h;
    h.degree = weighted_degree(monomials, weights);
    h.weights = std::move(weights);
    h.monomials = std::move(monomials);
    h.ambient_dim = static_cast<int>(h.weights.size());
    return h;
}

long long weighted_degree(const std::vector<std::vector<long long>>& monomials,
                          const std::vector<long long>& weights) {
    if (monomials.empty())
        throw validation_error("EmptyPolynomial", "no monomials given");
    for (long long w : weights)
        if (w <= 0)
            throw validation_error("ParameterOutOfRange", "weights must be positive");
    long long best = 0;
    bool first = true;
    for (const auto& mono : monomials) {
        if (mono.size() != weights.size())
            throw validation_error("ParameterOutOfRange",
                                   "exponent vector length does not match the weight count");
        long long deg = 0;
        for (size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] < 0)
                throw validation_error("ParameterOutOfRange", "exponents must be nonnegative");
            deg += weights[i] * mono[i];
        }
        if (first || deg < best) best = deg;
        first = false;
    }
    return best;
}

bool se_property(const std::vector<long long>& weights, long long degree) {
    long long sum = 0;
    for (long long w : weights) sum += w;
    return sum > degree;
}

std::string to_string(obstruction v) {
    switch (v) {
        case obstruction::obstructed: return "obstructed";
        case obstruction::unobstructed_by_this_test: return "unobstructed_by_this_test";
        case obstruction::inconclusive: return "inconclusive";
    }
    return "?";
}

obstruction ke_obstruction(const std::vector<long long>& weights, long long degree, bool gorenstein) {
    if (!se_property(weights, degree)) return obstruction::unobstructed_by_this_test;
    return gorenstein ? obstruction::obstructed : obstruction::inconclusive;
}

long long adjunction_coefficient(const std::vector<long long>& weights, long long degree_of_f) {
    long long sum = 0;
    for (long long w : weights) {
        if (w <= 0)
            throw validation_error("ParameterOutOfRange", "weights must be positive");
        sum += w;
    }
    return sum - degree_of_f - 1;
}

blowup_ledger make_blowup_ledger(blowup_family f, int n, long long d, long long k) {
    blowup_ledger led;
    led.family = f;
    led.n = n;
    led.d = d;
    led.k = k;

    long long c = 0;
    switch (f) {
        case blowup_family::ex1:
            c = 1;
            if (!(k >= d && d >= n + 1))
                throw validation_error("ParameterOutOfRange", "ex1 needs k >= d >= n + 1");
            led.step_weight.assign(n + 1, 1);
            break;
        case blowup_family::ex2:
            c = 2;
            if (!(k >= 2 * d && 2 * d >= n + 2))
                throw validation_error("ParameterOutOfRange", "ex2 needs k >= 2d >= n + 2");
            led.step_weight.assign(n + 1, 1);
            led.step_weight[0] = 2;
            break;
        case blowup_family::ex3:
            c = 6;
            if (!(k >= 6 * d && 6 * d >= n + 4))
                throw validation_error("ParameterOutOfRange", "ex3 needs k >= 6d >= n + 4");
            led.step_weight.assign(n + 1, 1);
            led.step_weight[0] = 3;
            led.step_weight[1] = 2;
            break;
    }

    led.steps = k / (c * d);
    const long long rem = k % (c * d);
    led.smooth_end = (rem == 0 || rem == 1);
    led.per_step = adjunction_coefficient(led.step_weight, c * d);
    led.discrepancies.resize(led.steps);
    for (long long i = 1; i <= led.steps; ++i)
        led.discrepancies[i - 1] = i * led.per_step;
    return led;
}

} // namespace kecalc
