#pragma once

#include <string>
#include <vector>

#include "kecalc/errors.hpp"

namespace kecalc {

/// Weighted homogeneous hypersurface data: positive weights with gcd 1 and
/// exponent vectors of the defining monomials.
struct weighted_hypersurface {
    std::vector<long long> weights;
    std::vector<std::vector<long long>> monomials;
    long long degree = 0;
    int ambient_dim = 0;
};

weighted_hypersurface make_hypersurface(std::vector<long long> weights,
                                        std::vector<std::vector<long long>> monomials);

/// deg(f): the largest j such that every monomial has weighted degree >= j,
/// i.e. the minimum over monomials of sum_i w_i * a_i.
long long weighted_degree(const std::vector<std::vector<long long>>& monomials,
                          const std::vector<long long>& weights);

/// Topological precondition for a compatible Sasaki-Einstein structure on
/// the link: true iff sum of weights > degree.
bool se_property(const std::vector<long long>& weights, long long degree);

enum class obstruction {
    obstructed,               // property S-E and Gorenstein: no Kahler-Einstein filling
    unobstructed_by_this_test, // sum of weights <= degree
    inconclusive              // property S-E but not Gorenstein
};

std::string to_string(obstruction v);

/// Verdict table; the caller asserts the isolated-singularity hypothesis.
obstruction ke_obstruction(const std::vector<long long>& weights, long long degree, bool gorenstein);

/// Exceptional coefficient of a weighted blow-up: sum of weights - deg - 1.
long long adjunction_coefficient(const std::vector<long long>& weights, long long degree_of_f);

enum class blowup_family { ex1, ex2, ex3 };

/**
 * Per-step discrepancy bookkeeping for the three iterated weighted blow-up
 * families of Fermat-type hypersurfaces
 *
 *   ex1: z_0^d + ... + z_{n-1}^d + z_n^k,                blow-up weight (1,...,1),     c = 1
 *   ex2: z_0^d + z_1^{2d} + ... + z_{n-1}^{2d} + z_n^k,  blow-up weight (2,1,...,1),   c = 2
 *   ex3: z_0^{2d} + z_1^{3d} + z_2^{6d} + ... + z_n^k,   blow-up weight (3,2,1,...,1), c = 6
 *
 * Each step removes c*d from the z_n exponent; the resolution terminates
 * smoothly after floor(k/(c d)) steps iff k = 0 or 1 mod c*d.
 */
struct blowup_ledger {
    blowup_family family = blowup_family::ex1;
    int n = 0;
    long long d = 0;
    long long k = 0;
    std::vector<long long> step_weight;
    long long steps = 0;
    bool smooth_end = false;
    long long per_step = 0;               // adjunction coefficient of one step
    std::vector<long long> discrepancies; // a_i = i * per_step
};

blowup_ledger make_blowup_ledger(blowup_family f, int n, long long d, long long k);

} // namespace kecalc
