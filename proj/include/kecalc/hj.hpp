#pragma once

#include <utility>
#include <vector>

#include "kecalc/errors.hpp"

namespace kecalc {

/// Cyclic quotient singularity of type (p; q): p > q > 0 and gcd(p, q) = 1.
struct quotient_data {
    long long p = 0;
    long long q = 0;
};

/// Throws InvalidQuotient unless p > q > 0 and gcd(p, q) = 1.
void validate(const quotient_data& d);

/// Dense square integer matrix, row-major.
struct int_matrix {
    int size = 0;
    std::vector<long long> a;

    long long at(int i, int j) const { return a[static_cast<size_t>(i) * size + j]; }
    long long& at(int i, int j) { return a[static_cast<size_t>(i) * size + j]; }
};

/**
 * Resolution data of the cyclic quotient of type (p; q).  The exceptional
 * set is a chain of rational curves C_1..C_k with C_i^2 = -e_i, consecutive
 * curves meeting once.  stabilizers lists the toric data (m_i, n_i) of
 * C_0..C_{k+1} where C_0 and C_{k+1} are the two non-compact axis curves;
 * the chain is oriented so that stabilizers[0] = (1,0), stabilizers[1] =
 * (1,1) sits on C_1 and stabilizers[k+1] = (p-q, p).
 */
struct hj_string {
    quotient_data source;
    std::vector<long long> entries;                           // e_1..e_k, all >= 2
    std::vector<std::pair<long long, long long>> stabilizers; // (m_i, n_i), i = 0..k+1
    int_matrix intersection;                                  // diag -e_i, 1 at |i-j| = 1
};

/// Continued-fraction expansion p/q = e_1 - 1/(e_2 - 1/(...)) together with
/// stabilizers and the intersection matrix.
hj_string hj_expand(const quotient_data& d);

/// Entries-only expansion; cheaper than hj_expand for bulk work.
std::vector<long long> hj_entries(long long p, long long q);

/// Inverse direction: the unique coprime (p, q) with the given expansion.
/// Throws InvalidEntries when an entry is < 2.
quotient_data hj_evaluate(const std::vector<long long>& entries);

/// Stabilizer pairs (m_i, n_i), i = 0..k+1, for the entries of d.
std::vector<std::pair<long long, long long>> stabilizer_chain(const quotient_data& d,
                                                              const std::vector<long long>& entries);

/// Sylvester test in exact integer arithmetic: true iff the leading
/// principal minors alternate in sign starting negative.
/// Throws NonSquare when the buffer does not match a square matrix.
bool is_negative_definite(const int_matrix& m);

/// Same test specialized to the chain matrix diag(-e_i) + 1 off-diagonal,
/// via the O(k) tridiagonal minor recursion.
bool chain_negative_definite(const std::vector<long long>& entries);

/// True iff every entry is >= 3 (equivalently every C_i^2 <= -3), the
/// condition for c_1 < 0 on the resolution.
bool ke_admissible(const std::vector<long long>& entries);

/// Builds the k x k intersection matrix for a list of entries.
int_matrix chain_intersection_matrix(const std::vector<long long>& entries);

struct sweep_report {
    long long pairs = 0;
    bool all_ok = true;
    long long first_bad_p = 0;
    long long first_bad_q = 0;
    long long max_length = 0;
    long long total_entries = 0;
};

/**
 * Checks, for every coprime pair 2 <= p <= p_max, 0 < q < p: the round trip
 * hj_evaluate(hj_entries(p,q)) == (p,q), all entries >= 2, negative
 * definiteness of the chain matrix, and the stabilizer endpoint (p-q, p).
 * The parallel variant distributes p across OpenMP threads.
 */
sweep_report hj_sweep(long long p_max, bool parallel);

} // namespace kecalc
