#include "kecalc/hj.hpp"

#include <gmpxx.h>

#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kecalc {

void validate(const quotient_data& d) {
    if (d.q <= 0 || d.p <= d.q)
        throw validation_error("InvalidQuotient",
                               "need p > q > 0, got (" + std::to_string(d.p) + ", " + std::to_string(d.q) + ")");
    if (std::gcd(d.p, d.q) != 1)
        throw validation_error("InvalidQuotient",
                               "p and q must be coprime, got (" + std::to_string(d.p) + ", " + std::to_string(d.q) + ")");
}

std::vector<long long> hj_entries(long long p, long long q) {
    validate(quotient_data{p, q});
    std::vector<long long> entries;
    long long prev = p, cur = q;
    while (cur > 0) {
        long long e = (prev + cur - 1) / cur; // ceil(prev / cur)
        entries.push_back(e);
        long long next = e * cur - prev;      // 0 <= next < cur
        prev = cur;
        cur = next;
    }
    return entries;
}

quotient_data hj_evaluate(const std::vector<long long>& entries) {
    if (entries.empty())
        throw validation_error("InvalidEntries", "empty entry list");
    for (long long e : entries)
        if (e < 2)
            throw validation_error("InvalidEntries", "entry " + std::to_string(e) + " < 2");
    // backward recursion: [e] = e/1, [e, rest] = (e*N' - D')/N'
    mpz_class num = static_cast<long>(entries.back()), den = 1;
    for (auto it = std::next(entries.rbegin()); it != entries.rend(); ++it) {
        mpz_class n2 = mpz_class(static_cast<long>(*it)) * num - den;
        den = num;
        num = n2;
    }
    if (!num.fits_slong_p())
        throw validation_error("Overflow", "continued fraction value exceeds the integer range");
    return quotient_data{num.get_si(), den.get_si()};
}

std::vector<std::pair<long long, long long>> stabilizer_chain(const quotient_data& d,
                                                              const std::vector<long long>& entries) {
    validate(d);
    // forward convergents N_j/D_j of [e_1..e_j]; N_{-1} = 0, N_0 = 1,
    // D_{-1} = -1, D_0 = 0.  The stabilizer of C_i is (N_{i-1} - D_{i-1},
    // N_{i-1}) and the chain starts at the axis curve (1, 0).
    std::vector<std::pair<long long, long long>> chain;
    chain.reserve(entries.size() + 2);
    chain.emplace_back(1, 0);
    long long n_prev = 0, n_cur = 1;
    long long d_prev = -1, d_cur = 0;
    chain.emplace_back(n_cur - d_cur, n_cur); // (1, 1) on C_1
    for (long long e : entries) {
        long long n_next = e * n_cur - n_prev;
        long long d_next = e * d_cur - d_prev;
        n_prev = n_cur; n_cur = n_next;
        d_prev = d_cur; d_cur = d_next;
        chain.emplace_back(n_cur - d_cur, n_cur);
    }
    return chain;
}

int_matrix chain_intersection_matrix(const std::vector<long long>& entries) {
    int k = static_cast<int>(entries.size());
    int_matrix m;
    m.size = k;
    m.a.assign(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
        m.at(i, i) = -entries[static_cast<size_t>(i)];
        if (i + 1 < k) {
            m.at(i, i + 1) = 1;
            m.at(i + 1, i) = 1;
        }
    }
    return m;
}

hj_string hj_expand(const quotient_data& d) {
    hj_string s;
    s.source = d;
    s.entries = hj_entries(d.p, d.q);
    s.stabilizers = stabilizer_chain(d, s.entries);
    s.intersection = chain_intersection_matrix(s.entries);
    return s;
}

bool is_negative_definite(const int_matrix& m) {
    if (m.size < 0 || m.a.size() != static_cast<size_t>(m.size) * static_cast<size_t>(m.size))
        throw validation_error("NonSquare", "matrix buffer does not match its declared size");
    if (m.size == 0)
        throw validation_error("NonSquare", "empty matrix");
    const int n = m.size;
    // Fraction-free (Bareiss) elimination: after step j the pivot a[j][j]
    // equals the j-th leading principal minor.  A zero pivot already
    // breaks the strict sign alternation, so no pivoting is needed.
    std::vector<mpz_class> a(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<long>(m.a[i]);
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<size_t>(i) * n + j]; };
    mpz_class prev = 1;
    for (int j = 0; j < n; ++j) {
        const mpz_class piv = at(j, j);
        int want = (j % 2 == 0) ? -1 : 1; // minor d_{j+1} has sign (-1)^{j+1}
        if (sgn(piv) != want) return false;
        for (int r = j + 1; r < n; ++r)
            for (int c = j + 1; c < n; ++c)
                at(r, c) = (at(r, c) * piv - at(r, j) * at(j, c)) / prev;
        prev = piv;
    }
    return true;
}

bool chain_negative_definite(const std::vector<long long>& entries) {
    // minors of diag(-e) + offdiag 1: d_j = -e_j d_{j-1} - d_{j-2};
    // with t_j := (-1)^j d_j this is t_j = e_j t_{j-1} - t_{j-2} and
    // negative definiteness is t_j > 0 for all j.
    long long t_prev = 0, t_cur = 1;
    for (long long e : entries) {
        long long t_next = e * t_cur - t_prev;
        if (t_next <= 0) return false;
        t_prev = t_cur;
        t_cur = t_next;
    }
    return true;
}

bool ke_admissible(const std::vector<long long>& entries) {
    for (long long e : entries)
        if (e < 3) return false;
    return true;
}

namespace {

bool sweep_check_pair(long long p, long long q, long long& length) {
    std::vector<long long> entries = hj_entries(p, q);
    length = static_cast<long long>(entries.size());
    for (long long e : entries)
        if (e < 2) return false;
    quotient_data back = hj_evaluate(entries);
    if (back.p != p || back.q != q) return false;
    if (!chain_negative_definite(entries)) return false;
    auto chain = stabilizer_chain(quotient_data{p, q}, entries);
    if (chain.size() != entries.size() + 2) return false;
    if (chain[1] != std::make_pair(1LL, 1LL)) return false;
    if (chain.back() != std::make_pair(p - q, p)) return false;
    return true;
}

} // namespace

sweep_report hj_sweep(long long p_max, bool parallel) {
    sweep_report rep;
    long long pairs = 0, total = 0, max_len = 0;
    bool all_ok = true;
    long long bad_p = 0, bad_q = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : pairs, total) \
    reduction(max : max_len) reduction(&& : all_ok) if (parallel)
#endif
    for (long long p = 2; p <= p_max; ++p) {
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            long long len = 0;
            bool ok = sweep_check_pair(p, q, len);
            pairs += 1;
            total += len;
            if (len > max_len) max_len = len;
            if (!ok) {
                all_ok = false;
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (bad_p == 0) { bad_p = p; bad_q = q; }
                }
            }
        }
    }
#ifndef _OPENMP
    (void)parallel;
#endif

    rep.pairs = pairs;
    rep.total_entries = total;
    rep.max_length = max_len;
    rep.all_ok = all_ok;
    rep.first_bad_p = bad_p;
    rep.first_bad_q = bad_q;
    return rep;
}

} // namespace kecalc
