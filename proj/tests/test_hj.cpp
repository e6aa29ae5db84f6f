#include <doctest.h>

#include <numeric>
#include <random>

#include "kecalc/hj.hpp"
#include "kecalc/rational.hpp"

using namespace kecalc;

namespace {

// independent oracle: evaluate e1 - 1/(e2 - 1/(...)) in exact rational
// arithmetic, without the integer convergent recursion
rational cf_value(const std::vector<long long>& entries) {
    rational v(entries.back());
    for (auto it = std::next(entries.rbegin()); it != entries.rend(); ++it)
        v = rational(*it) - rational(1) / v;
    return v;
}

} // namespace

TEST_CASE("hj_expand examples") {
    CHECK(hj_entries(5, 2) == std::vector<long long>{3, 2});
    CHECK(hj_entries(7, 5) == std::vector<long long>{2, 2, 3});
    for (long long p : {2, 3, 7, 11, 100})
        CHECK(hj_entries(p, 1) == std::vector<long long>{p});

    CHECK_THROWS_AS(hj_expand(quotient_data{2, 2}), validation_error);
    CHECK_THROWS_AS(hj_expand(quotient_data{4, 2}), validation_error);
    CHECK_THROWS_AS(hj_expand(quotient_data{5, 0}), validation_error);
    CHECK_THROWS_AS(hj_expand(quotient_data{1, 1}), validation_error);
}

TEST_CASE("hj_evaluate examples") {
    quotient_data d = hj_evaluate({3, 2});
    CHECK(d.p == 5);
    CHECK(d.q == 2);
    for (long long e : {2, 3, 9}) {
        quotient_data s = hj_evaluate({e});
        CHECK(s.p == e);
        CHECK(s.q == 1);
    }
    // j twos evaluate to (j+1, j); checked against the rational oracle
    for (int j = 1; j <= 20; ++j) {
        std::vector<long long> twos(j, 2);
        quotient_data r = hj_evaluate(twos);
        CHECK(r.p == j + 1);
        CHECK(r.q == j);
        CHECK(cf_value(twos) == rational(j + 1, j));
    }
    CHECK_THROWS_AS(hj_evaluate({3, 1}), validation_error);
    CHECK_THROWS_AS(hj_evaluate({}), validation_error);
}

TEST_CASE("expansion agrees with the rational continued-fraction oracle") {
    for (long long p = 2; p <= 60; ++p)
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            CHECK(cf_value(hj_entries(p, q)) == rational(p, q));
        }
}

TEST_CASE("entry lists with all entries >= 2 are the unique expansions") {
    std::mt19937 rng(314);
    std::uniform_int_distribution<int> len(1, 10);
    std::uniform_int_distribution<long long> entry(2, 7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long long> entries(len(rng));
        for (auto& e : entries) e = entry(rng);
        quotient_data d = hj_evaluate(entries);
        CHECK(hj_entries(d.p, d.q) == entries);
    }
}

TEST_CASE("stabilizer chains") {
    auto c52 = stabilizer_chain(quotient_data{5, 2}, hj_entries(5, 2));
    CHECK(c52 == std::vector<std::pair<long long, long long>>{{1, 0}, {1, 1}, {2, 3}, {3, 5}});

    auto c31 = stabilizer_chain(quotient_data{3, 1}, hj_entries(3, 1));
    CHECK(c31 == std::vector<std::pair<long long, long long>>{{1, 0}, {1, 1}, {2, 3}});

    std::mt19937 rng(99);
    std::uniform_int_distribution<long long> ps(2, 400);
    for (int trial = 0; trial < 100; ++trial) {
        long long p = ps(rng);
        std::uniform_int_distribution<long long> qs(1, p - 1);
        long long q = qs(rng);
        if (std::gcd(p, q) != 1) continue;
        auto entries = hj_entries(p, q);
        auto chain = stabilizer_chain(quotient_data{p, q}, entries);
        CHECK(chain[0] == std::make_pair(1LL, 0LL));
        CHECK(chain[1] == std::make_pair(1LL, 1LL));
        CHECK(chain.back() == std::make_pair(p - q, p));
        for (const auto& [m, n] : chain) {
            CHECK(std::gcd(m, n) == 1);
            CHECK(m > 0);
        }
        // n_i / (n_i - m_i) is the depth-(i-1) truncation of the fraction
        for (size_t i = 2; i < chain.size(); ++i) {
            std::vector<long long> head(entries.begin(), entries.begin() + (i - 1));
            auto [m, n] = chain[i];
            CHECK(cf_value(head) == rational(n, n - m));
        }
    }
}

TEST_CASE("negative definiteness, exact") {
    int_matrix m1{1, {-1}};
    CHECK(is_negative_definite(m1));
    int_matrix m2{2, {-3, 1, 1, -2}};
    CHECK(is_negative_definite(m2)); // minors -3, 5
    int_matrix m3{2, {-1, 1, 1, -1}};
    CHECK(!is_negative_definite(m3)); // determinant 0
    int_matrix m4{2, {1, 0, 0, 1}};
    CHECK(!is_negative_definite(m4));
    // zero pivot midway must not trip the elimination
    int_matrix m5{3, {-1, 1, 0, 1, -1, 0, 0, 0, -1}};
    CHECK(!is_negative_definite(m5));
    int_matrix bad{2, {1, 2, 3}};
    CHECK_THROWS_AS(is_negative_definite(bad), validation_error);

    // the O(k) chain recursion agrees with the general Bareiss route
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_int_distribution<long long> entry(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long long> entries(len(rng));
        for (auto& e : entries) e = entry(rng);
        CHECK(chain_negative_definite(entries) ==
              is_negative_definite(chain_intersection_matrix(entries)));
    }
}

TEST_CASE("ke_admissible") {
    CHECK(ke_admissible({3}));
    CHECK(!ke_admissible({3, 2}));
    CHECK(!ke_admissible({2}));
    CHECK(ke_admissible({}));

    // admissibility is the same statement as: every diagonal entry of the
    // intersection matrix is <= -3
    for (long long p = 2; p <= 40; ++p)
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            hj_string s = hj_expand(quotient_data{p, q});
            bool all_le3 = true;
            for (int i = 0; i < s.intersection.size; ++i)
                all_le3 = all_le3 && s.intersection.at(i, i) <= -3;
            CHECK(ke_admissible(s.entries) == all_le3);
        }
}

TEST_CASE("hj_string structure") {
    hj_string s = hj_expand(quotient_data{7, 5});
    CHECK(s.entries == std::vector<long long>{2, 2, 3});
    CHECK(s.intersection.size == 3);
    CHECK(s.intersection.at(0, 0) == -2);
    CHECK(s.intersection.at(2, 2) == -3);
    CHECK(s.intersection.at(0, 1) == 1);
    CHECK(s.intersection.at(1, 0) == 1);
    CHECK(s.intersection.at(0, 2) == 0);
    CHECK(s.stabilizers.size() == s.entries.size() + 2);
    CHECK(is_negative_definite(s.intersection));
}

TEST_CASE("round trip and sweep up to p = 120") {
    for (long long p = 2; p <= 120; ++p)
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto entries = hj_entries(p, q);
            quotient_data back = hj_evaluate(entries);
            CHECK(back.p == p);
            CHECK(back.q == q);
            for (long long e : entries) CHECK(e >= 2);
            CHECK(chain_negative_definite(entries));
        }

    sweep_report serial = hj_sweep(120, false);
    sweep_report parallel = hj_sweep(120, true);
    CHECK(serial.all_ok);
    CHECK(parallel.all_ok);
    CHECK(serial.pairs == parallel.pairs);
    CHECK(serial.total_entries == parallel.total_entries);
    CHECK(serial.max_length == parallel.max_length);
    // (p, p-1) expands to p-1 twos, the longest string for each p
    CHECK(serial.max_length == 119);
}
