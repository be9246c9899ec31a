#include "quadfermat/mersenne.hpp"
#include "quadfermat/sunit.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace qf;

TEST_CASE("mersenne factorizations: pinned examples") {
    auto m6 = mersenne_factor(6);
    CHECK(m6.value == 63);
    REQUIRE(m6.factors.size() == 2);
    CHECK(m6.factors[0] == std::pair<Int, unsigned>{3, 2});
    CHECK(m6.factors[1] == std::pair<Int, unsigned>{7, 1});
    CHECK(m6.omega == 2);
    CHECK(m6.primitive_divisors.empty());

    auto m11 = mersenne_factor(11);
    CHECK(m11.value == 2047);
    REQUIRE(m11.factors.size() == 2);
    CHECK(m11.factors[0].first == 23);
    CHECK(m11.factors[1].first == 89);
    CHECK(m11.primitive_divisors.size() == 2);

    auto m1 = mersenne_factor(1);
    CHECK(m1.value == 1);
    CHECK(m1.omega == 0);
    CHECK(m1.factors.empty());

    auto m12 = mersenne_factor(12);
    bool has13 = false;
    for (const auto& p : m12.primitive_divisors)
        if (p == 13) has13 = true;
    CHECK(has13);

    CHECK_THROWS_AS(mersenne_factor(0), std::invalid_argument);
    CHECK_THROWS_AS(mersenne_factor(100), std::invalid_argument);
    CHECK_NOTHROW(mersenne_factor(100, /*allow_partial=*/true));
}

TEST_CASE("the full cap range factors correctly") {
    for (unsigned long m = 1; m <= 64; ++m) {
        auto md = mersenne_factor(m);
        CHECK(md.complete);
        Int prod = 1;
        for (const auto& [p, e] : md.factors) {
            CHECK(is_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == md.value);
    }
}

TEST_CASE("primitive divisors exist except at 1 and 6") {
    auto range = primitive_divisor_check(2, 40);
    for (const auto& [m, has] : range) CHECK(has == (m != 6));
    CHECK_FALSE(mersenne_factor(1).has_primitive());
    // M_2 = 3 is primitive
    auto m2 = mersenne_factor(2);
    REQUIRE(m2.primitive_divisors.size() == 1);
    CHECK(m2.primitive_divisors[0] == 3);
    CHECK_THROWS_AS(primitive_divisor_check(1, 80), std::invalid_argument);
}

TEST_CASE("primitive divisors match the literal definition") {
    for (unsigned long m = 2; m <= 24; ++m) {
        auto md = mersenne_factor(m);
        for (const auto& [p, e] : md.factors) {
            bool divides_earlier = false;
            for (unsigned long n = 1; n < m; ++n) {
                Int Mn = mersenne_number(n);
                if (mpz_divisible_p(Mn.get_mpz_t(), p.get_mpz_t()))
                    divides_earlier = true;
            }
            bool listed = std::find(md.primitive_divisors.begin(),
                                    md.primitive_divisors.end(),
                                    p) != md.primitive_divisors.end();
            CHECK(listed == !divides_earlier);
        }
    }
}

TEST_CASE("divisibility M_n | M_m for n | m") {
    for (unsigned long m = 1; m <= 64; ++m) {
        Int Mm = mersenne_number(m);
        for (unsigned long n = 1; n <= m; ++n) {
            if (m % n != 0) continue;
            Int Mn = mersenne_number(n);
            CHECK(mpz_divisible_p(Mm.get_mpz_t(), Mn.get_mpz_t()));
        }
    }
}

TEST_CASE("alpha quadruples: pinned values and splits") {
    auto q21 = alpha_factors(2, 1);
    CHECK(q21.alpha == std::array<Int, 4>{7, 5, 3, 1});

    auto q31 = alpha_factors(3, 1);
    CHECK(q31.alpha == std::array<Int, 4>{11, 9, 7, 5});
    CHECK(q31.split[1].d == 1);  // 9 = 1 * 3^2
    CHECK(q31.split[1].w == 3);

    CHECK_THROWS_AS(alpha_factors(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(alpha_factors(1, 0), std::invalid_argument);
}

TEST_CASE("alpha quadruples: coprimality and the product identity") {
    for (unsigned long s = 2; s <= 60; ++s) {
        for (unsigned long t = 1; t < s; ++t) {
            auto q = alpha_factors(s, t);  // validates both internally
            for (int i = 0; i < 4; ++i) {
                CHECK(mpz_odd_p(q.alpha[i].get_mpz_t()));
                for (int j = i + 1; j < 4; ++j)
                    CHECK(gcd(q.alpha[i], q.alpha[j]) == 1);
            }
            // product equals the parametrizing LHS at (1, 1, 2s, 2t)
            CHECK(q.product() == param_cond2_lhs(1, 1, 2 * s, 2 * t));
            CHECK(q.product() == q.d() * q.v() * q.v());
        }
    }
}

TEST_CASE("alpha congruences mod M_m") {
    // worked example: m=3, s1=(5,2), s2=(8,5): differences divisible by 7
    auto a1 = alpha_factors(5, 2);
    auto a2 = alpha_factors(8, 5);
    for (int i = 0; i < 4; ++i) CHECK((a1.alpha[i] - a2.alpha[i]) % 7 == 0);

    for (unsigned long m : {1UL, 2UL, 3UL, 5UL, 6UL, 10UL})
        CHECK(alpha_congruence_check(m, 1000));
}

TEST_CASE("density bounds") {
    auto b6 = density_bound(6);
    CHECK(b6.h == 2);
    CHECK(b6.h_exact);
    CHECK(b6.bound == Rat(18));
    CHECK(b6.structural_lower == 2);  // equality at m = 6

    auto b30 = density_bound(30);
    CHECK(b30.h == 6);
    CHECK(b30.bound == Rat(225, 2));  // 900 / 8

    // over the cap: the structural lower bound drives the report
    auto b210 = density_bound(210);
    CHECK_FALSE(b210.h_exact);
    CHECK(b210.structural_lower == 14);
    CHECK(b210.h == 14);
    CHECK(b210.bound == Rat(11025, 32));  // 44100/128 reduced
}

TEST_CASE("structural lower bound on omega(M_m) up to 40, equality at 6") {
    for (unsigned long m = 1; m <= 40; ++m) {
        auto md = mersenne_factor(m);
        unsigned long omega_m = factorize(Int(m)).size();
        long lower = (1L << omega_m) - 2;
        CHECK(static_cast<long>(md.omega) >= lower);
        if (m == 6) CHECK(static_cast<long>(md.omega) == lower);
    }
}

TEST_CASE("class M witnesses") {
    auto ws = class_M_witnesses(10);
    REQUIRE(ws.size() == 9);
    CHECK(ws[0].s == 2);
    CHECK(ws[0].d == 3);
    CHECK(ws[0].w == 1);
    CHECK(ws[1].s == 3);
    CHECK(ws[1].d == 15);
    CHECK(ws[2].s == 4);
    CHECK(ws[2].d == 7);
    CHECK(ws[2].w == 3);
    for (const auto& w : ws)
        CHECK(w.d * w.w * w.w == (pow2(w.s - 1) - 1) * (pow2(w.s - 1) + 1));
    CHECK_THROWS_AS(class_M_witnesses(1), std::invalid_argument);
}

TEST_CASE("witness discriminants are confirmed by the classifier") {
    // from the t = 0 branch
    for (const auto& w : class_M_witnesses(8)) {
        if (w.d > 200 || w.d < 2) continue;
        if (mpz_fdiv_ui(w.d.get_mpz_t(), 8) == 1) continue;
        auto cls = classify_relevant_solutions(SquarefreeD::trusted(w.d));
        CHECK_FALSE(cls.orbits.empty());
    }
    // from alpha decompositions (both residue situations exercised)
    for (unsigned long s = 2; s <= 6; ++s) {
        for (unsigned long t = 1; t < s; ++t) {
            auto q = alpha_factors(s, t);
            Int d = q.d();
            if (d > 200 || d < 2) continue;
            auto cls = classify_relevant_solutions(SquarefreeD::trusted(d));
            if (mpz_fdiv_ui(d.get_mpz_t(), 8) != 1) {
                CHECK_FALSE(cls.orbits.empty());
            } else {
                // d = 1 (mod 8): the bounded search must find the witness too
                CHECK_FALSE(cls.orbits.empty());
            }
        }
    }
}
