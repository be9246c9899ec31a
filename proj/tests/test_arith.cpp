#include "quadfermat/arith.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qf;

TEST_CASE("v2 on integers and rationals") {
    CHECK(v2(Int(1)) == 0);
    CHECK(v2(Int(-48)) == 4);
    CHECK(v2(pow2(77)) == 77);
    CHECK(v2(Rat(3, 8)) == -3);
    CHECK(v2(Rat(-40, 5)) == 3);
    CHECK_THROWS_AS(v2(Int(0)), std::domain_error);
}

TEST_CASE("power-of-two detection") {
    CHECK(is_pm_power_of_2(Rat(1)));
    CHECK(is_pm_power_of_2(Rat(-32)));
    CHECK(is_pm_power_of_2(Rat(1, 2)));
    CHECK(is_pm_power_of_2(Rat(-1, 64)));
    CHECK_FALSE(is_pm_power_of_2(Rat(3)));
    CHECK_FALSE(is_pm_power_of_2(Rat(6, 2)));
    CHECK_FALSE(is_pm_power_of_2(Rat(0)));
}

TEST_CASE("factorize small and medium values") {
    auto fs = factorize(Int(2 * 2 * 2 * 3 * 5 * 13));
    REQUIRE(fs.size() == 4);
    CHECK(fs[0] == std::pair<Int, unsigned>{2, 3});
    CHECK(fs[3] == std::pair<Int, unsigned>{13, 1});

    CHECK(factorize(Int(1)).empty());

    // semiprime of two 31-bit primes: exercises the rho path
    Int n = Int("2147483647") * Int("2147483629");
    auto sp = factorize(n);
    REQUIRE(sp.size() == 2);
    CHECK(sp[0].first == Int("2147483629"));
    CHECK(sp[1].first == Int("2147483647"));
}

TEST_CASE("factorize round-trips on random inputs") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        Int n = 1;
        int parts = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < parts; ++k) n *= Int(1 + rng() % 1000000);
        Int prod = 1;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (unsigned j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("squarefree_part examples") {
    auto a = squarefree_part(Int(63));
    CHECK(a.d == 7);
    CHECK(a.w == 3);
    auto b = squarefree_part(Int(1));
    CHECK(b.d == 1);
    CHECK(b.w == 1);
    auto c = squarefree_part(pow2(10) * 3);
    CHECK(c.d == 3);
    CHECK(c.w == 32);
    CHECK_THROWS_AS(squarefree_part(Int(0)), std::invalid_argument);
}

TEST_CASE("squarefree_part is idempotent on its first output") {
    std::mt19937_64 rng(777);
    for (int i = 0; i < 100; ++i) {
        Int n = Int(2 + rng() % 100000) * Int(2 + rng() % 10000);
        auto sp = squarefree_part(n);
        CHECK(sp.d * sp.w * sp.w == n);
        auto again = squarefree_part(sp.d);
        CHECK(again.d == sp.d);
        CHECK(again.w == 1);
    }
}

TEST_CASE("is_squarefree and square divisor reporting") {
    CHECK(is_squarefree(Int(2)));
    CHECK(is_squarefree(Int(30)));
    CHECK_FALSE(is_squarefree(Int(12)));
    CHECK(smallest_square_prime_divisor(Int(12)) == 2);
    CHECK(smallest_square_prime_divisor(Int(45)) == 3);
    CHECK(smallest_square_prime_divisor(Int(35)) == 0);
}

TEST_CASE("u128 square detection agrees with GMP") {
    std::mt19937_64 rng(999);
    for (int i = 0; i < 20000; ++i) {
        uint64_t x = rng() % (uint64_t(1) << 21);
        unsigned __int128 n;
        if (i % 2 == 0) {
            n = (unsigned __int128)x * x;
        } else {
            n = (unsigned __int128)(rng() % (uint64_t(1) << 42));
        }
        uint64_t root = 0;
        bool got = is_square_u128(n, &root);
        Int m = Int(static_cast<unsigned long>(n >> 64)) * pow2(64) +
                Int(static_cast<unsigned long>(n & 0xffffffffffffffffULL));
        CHECK(got == is_perfect_square(m));
        if (got) CHECK((unsigned __int128)root * root == n);
    }
}
