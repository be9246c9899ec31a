// Exact integer arithmetic helpers on top of GMP: 2-adic valuations,
// perfect-square tests, deterministic factorization (trial division up to
// 10^6, then Brent's rho), and squarefree decomposition n = d*w^2.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qf {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow2(unsigned long k) {
    Int r = 1;
    r <<= k;
    return r;
}

// v_2(n) for n != 0.
inline long v2(const Int& n) {
    if (n == 0) throw std::domain_error("v2: zero has no finite valuation");
    return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
}

// v_2 of a nonzero rational.
inline long v2(const Rat& q) {
    if (q == 0) throw std::domain_error("v2: zero has no finite valuation");
    return v2(Int(q.get_num())) - v2(Int(q.get_den()));
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// |q| = 2^k for some integer k (sign ignored)?
inline bool is_pm_power_of_2(const Rat& q) {
    Int num = q.get_num();
    if (num == 0) return false;
    num = abs(num);
    Int den = q.get_den();
    return mpz_popcount(num.get_mpz_t()) == 1 && mpz_popcount(den.get_mpz_t()) == 1;
}

inline const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t limit = 1'000'000;
        std::vector<bool> comp(limit + 1, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i <= limit; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j <= limit; j += i) comp[j] = true;
        }
        return ps;
    }();
    return primes;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Brent's cycle-finding rho with batched gcds. n must be odd, composite,
// and not a perfect power of a prime found elsewhere. Deterministic for a
// given (n, seed).
inline Int pollard_brent(const Int& n, uint64_t seed) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    uint64_t state = seed ^ 0xa0761d6478bd642fULL;
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int c = Int(1 + detail::splitmix64(state) % 255);
        Int x = Int(2 + detail::splitmix64(state) % 255);
        Int y = x, q = 1, g = 1, xs = 0;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                xs = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
            if (r > (1UL << 28)) break;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                xs = (xs * xs + c) % n;
                g = gcd(abs(x - xs), n);
            }
        }
        if (g != 1 && g != n) return g;
    }
    throw std::runtime_error("pollard_brent: failed to split composite");
}

inline void factor_into(const Int& n, std::vector<Int>& out, uint64_t seed);

inline void factor_cofactor(const Int& cof, std::vector<Int>& out, uint64_t seed) {
    if (cof == 1) return;
    if (is_prime(cof)) {
        out.push_back(cof);
        return;
    }
    // perfect powers first: rho degrades on them
    if (mpz_perfect_power_p(cof.get_mpz_t())) {
        for (unsigned long e = 2; e <= mpz_sizeinbase(cof.get_mpz_t(), 2); ++e) {
            Int root;
            if (mpz_root(root.get_mpz_t(), cof.get_mpz_t(), e)) {
                std::vector<Int> base;
                factor_into(root, base, seed);
                for (unsigned long i = 0; i < e; ++i)
                    out.insert(out.end(), base.begin(), base.end());
                return;
            }
        }
    }
    Int g = pollard_brent(cof, seed);
    factor_into(g, out, seed + 1);
    factor_into(cof / g, out, seed + 2);
}

inline void factor_into(const Int& n, std::vector<Int>& out, uint64_t seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    factor_cofactor(n, out, seed);
}

}  // namespace detail

// Prime factorization of n >= 1, as sorted (prime, exponent) pairs.
// Deterministic: trial division by primes below 10^6, then Brent rho
// splitting seeded by `seed`.
inline std::vector<std::pair<Int, unsigned>> factorize(const Int& n, uint64_t seed = 1) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<Int> primes_found;
    Int cof = n;
    const auto& ps = small_primes();
    size_t next_check = 512;
    for (size_t i = 0; i < ps.size(); ++i) {
        uint32_t p = ps[i];
        if (Int(p) * p > cof) break;
        if (mpz_divisible_ui_p(cof.get_mpz_t(), p)) {
            do {
                primes_found.push_back(Int(p));
                mpz_divexact_ui(cof.get_mpz_t(), cof.get_mpz_t(), p);
            } while (mpz_divisible_ui_p(cof.get_mpz_t(), p));
            if (cof == 1 || is_prime(cof)) break;
        } else if (i == next_check) {
            // large prime cofactors are common; bail out of the scan early
            if (is_prime(cof)) break;
            next_check *= 8;
        }
    }
    detail::factor_cofactor(cof, primes_found, seed);
    std::sort(primes_found.begin(), primes_found.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (const Int& p : primes_found) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1u);
    }
    return out;
}

struct SquarefreeSplit {
    Int d;  // squarefree part
    Int w;  // n = d * w^2
};

// n >= 1 decomposed as d * w^2 with d squarefree.
inline SquarefreeSplit squarefree_part(const Int& n, uint64_t seed = 1) {
    if (n < 1) throw std::invalid_argument("squarefree_part: n must be >= 1");
    SquarefreeSplit r{1, 1};
    for (const auto& [p, e] : factorize(n, seed)) {
        if (e % 2 == 1) r.d *= p;
        for (unsigned i = 0; i < e / 2; ++i) r.w *= p;
    }
    return r;
}

inline bool is_squarefree(const Int& n) {
    if (n < 1) return false;
    return squarefree_part(n).w == 1;
}

// Smallest prime whose square divides n, or 0 if n is squarefree.
inline Int smallest_square_prime_divisor(const Int& n) {
    for (const auto& [p, e] : factorize(n))
        if (e >= 2) return p;
    return Int(0);
}

// Fast perfect-square test for the search loops; values fit in 128 bits.
inline bool is_square_u128(unsigned __int128 n, uint64_t* root = nullptr) {
    // quick rejection mod 64
    static constexpr uint64_t mask64 = 0x202021202030213ULL;
    if (!((mask64 >> (n & 63)) & 1)) return false;
    unsigned __int128 r;
    if (n >> 62) {
        // Newton from a double estimate
        double est = std::sqrt(static_cast<double>(n));
        r = static_cast<unsigned __int128>(est);
        for (int i = 0; i < 4; ++i) {
            if (r == 0) break;
            r = (r + n / r) >> 1;
        }
        while (r * r > n) --r;
        while ((r + 1) * (r + 1) <= n) ++r;
    } else {
        uint64_t small = static_cast<uint64_t>(n);
        uint64_t s = static_cast<uint64_t>(std::sqrt(static_cast<double>(small)));
        while (s > 0 && s * s > small) --s;
        while ((s + 1) * (s + 1) <= small) ++s;
        r = s;
    }
    if (r * r != n) return false;
    if (root) *root = static_cast<uint64_t>(r);
    return true;
}

}  // namespace qf
