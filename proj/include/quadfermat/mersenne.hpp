// Mersenne-number toolkit: factorizations of M_m = 2^m - 1 with primitive
// divisors, the four-factor quadruples 2^s +- 2^t +- 1 with their squarefree
// splits, the congruence test behind the Mersenne sieve, and the resulting
// density bounds.
#pragma once

#include "quadfermat/arith.hpp"

#include <array>
#include <set>
#include <random>

namespace qf {

inline constexpr unsigned long kMersenneFactorCap = 64;

inline Int mersenne_number(unsigned long m) { return pow2(m) - 1; }

struct MersenneData {
    unsigned long m = 0;
    Int value;                                      // 2^m - 1
    std::vector<std::pair<Int, unsigned>> factors;  // all prime when complete
    bool complete = true;
    unsigned long omega = 0;                 // h_m; a lower bound when !complete
    std::vector<Int> primitive_divisors;     // computed only when complete
    bool has_primitive() const { return !primitive_divisors.empty(); }
};

// Factorization of M_m. Full for m <= cap; beyond the cap an explicit
// override extracts subdivisor primes and small factors only, and when the
// remainder stays composite the result is flagged complete = false, with
// omega a lower bound for h_m.
inline MersenneData mersenne_factor(unsigned long m, bool allow_partial = false,
                                    unsigned long cap = kMersenneFactorCap) {
    if (m < 1) throw std::invalid_argument("mersenne_factor: m must be >= 1");
    if (m > cap && !allow_partial)
        throw std::invalid_argument(
            "mersenne_factor: m exceeds the factorization cap (pass allow_partial)");
    MersenneData md;
    md.m = m;
    md.value = mersenne_number(m);
    if (md.value == 1) return md;  // m = 1

    if (m <= cap) {
        md.factors = factorize(md.value);
        md.complete = true;
    } else {
        // Partial mode: primes of the fully factorable subdivisor Mersenne
        // numbers (M_n | M_m for n | m), then trial division on what remains.
        md.complete = false;
        Int cof = md.value;
        std::set<Int> known;
        for (unsigned long n = 2; n <= m / 2 && n <= cap; ++n) {
            if (m % n != 0) continue;
            for (const auto& [p, e] : factorize(mersenne_number(n))) known.insert(p);
        }
        for (const Int& p : known) {
            unsigned e = 0;
            while (mpz_divisible_p(cof.get_mpz_t(), p.get_mpz_t())) {
                ++e;
                mpz_divexact(cof.get_mpz_t(), cof.get_mpz_t(), p.get_mpz_t());
            }
            if (e > 0) md.factors.emplace_back(p, e);
        }
        for (uint32_t p : small_primes()) {
            if (Int(p) * p > cof) break;
            if (mpz_divisible_ui_p(cof.get_mpz_t(), p)) {
                unsigned e = 0;
                do {
                    ++e;
                    mpz_divexact_ui(cof.get_mpz_t(), cof.get_mpz_t(), p);
                } while (mpz_divisible_ui_p(cof.get_mpz_t(), p));
                md.factors.emplace_back(Int(p), e);
            }
        }
        if (cof > 1) {
            md.factors.emplace_back(cof, 1u);
            md.complete = is_prime(cof);  // fully factored after all
        } else {
            md.complete = true;
        }
        std::sort(md.factors.begin(), md.factors.end());
    }
    md.omega = md.factors.size();

    if (md.complete) {
        // p is primitive iff it divides no M_(m/q), q prime dividing m
        std::vector<unsigned long> maximal_proper;
        for (const auto& [q, e] : factorize(Int(m)))
            maximal_proper.push_back(m / q.get_ui());
        for (const auto& [p, e] : md.factors) {
            bool primitive = true;
            for (unsigned long n : maximal_proper) {
                Int mn = mersenne_number(n);
                if (mpz_divisible_p(mn.get_mpz_t(), p.get_mpz_t())) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) md.primitive_divisors.push_back(p);
        }
    }
    return md;
}

// has_primitive over a range; false exactly at m in {1, 6}.
inline std::vector<std::pair<unsigned long, bool>> primitive_divisor_check(
    unsigned long m_lo, unsigned long m_hi, unsigned long cap = kMersenneFactorCap) {
    if (m_lo < 1 || m_hi < m_lo || m_hi > cap)
        throw std::invalid_argument("primitive_divisor_check: range must lie within the cap");
    std::vector<std::pair<unsigned long, bool>> out;
    for (unsigned long m = m_lo; m <= m_hi; ++m)
        out.emplace_back(m, mersenne_factor(m).has_primitive());
    return out;
}

// The quadruple 2^s + 2^t + 1, 2^s + 2^t - 1, 2^s - 2^t + 1, 2^s - 2^t - 1
// for s > t > 0: odd, pairwise coprime, with squarefree splits
// alpha_i = d_i * v_i^2; their product is the parametrizing left-hand side at
// (eta1, eta2, r1, r2) = (1, 1, 2s, 2t).
struct AlphaQuadruple {
    unsigned long s = 0;
    unsigned long t = 0;
    std::array<Int, 4> alpha;
    std::array<SquarefreeSplit, 4> split;

    Int product() const { return alpha[0] * alpha[1] * alpha[2] * alpha[3]; }
    Int d() const { return split[0].d * split[1].d * split[2].d * split[3].d; }
    Int v() const { return split[0].w * split[1].w * split[2].w * split[3].w; }
};

inline std::array<Int, 4> alpha_values(unsigned long s, unsigned long t) {
    if (!(s > t && t > 0))
        throw std::invalid_argument("alpha_values: need s > t > 0");
    Int a = pow2(s), b = pow2(t);
    return {a + b + 1, a + b - 1, a - b + 1, a - b - 1};
}

inline AlphaQuadruple alpha_factors(unsigned long s, unsigned long t) {
    AlphaQuadruple q;
    q.s = s;
    q.t = t;
    q.alpha = alpha_values(s, t);
    Int a = pow2(s), b = pow2(t);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j)
            if (gcd(q.alpha[i], q.alpha[j]) != 1)
                throw std::logic_error("alpha_factors: quadruple not coprime");
        q.split[i] = squarefree_part(q.alpha[i]);
    }
    Int lhs = a * a - b * b + 1;  // trace term at (1, 1, 2s, 2t)
    if (q.product() != lhs * lhs - 4 * a * a)
        throw std::logic_error("alpha_factors: product identity fails");
    return q;
}

// Congruence stability of the quadruple: if (s1, t1) = (s2, t2) mod m
// componentwise then alpha_i agree mod M_m. Randomized check, deterministic
// for a given seed.
inline bool alpha_congruence_check(unsigned long m, unsigned trials, uint64_t seed = 7) {
    if (m < 1) throw std::invalid_argument("alpha_congruence_check: m must be >= 1");
    Int Mm = mersenne_number(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned long> pick_t(1, 30);
    std::uniform_int_distribution<unsigned long> gap(1, 30);
    std::uniform_int_distribution<unsigned long> mult(0, 5);
    for (unsigned i = 0; i < trials; ++i) {
        unsigned long t1 = pick_t(rng);
        unsigned long s1 = t1 + gap(rng);
        unsigned long t2 = t1 + m * mult(rng);
        unsigned long s2 = s1 + m * mult(rng);
        while (s2 <= t2) s2 += m;  // keep the pair admissible within its class
        auto a1 = alpha_values(s1, t1);
        auto a2 = alpha_values(s2, t2);
        for (int k = 0; k < 4; ++k) {
            Int diff = a1[k] - a2[k];
            if (!mpz_divisible_p(diff.get_mpz_t(), Mm.get_mpz_t())) return false;
        }
    }
    return true;
}

// The sieve bound m^2 / 2^(h_m/2) as an exact rational (rounded to
// m^2 / 2^ceil(h/2), which is the integral form the counting argument
// yields), next to the structural lower bound h_m >= 2^omega(m) - 2.
struct DensityBound {
    unsigned long m = 0;
    bool h_exact = true;  // false when h is the structural lower bound only
    unsigned long h = 0;
    Rat bound;
    long structural_lower = 0;  // 2^omega(m) - 2, from primitive divisors of subdivisor values
};

inline DensityBound density_bound(unsigned long m, unsigned long cap = kMersenneFactorCap) {
    if (m < 1) throw std::invalid_argument("density_bound: m must be >= 1");
    DensityBound b;
    b.m = m;
    unsigned long omega_m = factorize(Int(m)).size();
    b.structural_lower = (1L << omega_m) - 2;
    if (m <= cap) {
        b.h = mersenne_factor(m).omega;
        b.h_exact = true;
    } else {
        b.h = static_cast<unsigned long>(std::max(0L, b.structural_lower));
        b.h_exact = false;
    }
    b.bound = Rat(Int(m) * m, pow2((b.h + 1) / 2));
    b.bound.canonicalize();
    return b;
}

// Witnesses for the t = 0 branch: (2^(s-1) - 1)(2^(s-1) + 1) = d * w^2.
struct ClassMWitness {
    unsigned long s;
    Int d;
    Int w;
};

inline std::vector<ClassMWitness> class_M_witnesses(unsigned long s_max) {
    if (s_max < 2) throw std::invalid_argument("class_M_witnesses: s_max must be >= 2");
    std::vector<ClassMWitness> out;
    for (unsigned long s = 2; s <= s_max; ++s) {
        Int n = (pow2(s - 1) - 1) * (pow2(s - 1) + 1);
        SquarefreeSplit sp = squarefree_part(n);
        out.push_back({s, sp.d, sp.w});
    }
    return out;
}

}  // namespace qf
