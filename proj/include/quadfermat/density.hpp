// Squarefree sieving and counting, the inverse enumeration of discriminants d
// whose S-unit equation has a relevant solution, the empirical density report
// for the 5/6 statement, and the smooth-residue-class growth fit.
#pragma once

#include "quadfermat/sunit.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace qf {

// Indicator of squarefree d for 0 <= d <= X; entries 0 and 1 are cleared
// (the reports count d >= 2 only).
inline std::vector<uint8_t> squarefree_sieve(uint64_t X) {
    std::vector<uint8_t> sf(X + 1, 1);
    sf[0] = 0;
    if (X >= 1) sf[1] = 0;
    for (uint64_t p = 2; p * p <= X; ++p) {
        uint64_t p2 = p * p;
        for (uint64_t m = p2; m <= X; m += p2) sf[m] = 0;
    }
    return sf;
}

struct ApCount {
    uint64_t count;      // exact: squarefree 2 <= d <= X with d = r (mod N)
    double predicted;    // main term of the asymptotic count
};

// Exact squarefree count in the progression r (mod N) next to its predicted
// main term phi(N) / (s*phi(N/s)*N*prod_{q|N}(1-q^-2)) * (6/pi^2) * X, where
// s = gcd(r, N) must be squarefree.
inline ApCount sf_count_in_ap(unsigned long r, unsigned long N, uint64_t X) {
    if (N == 0) throw std::invalid_argument("sf_count_in_ap: N must be positive");
    r %= N;
    unsigned long s = std::gcd(r, N);
    if (s == 0) s = N;  // r = 0 residue class
    if (!is_squarefree(Int(s)))
        throw std::invalid_argument("sf_count_in_ap: gcd(r, N) must be squarefree");
    auto sf = squarefree_sieve(X);
    uint64_t count = 0;
    for (uint64_t d = 2; d <= X; ++d)
        if (sf[d] && d % N == r) ++count;

    double c = 1.0;
    for (const auto& [q, e] : factorize(Int(N))) {
        double qd = q.get_d();
        c *= 1.0 - 1.0 / (qd * qd);
    }
    auto phi = [](unsigned long n) {
        unsigned long result = n;
        for (const auto& [q, e] : factorize(Int(n)))
            result -= result / q.get_ui();
        return result;
    };
    double main_term = static_cast<double>(phi(N)) /
                       (static_cast<double>(s) * static_cast<double>(phi(N / s)) *
                        static_cast<double>(N) * c) *
                       (6.0 / (std::numbers::pi * std::numbers::pi)) *
                       static_cast<double>(X);
    return {count, main_term};
}

// Inverse enumeration of the parametrizing equation: every tuple
// (eta1, eta2, r1 <= r1_max, r2 <= r1) with positive left-hand side L is
// split as L = d*v^2, and d <= X is recorded with its witness. Witnesses are
// re-validated on insertion.
inline std::map<Int, ParamSolution> enumerate_C_prime(uint64_t X, unsigned long r1_max,
                                                      uint64_t seed = 1) {
    if (r1_max < 1) throw std::invalid_argument("enumerate_C_prime: r1_max must be >= 1");
    std::map<Int, ParamSolution> witnesses;
    for (unsigned long r1 = 0; r1 <= r1_max; ++r1) {
        for (unsigned long r2 = 0; r2 <= r1; ++r2) {
            for (int eta1 : {1, -1}) {
                for (int eta2 : {1, -1}) {
                    Int L = param_cond2_lhs(eta1, eta2, r1, r2);
                    if (L <= 0) continue;
                    SquarefreeSplit sp = squarefree_part(L, seed);
                    if (sp.d < 2 || sp.d > Int(X)) continue;
                    if (witnesses.count(sp.d)) continue;
                    ParamSolution p{eta1, eta2, r1, r2, sp.w, sp.d};
                    p.validate();
                    witnesses.emplace(sp.d, std::move(p));
                }
            }
        }
    }
    return witnesses;
}

// Empirical density data up to X. The detected-exception proxy: d counts
// toward the good set unless the bounded enumeration found a witness for it.
struct DensityReport {
    uint64_t X = 0;
    unsigned long r1_max = 0;
    uint64_t n_sf = 0;             // squarefree 2 <= d <= X
    uint64_t n_C_prime_found = 0;  // detected witnesses with d <= X
    uint64_t n_C = 0;              // n_sf - n_C_prime_found
    uint64_t n_D = 0;              // also excluding d = 5 (mod 8)
    Rat rel_density_C;             // n_C / n_sf
    Rat rel_density_D;             // n_D / n_sf
    std::map<Int, ParamSolution> witnesses;
    std::vector<std::string> flags;
};

inline DensityReport scan(uint64_t X, unsigned long r1_max = 40, uint64_t seed = 1) {
    if (X < 100) throw std::invalid_argument("scan: X must be >= 100");
    DensityReport rep;
    rep.X = X;
    rep.r1_max = r1_max;
    auto sf = squarefree_sieve(X);
    uint64_t n_sf = 0, n_not5 = 0;
    for (uint64_t d = 2; d <= X; ++d) {
        if (!sf[d]) continue;
        ++n_sf;
        if (d % 8 != 5) ++n_not5;
    }
    rep.n_sf = n_sf;
    rep.witnesses = enumerate_C_prime(X, r1_max, seed);
    uint64_t det_not5 = 0;
    for (const auto& [d, w] : rep.witnesses)
        if (mpz_fdiv_ui(d.get_mpz_t(), 8) != 5) ++det_not5;
    rep.n_C_prime_found = rep.witnesses.size();
    rep.n_C = n_sf - rep.n_C_prime_found;
    rep.n_D = n_not5 - det_not5;
    rep.rel_density_C = Rat(Int(rep.n_C), Int(rep.n_sf));
    rep.rel_density_C.canonicalize();
    rep.rel_density_D = Rat(Int(rep.n_D), Int(rep.n_sf));
    rep.rel_density_D.canonicalize();
    rep.flags = {
        "witness_search_bounded:r1_max=" + std::to_string(r1_max),
        "undetected_exceptions_possible_for_d=1_mod_8",
    };
    return rep;
}

struct SmoothCount {
    uint64_t count;             // d <= X with every prime factor in the classes
    double fitted_exponent;     // least-squares exponent of log X
    double predicted_exponent;  // 1 - m/phi(N)
};

// Count of 2 <= d <= X all of whose prime factors lie in the given residue
// classes mod N, with the growth exponent fitted over a geometric ladder of
// cutoffs and reported next to 1 - m/phi(N).
inline SmoothCount smooth_residue_count(const std::vector<unsigned long>& residues,
                                        unsigned long N, uint64_t X) {
    if (N == 0) throw std::invalid_argument("smooth_residue_count: N must be positive");
    std::vector<unsigned long> rs;
    for (unsigned long r : residues) {
        unsigned long rr = r % N;
        if (std::gcd(rr, N) != 1)
            throw std::invalid_argument("smooth_residue_count: residues must be coprime to N");
        if (std::find(rs.begin(), rs.end(), rr) != rs.end())
            throw std::invalid_argument("smooth_residue_count: residues must be distinct mod N");
        rs.push_back(rr);
    }

    // smallest-prime-factor sieve
    std::vector<uint32_t> spf(X + 1, 0);
    for (uint64_t i = 2; i <= X; ++i) {
        if (spf[i] != 0) continue;
        for (uint64_t m = i; m <= X; m += i)
            if (spf[m] == 0) spf[m] = static_cast<uint32_t>(i);
    }
    std::vector<char> in_class(N, 0);
    for (unsigned long r : rs) in_class[r] = 1;

    std::vector<uint64_t> cum(X + 1, 0);
    for (uint64_t d = 2; d <= X; ++d) {
        uint64_t n = d;
        bool ok = true;
        while (n > 1) {
            uint32_t p = spf[n];
            if (!in_class[p % N]) {
                ok = false;
                break;
            }
            while (n % p == 0) n /= p;
        }
        cum[d] = cum[d - 1] + (ok ? 1 : 0);
    }

    // fit log(count/Xi) = log(gamma) - e * log log Xi over Xi = X / 2^i
    std::vector<std::pair<double, double>> pts;
    for (uint64_t Xi = X; Xi >= 1000 && pts.size() < 12; Xi /= 2) {
        uint64_t c = cum[Xi];
        if (c == 0) continue;
        pts.emplace_back(std::log(std::log(static_cast<double>(Xi))),
                         std::log(static_cast<double>(c) / static_cast<double>(Xi)));
    }
    double fitted = std::numeric_limits<double>::quiet_NaN();
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double n = static_cast<double>(pts.size());
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        fitted = -slope;
    }
    auto phi = [](unsigned long n) {
        unsigned long result = n;
        for (const auto& [q, e] : factorize(Int(n)))
            result -= result / q.get_ui();
        return result;
    };
    double predicted = 1.0 - static_cast<double>(rs.size()) / static_cast<double>(phi(N));
    return {cum[X], fitted, predicted};
}

}  // namespace qf
