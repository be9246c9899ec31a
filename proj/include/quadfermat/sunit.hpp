// The S-unit equation lambda + mu = 1 in Q(sqrt(d)), S = primes above 2:
// the six-map orbit action, the integer parametrization
//   (eta1*2^r1 - eta2*2^r2 + 1)^2 - eta1*2^(r1+2) = d*v^2,
// the closed-form classification of relevant solutions by residue class of d,
// and an independent brute-force search used as an oracle in the tests.
#pragma once

#include "quadfermat/quadfield.hpp"

#include <array>
#include <map>
#include <set>
#include <tuple>

namespace qf {

// One solution (lambda, mu), lambda + mu = 1, both with norm +-2^k.
// The three rational solutions (2,-1), (-1,2), (1/2,1/2) are "irrelevant";
// all others are "relevant".
struct SUnitSolution {
    QuadElement lambda;
    QuadElement mu;
    bool relevant;
};

inline bool is_s_unit(const QuadElement& e) {
    return !e.is_zero() && is_pm_power_of_2(e.norm());
}

inline SUnitSolution make_sunit_solution(const QuadElement& lambda) {
    if (lambda.is_zero() || lambda.is_one())
        throw std::invalid_argument("make_sunit_solution: lambda in {0,1}");
    QuadElement mu = QuadElement::one(lambda.d()) - lambda;
    if (!is_s_unit(lambda) || !is_s_unit(mu))
        throw std::invalid_argument("make_sunit_solution: norms are not +-2^k");
    return SUnitSolution{lambda, mu, !lambda.is_rational()};
}

inline SUnitSolution galois_conjugate(const SUnitSolution& s) {
    return SUnitSolution{s.lambda.conjugate(), s.mu.conjugate(), s.relevant};
}

// The six images z, 1/z, 1-z, 1/(1-z), z/(z-1), (z-1)/z of lambda, each
// paired with its complement; a multiset (repeats kept).
inline std::array<SUnitSolution, 6> s3_orbit(const SUnitSolution& sol) {
    const QuadElement& z = sol.lambda;
    if (z.is_zero() || z.is_one())
        throw std::invalid_argument("s3_orbit: degenerate lambda");
    QuadElement one = QuadElement::one(z.d());
    QuadElement zm1 = z - one;
    return {make_sunit_solution(z),
            make_sunit_solution(one / z),
            make_sunit_solution(one - z),
            make_sunit_solution(one / (one - z)),
            make_sunit_solution(z / zm1),
            make_sunit_solution(zm1 / z)};
}

// The integer data (eta1, eta2, r1, r2, v) of an integral relevant solution:
// lambda = (eta1*2^r1 - eta2*2^r2 + 1 + v*sqrt(d))/2 with norms
// N(lambda) = eta1*2^r1 and N(mu) = eta2*2^r2.
struct ParamSolution {
    int eta1 = 1;
    int eta2 = 1;
    unsigned long r1 = 0;
    unsigned long r2 = 0;
    Int v;
    Int d;

    // trace term eta1*2^r1 - eta2*2^r2 + 1
    Int trace_term() const { return eta1 * pow2(r1) - eta2 * pow2(r2) + 1; }
    Int cond2_lhs() const {
        Int a = trace_term();
        return a * a - eta1 * pow2(r1 + 2);
    }
    Int cond3_lhs() const {
        Int b = -trace_term() + 2;
        return b * b - eta2 * pow2(r2 + 2);
    }

    void validate() const {
        if ((eta1 != 1 && eta1 != -1) || (eta2 != 1 && eta2 != -1))
            throw std::invalid_argument("ParamSolution: eta must be +-1");
        if (r1 < r2) throw std::invalid_argument("ParamSolution: need r1 >= r2");
        if (v == 0) throw std::invalid_argument("ParamSolution: v must be nonzero");
        if (mpz_fdiv_ui(d.get_mpz_t(), 8) != 1 && r2 != 0)
            throw std::invalid_argument("ParamSolution: r2 must be 0 unless d = 1 (mod 8)");
        if (cond2_lhs() != d * v * v)
            throw std::invalid_argument("ParamSolution: defining equation fails");
    }

    std::tuple<unsigned long, unsigned long, int, int, Int> key() const {
        return {r1, r2, eta1, eta2, v};
    }
    bool operator<(const ParamSolution& o) const { return key() < o.key(); }
    bool operator==(const ParamSolution& o) const {
        return key() == o.key() && d == o.d;
    }
};

inline Int param_cond2_lhs(int eta1, int eta2, unsigned long r1, unsigned long r2) {
    Int a = eta1 * pow2(r1) - eta2 * pow2(r2) + 1;
    return a * a - eta1 * pow2(r1 + 2);
}

inline SUnitSolution param_to_solution(const ParamSolution& p) {
    p.validate();
    SquarefreeD d = SquarefreeD::trusted(p.d);
    QuadElement lambda(p.trace_term(), p.v, d, 2);
    return make_sunit_solution(lambda);
}

// Inverse of param_to_solution on integral relevant solutions; lambda and mu
// are swapped if needed to enforce r1 >= r2.
inline ParamSolution solution_to_param(const SUnitSolution& sol) {
    if (!sol.relevant)
        throw std::invalid_argument("solution_to_param: irrelevant (rational) solution");
    if (!sol.lambda.is_integral() || !sol.mu.is_integral())
        throw std::invalid_argument("solution_to_param: solution is not integral");
    const QuadElement* lam = &sol.lambda;
    const QuadElement* mu = &sol.mu;
    Int nl = Int(lam->norm().get_num());
    Int nm = Int(mu->norm().get_num());
    if (abs(nl) < abs(nm)) {
        std::swap(lam, mu);
        std::swap(nl, nm);
    }
    ParamSolution p;
    p.eta1 = nl > 0 ? 1 : -1;
    p.eta2 = nm > 0 ? 1 : -1;
    p.r1 = static_cast<unsigned long>(v2(nl));
    p.r2 = static_cast<unsigned long>(v2(nm));
    // lambda - conj(lambda) = v*sqrt(d), and den divides 2
    p.v = 2 * lam->y() / lam->den();
    p.d = lam->d().value();
    p.validate();
    return p;
}

// An S3-translate of a relevant solution with both coordinates in O_K;
// one always exists. Deterministic: minimal integral translate.
inline SUnitSolution normalize_integral(const SUnitSolution& sol) {
    if (!sol.relevant)
        throw std::invalid_argument("normalize_integral: irrelevant solution");
    std::optional<SUnitSolution> best;
    for (const SUnitSolution& t : s3_orbit(sol)) {
        if (!t.lambda.is_integral() || !t.mu.is_integral()) continue;
        if (!best || t.lambda < best->lambda) best = t;
    }
    if (!best)
        throw std::logic_error("normalize_integral: no integral translate found");
    return *best;
}

// A full S3 x Galois equivalence class of relevant solutions, keyed by the
// minimal parametrization among its integral members.
struct OrbitClass {
    SUnitSolution representative;
    ParamSolution rep_param;
    std::vector<SUnitSolution> members;  // distinct, sorted by lambda
};

inline OrbitClass orbit_class_of(const SUnitSolution& sol) {
    if (!sol.relevant)
        throw std::invalid_argument("orbit_class_of: irrelevant solution");
    std::set<QuadElement> lambdas;
    for (const SUnitSolution& t : s3_orbit(sol)) {
        lambdas.insert(t.lambda);
        lambdas.insert(t.lambda.conjugate());
    }
    OrbitClass oc{sol, ParamSolution{}, {}};
    std::optional<ParamSolution> best;
    for (const QuadElement& lam : lambdas) {
        SUnitSolution member = make_sunit_solution(lam);
        oc.members.push_back(member);
        if (!lam.is_integral() || lam.is_rational()) continue;
        QuadElement mu = member.mu;
        if (!mu.is_integral()) continue;
        Int nl = Int(lam.norm().get_num());
        Int nm = Int(mu.norm().get_num());
        if (abs(nl) < abs(nm)) continue;  // the swapped pair is another member
        Int v = 2 * lam.y() / lam.den();
        if (v <= 0) continue;  // the Galois conjugate is another member
        ParamSolution p;
        p.eta1 = nl > 0 ? 1 : -1;
        p.eta2 = nm > 0 ? 1 : -1;
        p.r1 = static_cast<unsigned long>(v2(nl));
        p.r2 = static_cast<unsigned long>(v2(nm));
        p.v = v;
        p.d = lam.d().value();
        if (!best || p < *best) best = p;
    }
    if (!best)
        throw std::logic_error("orbit_class_of: no canonical integral member");
    oc.rep_param = *best;
    oc.representative = param_to_solution(*best);
    return oc;
}

inline bool same_orbit(const OrbitClass& a, const OrbitClass& b) {
    return a.rep_param == b.rep_param;
}

// All (s, w), 2 <= s <= s_max, w > 0, with 4^s + c = d*w^2; c in {-1,+2,-2}.
inline std::vector<std::pair<unsigned long, Int>> solve_exponential_family(
    int c, const SquarefreeD& d, unsigned long s_max) {
    if (c != -1 && c != 2 && c != -2)
        throw std::invalid_argument("solve_exponential_family: c must be -1, +2 or -2");
    std::vector<std::pair<unsigned long, Int>> out;
    for (unsigned long s = 2; s <= s_max; ++s) {
        Int n = pow2(2 * s) + c;
        if (!mpz_divisible_p(n.get_mpz_t(), d.value().get_mpz_t())) continue;
        Int q = n / d.value();
        if (q > 0 && is_perfect_square(q)) out.emplace_back(s, isqrt(q));
    }
    return out;
}

struct Classification {
    std::vector<OrbitClass> orbits;  // sorted by canonical parametrization
    bool complete = false;
    unsigned long r1_bound = 0;  // direct search bound used
    unsigned long s_max = 0;     // family search bound used (0 if no family)
};

namespace detail {

// Direct search over (eta1, eta2, r1 <= r1_max, r2 <= r2_max(r1)) for tuples
// with cond2_lhs = d*v^2.
inline std::vector<ParamSolution> param_search(const SquarefreeD& d,
                                               unsigned long r1_max,
                                               bool allow_r2) {
    std::vector<ParamSolution> found;
    for (unsigned long r1 = 0; r1 <= r1_max; ++r1) {
        unsigned long r2_max = allow_r2 ? r1 : 0;
        for (unsigned long r2 = 0; r2 <= r2_max; ++r2) {
            for (int eta1 : {1, -1}) {
                for (int eta2 : {1, -1}) {
                    Int lhs = param_cond2_lhs(eta1, eta2, r1, r2);
                    if (lhs <= 0) continue;
                    if (!mpz_divisible_p(lhs.get_mpz_t(), d.value().get_mpz_t()))
                        continue;
                    Int q = lhs / d.value();
                    if (!is_perfect_square(q)) continue;
                    Int v = isqrt(q);
                    if (v == 0) continue;
                    ParamSolution p{eta1, eta2, r1, r2, v, d.value()};
                    p.validate();
                    found.push_back(p);
                }
            }
        }
    }
    return found;
}

inline std::vector<OrbitClass> group_into_orbits(const std::vector<ParamSolution>& raw) {
    std::map<std::tuple<unsigned long, unsigned long, int, int, Int>, OrbitClass> classes;
    for (const ParamSolution& p : raw) {
        OrbitClass oc = orbit_class_of(param_to_solution(p));
        classes.emplace(oc.rep_param.key(), std::move(oc));
    }
    std::vector<OrbitClass> out;
    out.reserve(classes.size());
    for (auto& [k, oc] : classes) out.push_back(std::move(oc));
    return out;
}

// Frozen classification for d in {2, 3, 5, 6}; the small-r1 search must
// rederive exactly these.
inline std::vector<ParamSolution> table_small_d(const Int& d) {
    auto P = [&](unsigned long r1, unsigned long r2, int e1, int e2, long v) {
        return ParamSolution{e1, e2, r1, r2, Int(v), d};
    };
    if (d == 2)
        return {P(1, 0, -1, -1, 2), P(2, 0, -1, 1, 4), P(3, 0, 1, 1, 4),
                P(5, 0, -1, 1, 24)};
    if (d == 3) return {P(1, 0, -1, 1, 2), P(4, 0, 1, 1, 8)};
    if (d == 5) return {P(0, 0, -1, -1, 1), P(2, 0, -1, -1, 2), P(4, 0, -1, 1, 8)};
    if (d == 6) return {P(3, 0, -1, 1, 4)};
    return {};
}

}  // namespace detail

// The relevant solutions up to S3 x Galois. Exact (closed-form) for
// d != 1 (mod 8): explicit lists for d in {2,3,5,6}, empty for
// d = 3,5 (mod 8) and d = 6,10 (mod 16) otherwise, and the exponential
// families 4^s + c = d*w^2 for d = 7 (mod 8) (c=-1), d = 2 (mod 16) (c=+2),
// d = 14 (mod 16) (c=-2). For d = 1 (mod 8): bounded direct search,
// never marked complete.
inline Classification classify_relevant_solutions(const SquarefreeD& d,
                                                  unsigned long search_bound = 40,
                                                  unsigned long s_max = 64) {
    Classification out;
    long m8 = d.mod(8);
    if (m8 == 1) {
        out.complete = false;
        out.r1_bound = search_bound;
        out.orbits = detail::group_into_orbits(
            detail::param_search(d, search_bound, /*allow_r2=*/true));
        return out;
    }

    // d != 1 (mod 8): r2 = 0 throughout. Solutions split into the small
    // range r1 <= 5 plus one exponential family per residue class.
    std::vector<ParamSolution> raw = detail::param_search(d, 5, /*allow_r2=*/false);

    std::vector<ParamSolution> frozen = detail::table_small_d(d.value());
    if (!frozen.empty() || d.value() <= 6) {
        auto derived = detail::group_into_orbits(raw);
        auto expected = detail::group_into_orbits(frozen);
        bool agree = derived.size() == expected.size();
        for (size_t i = 0; agree && i < derived.size(); ++i)
            agree = same_orbit(derived[i], expected[i]);
        if (!agree)
            throw std::logic_error(
                "classify_relevant_solutions: small-d search disagrees with the frozen table");
    }

    long m16 = d.mod(16);
    int family_c = 0;
    bool has_family = false;
    if (m8 == 7) {
        family_c = -1;
        has_family = true;
    } else if (m16 == 2) {
        family_c = 2;
        has_family = true;
    } else if (m16 == 14) {
        family_c = -2;
        has_family = true;
    }
    out.r1_bound = 5;
    if (has_family) {
        out.s_max = s_max;
        bool d_odd = (m8 % 2 == 1);
        for (const auto& [s, w] : solve_exponential_family(family_c, d, s_max)) {
            ParamSolution p;
            p.eta1 = (family_c == 2) ? -1 : 1;
            p.eta2 = 1;
            p.r1 = d_odd ? 2 * s + 2 : 2 * s + 1;
            p.r2 = 0;
            p.v = pow2(d_odd ? s + 2 : s + 1) * w;
            p.d = d.value();
            p.validate();
            raw.push_back(p);
        }
    }
    out.complete = true;  // exact in the residue class; family search bounded by s_max
    out.orbits = detail::group_into_orbits(raw);
    return out;
}

// Exhaustive search for solutions with lambda = (x + y*sqrt(d))/2 integral
// and |x|, |y| <= H. Includes the rational (irrelevant) solutions in range.
// Independent of the classification path: used as its oracle.
inline std::vector<SUnitSolution> brute_force_sunit(const SquarefreeD& d, long height) {
    if (height < 1) throw std::invalid_argument("brute_force_sunit: height must be >= 1");
    const uint64_t H = static_cast<uint64_t>(height);
    if (d.value() > 1000000 || Int(d.value() * (d.value() + 1)) * height * height >= pow2(120))
        throw std::invalid_argument("brute_force_sunit: bounds too large for the search");
    const uint64_t du = mpz_get_ui(d.value().get_mpz_t());

    // |x| <= H and x^2 = d y^2 +- 2^(a+2) bound the norm exponent a
    unsigned amax = 0;
    {
        unsigned __int128 lim = (unsigned __int128)(du + 1) * H * H;
        while (((unsigned __int128)1 << (amax + 3)) <= lim) ++amax;
    }

    std::set<QuadElement> lambdas;
    auto consider = [&](int64_t x, int64_t y) {
        QuadElement lam(Int(x), Int(y), d, 2);
        if (lam.is_zero() || lam.is_one()) return;
        if (!lam.is_integral()) return;
        QuadElement mu = QuadElement::one(d) - lam;
        if (!is_s_unit(lam) || !is_s_unit(mu)) return;
        lambdas.insert(lam);
    };

    for (uint64_t y = 0; y <= H; ++y) {
        unsigned __int128 dy2 = (unsigned __int128)du * y * y;
        for (unsigned a = 0; a <= amax; ++a) {
            unsigned __int128 pw = (unsigned __int128)1 << (a + 2);
            for (int sgn : {1, -1}) {
                unsigned __int128 X2;
                if (sgn > 0) {
                    X2 = dy2 + pw;
                } else {
                    if (dy2 < pw) continue;
                    X2 = dy2 - pw;
                }
                uint64_t x0;
                if (!is_square_u128(X2, &x0)) continue;
                if (x0 > H) continue;
                for (int sx : {1, -1}) {
                    if (x0 == 0 && sx < 0) continue;
                    int64_t x = sx * static_cast<int64_t>(x0);
                    consider(x, static_cast<int64_t>(y));
                    if (y != 0) consider(x, -static_cast<int64_t>(y));
                }
            }
        }
    }

    std::vector<SUnitSolution> out;
    out.reserve(lambdas.size());
    for (const QuadElement& lam : lambdas) out.push_back(make_sunit_solution(lam));
    return out;
}

// The three rational solutions, as concrete elements of Q(sqrt(d)).
inline std::vector<SUnitSolution> irrelevant_solutions(const SquarefreeD& d) {
    return {make_sunit_solution(QuadElement::integer(2, d)),
            make_sunit_solution(QuadElement::integer(-1, d)),
            make_sunit_solution(QuadElement::rational(Rat(1, 2), d))};
}

}  // namespace qf
