// The per-d decision procedure: evaluate the two valuation conditions on
// every orbit of S-unit solutions and combine them into a verdict on the
// asymptotic Fermat statement for Q(sqrt(d)), with the congruence-class fast
// paths recorded alongside the always-run general check.
#pragma once

#include "quadfermat/sunit.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace qf {

struct PrimeValuations {
    PrimeAbove2 prime;
    long ord_lambda;
    long ord_mu;
    long ord_lambdamu;
};

inline std::vector<PrimeValuations> compute_valuations(const SUnitSolution& sol,
                                                       const SplittingData& splitting) {
    std::vector<PrimeValuations> rows;
    for (const PrimeAbove2& P : splitting.S) {
        long vl = valuation_above_2(sol.lambda, P, splitting);
        long vm = valuation_above_2(sol.mu, P, splitting);
        rows.push_back({P, vl, vm, vl + vm});
    }
    return rows;
}

struct ConditionResult {
    bool holds = false;
    std::optional<PrimeAbove2::Id> witness;
};

namespace detail {

inline bool within_bound(const PrimeValuations& row) {
    long bound = 4 * row.prime.ord_of_2();
    return std::max(std::abs(row.ord_lambda), std::abs(row.ord_mu)) <= bound;
}

inline bool mod3_matches(const PrimeValuations& row) {
    long diff = row.ord_lambdamu - row.prime.ord_of_2();
    return ((diff % 3) + 3) % 3 == 0;
}

inline const PrimeValuations* find_row(const std::vector<PrimeValuations>& rows,
                                       PrimeAbove2::Id id) {
    for (const auto& r : rows)
        if (r.prime.id == id) return &r;
    return nullptr;
}

}  // namespace detail

// Condition (A): some P in T with max(|ord_P(lambda)|, |ord_P(mu)|) <= 4*ord_P(2).
inline ConditionResult check_condition_A(const SUnitSolution& sol,
                                         const SplittingData& splitting) {
    auto rows = compute_valuations(sol, splitting);
    for (const PrimeAbove2& P : splitting.T) {
        const PrimeValuations* row = detail::find_row(rows, P.id);
        if (row && detail::within_bound(*row)) return {true, P.id};
    }
    return {false, std::nullopt};
}

// Condition (B): some P in U with the (A) bound and
// ord_P(lambda*mu) = ord_P(2) (mod 3).
inline ConditionResult check_condition_B(const SUnitSolution& sol,
                                         const SplittingData& splitting) {
    auto rows = compute_valuations(sol, splitting);
    for (const PrimeAbove2& P : splitting.U) {
        const PrimeValuations* row = detail::find_row(rows, P.id);
        if (row && detail::within_bound(*row) && detail::mod3_matches(*row))
            return {true, P.id};
    }
    return {false, std::nullopt};
}

// Residue classes of d where the criterion holds outright, before solving
// anything: (i) d = 3 (mod 8); (ii) d = 6, 10 (mod 16); (iii) d = 2 (mod 16)
// with a prime divisor q = 5, 7 (mod 8); (iv) d = 14 (mod 16) with a prime
// divisor q = 3, 5 (mod 8).
enum class FastPathClass { none, class_i, class_ii, class_iii, class_iv };

inline const char* to_string(FastPathClass c) {
    switch (c) {
        case FastPathClass::none: return "none";
        case FastPathClass::class_i: return "i";
        case FastPathClass::class_ii: return "ii";
        case FastPathClass::class_iii: return "iii";
        case FastPathClass::class_iv: return "iv";
    }
    return "?";
}

inline FastPathClass congruence_fast_path(const SquarefreeD& d) {
    long m8 = d.mod(8);
    long m16 = d.mod(16);
    if (m8 == 3) return FastPathClass::class_i;
    if (m16 == 6 || m16 == 10) return FastPathClass::class_ii;
    if (m16 == 2 || m16 == 14) {
        for (const auto& [p, e] : factorize(d.value())) {
            long pm8 = static_cast<long>(mpz_fdiv_ui(p.get_mpz_t(), 8));
            if (m16 == 2 && (pm8 == 5 || pm8 == 7)) return FastPathClass::class_iii;
            if (m16 == 14 && (pm8 == 3 || pm8 == 5)) return FastPathClass::class_iv;
        }
    }
    return FastPathClass::none;
}

enum class Outcome { holds_unconditional, holds_under_ES, criterion_fails, incomplete_search };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::holds_unconditional: return "holds_unconditional";
        case Outcome::holds_under_ES: return "holds_under_ES";
        case Outcome::criterion_fails: return "criterion_fails";
        case Outcome::incomplete_search: return "incomplete_search";
    }
    return "?";
}

// Per-orbit record of the conditions and the valuations behind them.
struct OrbitReport {
    explicit OrbitReport(SUnitSolution rep)
        : irrelevant(!rep.relevant), representative(std::move(rep)) {}

    bool irrelevant;  // the rational orbit (2,-1), (-1,2), (1/2,1/2)
    std::optional<ParamSolution> param;
    SUnitSolution representative;
    std::vector<PrimeValuations> valuations;
    ConditionResult condA;
    ConditionResult condB;
    bool passes() const { return condA.holds || condB.holds; }
};

struct Verdict {
    Int d;
    Outcome outcome = Outcome::criterion_fails;
    FastPathClass fast_path = FastPathClass::none;
    bool es_dependent = false;       // T empty: conclusion rests on the
                                     // modular-lift conjecture for K
    std::string provenance;
    SplittingData splitting;
    bool classification_complete = false;
    unsigned long r1_bound = 0;
    unsigned long s_max = 0;
    std::vector<OrbitReport> orbits;        // irrelevant orbit first
    std::vector<size_t> failing_orbits;     // indices into orbits
};

inline OrbitReport report_orbit(const SUnitSolution& rep,
                                const std::optional<ParamSolution>& param,
                                const SplittingData& splitting) {
    OrbitReport r(rep);
    r.param = param;
    r.valuations = compute_valuations(rep, splitting);
    r.condA = check_condition_A(rep, splitting);
    r.condB = check_condition_B(rep, splitting);
    return r;
}

// Full evaluation for one d: splitting, classification, both conditions on
// the irrelevant orbit and on every relevant orbit. The congruence fast path
// is recorded but the general check always runs and must agree with it.
inline Verdict verdict(const SquarefreeD& d, unsigned long search_bound = 40,
                       unsigned long s_max = 64) {
    Verdict v;
    v.d = d.value();
    v.splitting = splitting_of_two(d);
    Classification cls = classify_relevant_solutions(d, search_bound, s_max);
    v.classification_complete = cls.complete;
    v.r1_bound = cls.r1_bound;
    v.s_max = cls.s_max;

    SUnitSolution irr = make_sunit_solution(QuadElement::integer(2, d));
    OrbitReport irr_report = report_orbit(irr, std::nullopt, v.splitting);
    if (!v.splitting.T.empty() && !irr_report.condA.holds)
        throw std::logic_error("verdict: irrelevant orbit must satisfy (A) when T is nonempty");
    if (!v.splitting.U.empty() && !irr_report.condB.holds)
        throw std::logic_error("verdict: irrelevant orbit must satisfy (B) when U is nonempty");
    v.orbits.push_back(std::move(irr_report));

    bool any_failing = false;
    for (const OrbitClass& oc : cls.orbits) {
        OrbitReport r = report_orbit(oc.representative, oc.rep_param, v.splitting);
        if (!r.passes()) {
            any_failing = true;
            v.failing_orbits.push_back(v.orbits.size());
        }
        v.orbits.push_back(std::move(r));
    }

    if (any_failing)
        v.outcome = Outcome::criterion_fails;
    else if (!cls.complete)
        v.outcome = Outcome::incomplete_search;
    else if (!v.splitting.T.empty())
        v.outcome = Outcome::holds_unconditional;
    else
        v.outcome = Outcome::holds_under_ES;
    v.es_dependent = (v.outcome == Outcome::holds_under_ES);

    v.fast_path = congruence_fast_path(d);
    if (v.fast_path != FastPathClass::none &&
        v.outcome != Outcome::holds_unconditional)
        throw std::logic_error("verdict: congruence fast path contradicts the general check");

    if (v.outcome == Outcome::holds_unconditional)
        v.provenance = (v.fast_path != FastPathClass::none)
                           ? std::string("congruence_class_") + to_string(v.fast_path)
                           : std::string("general_criterion");
    else if (v.outcome == Outcome::holds_under_ES)
        v.provenance = "es_conditional";
    else
        v.provenance = "general_criterion";
    return v;
}

}  // namespace qf
