#include "quadfermat/criterion.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qf;

namespace {

bool squarefree_small(long n) {
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("condition (A): pinned examples") {
    SquarefreeD d2(2);
    auto s2 = splitting_of_two(d2);
    // irrelevant representative (2, -1): ord(2)=2 within the bound 8
    auto irr = make_sunit_solution(QuadElement::integer(2, d2));
    auto [a_holds, a_wit] = check_condition_A(irr, s2);
    CHECK(a_holds);
    REQUIRE(a_wit.has_value());

    // T empty for d = 5 (mod 8): (A) can never hold
    SquarefreeD d5(5);
    auto s5 = splitting_of_two(d5);
    for (const auto& oc : classify_relevant_solutions(d5).orbits)
        CHECK_FALSE(check_condition_A(oc.representative, s5).holds);

    // (-16+12*sqrt(2), 17-12*sqrt(2)): ord(lambda) = 5 <= 8
    auto big = make_sunit_solution(QuadElement(-16, 12, d2));
    auto rows = compute_valuations(big, s2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ord_lambda == 5);
    CHECK(rows[0].ord_mu == 0);
    CHECK(check_condition_A(big, s2).holds);
}

TEST_CASE("condition (B): pinned examples for d = 5") {
    SquarefreeD d5(5);
    auto s5 = splitting_of_two(d5);

    // ((1+sqrt(5))/2, (1-sqrt(5))/2): ord(lambda*mu) = 0, not 1 mod 3
    auto golden = make_sunit_solution(QuadElement(1, 1, d5, 2));
    auto rows = compute_valuations(golden, s5);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ord_lambdamu == 0);
    CHECK_FALSE(check_condition_B(golden, s5).holds);

    // (-1+sqrt(5), 2-sqrt(5)): ord(lambda*mu) = 1 = ord(2) mod 3
    auto pass = make_sunit_solution(QuadElement(-1, 1, d5));
    auto rows2 = compute_valuations(pass, s5);
    CHECK(rows2[0].ord_lambdamu == 1);
    CHECK(check_condition_B(pass, s5).holds);

    // (-8+4*sqrt(5), 9-4*sqrt(5)): ord(lambda*mu) = 2, fails
    auto mid = make_sunit_solution(QuadElement(-8, 4, d5));
    CHECK(compute_valuations(mid, s5)[0].ord_lambdamu == 2);
    CHECK_FALSE(check_condition_B(mid, s5).holds);

    // d = 13: irrelevant orbit has ord(lambda*mu) = ord(-2) = 1 = 1 mod 3
    SquarefreeD d13(13);
    auto s13 = splitting_of_two(d13);
    auto irr = make_sunit_solution(QuadElement::integer(2, d13));
    CHECK(check_condition_B(irr, s13).holds);
}

TEST_CASE("congruence fast path classes") {
    CHECK(congruence_fast_path(SquarefreeD(3)) == FastPathClass::class_i);
    CHECK(congruence_fast_path(SquarefreeD(11)) == FastPathClass::class_i);
    CHECK(congruence_fast_path(SquarefreeD(6)) == FastPathClass::class_ii);
    CHECK(congruence_fast_path(SquarefreeD(10)) == FastPathClass::class_ii);
    CHECK(congruence_fast_path(SquarefreeD(26)) == FastPathClass::class_ii);
    // 34 = 2*17 = 2 (mod 16) but 17 = 1 (mod 8): no clause
    CHECK(congruence_fast_path(SquarefreeD(34)) == FastPathClass::none);
    // 66 = 2*3*11 = 2 (mod 16): 3 and 11 are 3 (mod 8) -> no clause either
    CHECK(congruence_fast_path(SquarefreeD(66)) == FastPathClass::none);
    // 226 = 2*113: 113 = 1 (mod 8) -> none; 130 = 2*5*13: 5 = 5 (mod 8) -> iii
    CHECK(congruence_fast_path(SquarefreeD(226)) == FastPathClass::none);
    CHECK(congruence_fast_path(SquarefreeD(130)) == FastPathClass::class_iii);
    // 14 = 2*7: 7 = 7 (mod 8), not 3 or 5 -> none; 30 = 2*3*5 = 14 (mod 16) -> iv
    CHECK(congruence_fast_path(SquarefreeD(14)) == FastPathClass::none);
    CHECK(congruence_fast_path(SquarefreeD(30)) == FastPathClass::class_iv);
    CHECK(congruence_fast_path(SquarefreeD(5)) == FastPathClass::none);
    CHECK(congruence_fast_path(SquarefreeD(17)) == FastPathClass::none);
}

TEST_CASE("verdicts: pinned examples") {
    Verdict v3 = verdict(SquarefreeD(3));
    CHECK(v3.outcome == Outcome::holds_unconditional);
    CHECK(v3.fast_path == FastPathClass::class_i);
    CHECK(v3.provenance == "congruence_class_i");
    CHECK_FALSE(v3.es_dependent);

    Verdict v13 = verdict(SquarefreeD(13));
    CHECK(v13.outcome == Outcome::holds_under_ES);
    CHECK(v13.es_dependent);
    CHECK(v13.provenance == "es_conditional");
    CHECK(v13.orbits.size() == 1);  // irrelevant only

    Verdict v5 = verdict(SquarefreeD(5));
    CHECK(v5.outcome == Outcome::criterion_fails);
    REQUIRE(v5.orbits.size() == 4);  // irrelevant + three relevant
    CHECK(v5.failing_orbits.size() == 2);
    // per-orbit ord(lambda*mu): golden ratio orbit 0, then 1, then 2
    CHECK(v5.orbits[1].valuations[0].ord_lambdamu == 0);
    CHECK(v5.orbits[2].valuations[0].ord_lambdamu == 1);
    CHECK(v5.orbits[3].valuations[0].ord_lambdamu == 2);

    // d = 2: all four orbits pass (A)
    Verdict v2 = verdict(SquarefreeD(2));
    CHECK(v2.outcome == Outcome::holds_unconditional);
    CHECK(v2.provenance == "general_criterion");
    CHECK(v2.orbits.size() == 5);
    for (const auto& r : v2.orbits) CHECK(r.passes());

    // d = 7: family solution passes (A) with the bound attained
    Verdict v7 = verdict(SquarefreeD(7));
    CHECK(v7.outcome == Outcome::holds_unconditional);
    REQUIRE(v7.orbits.size() == 2);
    CHECK(v7.orbits[1].valuations[0].ord_lambda == 8);  // = 4*ord(2)

    // d = 17: the bounded search turns up genuine violations, e.g.
    // (33+7*sqrt(17))/2 with ord 6 and 5 at the two primes, both over the
    // bound 4
    Verdict v17 = verdict(SquarefreeD(17));
    CHECK(v17.outcome == Outcome::criterion_fails);
    CHECK(v17.failing_orbits.size() >= 2);

    // d = 97: nothing found within the bound, so the search stays open
    Verdict v97 = verdict(SquarefreeD(97));
    CHECK(v97.outcome == Outcome::incomplete_search);
    CHECK(v97.orbits.size() == 1);  // irrelevant only

    // d = 1023 = 4^5-1: its family solution breaks the (A)/(B) bound
    Verdict v1023 = verdict(SquarefreeD(1023));
    CHECK(v1023.outcome == Outcome::criterion_fails);
    CHECK_FALSE(v1023.failing_orbits.empty());
}

TEST_CASE("conditions are invariant across each orbit (S3 and Galois)") {
    for (long dv : {2, 3, 5, 6, 7, 14, 17, 105}) {
        SquarefreeD d(dv);
        auto splitting = splitting_of_two(d);
        for (const auto& oc : classify_relevant_solutions(d).orbits) {
            bool a = check_condition_A(oc.representative, splitting).holds;
            bool b = check_condition_B(oc.representative, splitting).holds;
            for (const auto& member : oc.members) {
                CHECK(check_condition_A(member, splitting).holds == a);
                CHECK(check_condition_B(member, splitting).holds == b);
            }
        }
    }
}

TEST_CASE("fast path never contradicts the general evaluation (d <= 2000)") {
    for (long dv = 2; dv <= 2000; ++dv) {
        if (!squarefree_small(dv)) continue;
        SquarefreeD d(dv);
        if (congruence_fast_path(d) == FastPathClass::none) continue;
        Verdict v = verdict(d);
        CHECK(v.outcome == Outcome::holds_unconditional);
    }
}

TEST_CASE("d = 5 (mod 8) is never unconditional (d <= 2000)") {
    for (long dv = 5; dv <= 2000; dv += 8) {
        if (!squarefree_small(dv)) continue;
        Verdict v = verdict(SquarefreeD(dv));
        CHECK(v.outcome != Outcome::holds_unconditional);
        if (dv > 5) CHECK(v.outcome == Outcome::holds_under_ES);
    }
}
