// Invariants of the curve y^2 = x(x-u)(x+v) attached to u + v + w = 0, the
// reduction type at odd primes from the three valuations alone, and the
// dictionary between lambda-invariants and the j-invariant.
#pragma once

#include "quadfermat/quadfield.hpp"

namespace qf {

// c4, c6, discriminant and j for integer inputs; j is an exact reduced
// fraction.
struct FreyInvariantsInt {
    Int c4;
    Int c6;
    Int disc;
    Rat j;
};

inline FreyInvariantsInt frey_invariants(const Int& u, const Int& v, const Int& w) {
    if (u + v + w != 0)
        throw std::invalid_argument("frey_invariants: need u + v + w = 0");
    if (u == 0 || v == 0 || w == 0)
        throw std::invalid_argument("frey_invariants: need u*v*w != 0");
    FreyInvariantsInt r;
    r.c4 = 16 * (u * u - v * w);
    r.c6 = -32 * (u - v) * (v - w) * (w - u);
    r.disc = 16 * u * u * v * v * w * w;
    r.j = Rat(r.c4 * r.c4 * r.c4, r.disc);
    r.j.canonicalize();
    return r;
}

// Same invariants over Q(sqrt(d)); j = c4^3 / disc computed exactly in K.
struct FreyInvariantsQuad {
    QuadElement c4;
    QuadElement c6;
    QuadElement disc;
    QuadElement j;
};

inline FreyInvariantsQuad frey_invariants(const QuadElement& u, const QuadElement& v,
                                          const QuadElement& w) {
    QuadElement sum = u + v + w;
    if (!sum.is_zero())
        throw std::invalid_argument("frey_invariants: need u + v + w = 0");
    if (u.is_zero() || v.is_zero() || w.is_zero())
        throw std::invalid_argument("frey_invariants: need u*v*w != 0");
    const SquarefreeD& d = u.d();
    QuadElement c16 = QuadElement::integer(16, d);
    QuadElement c32 = QuadElement::integer(-32, d);
    QuadElement c4 = c16 * (u * u - v * w);
    QuadElement c6 = c32 * (u - v) * (v - w) * (w - u);
    QuadElement disc = c16 * u * u * v * v * w * w;
    QuadElement j = (c4 * c4 * c4) / disc;
    return {c4, c6, disc, j};
}

enum class ReductionKind { good, multiplicative, additive };

inline const char* to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::good: return "good";
        case ReductionKind::multiplicative: return "multiplicative";
        case ReductionKind::additive: return "additive";
    }
    return "?";
}

struct ReductionType {
    ReductionKind kind;
    long ord_disc_min;  // ord of the minimal discriminant; multiplicative case only
};

// Reduction type at an odd prime from the valuations of (u, v, w):
// with s = min, good iff s even and all equal, multiplicative iff s even and
// not all equal (minimal discriminant valuation 2(vu+vv+vw) - 6s), additive
// iff s odd.
inline ReductionType reduction_type(long vu, long vv, long vw) {
    if (vu < 0 || vv < 0 || vw < 0)
        throw std::invalid_argument("reduction_type: valuations must be >= 0");
    long s = std::min({vu, vv, vw});
    if (s % 2 != 0) return {ReductionKind::additive, 0};
    if (vu == vv && vv == vw) return {ReductionKind::good, 0};
    return {ReductionKind::multiplicative, 2 * (vu + vv + vw) - 6 * s};
}

// j = 2^8 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2).
inline QuadElement lambda_to_j(const QuadElement& lambda) {
    if (lambda.is_zero() || lambda.is_one())
        throw std::invalid_argument("lambda_to_j: lambda in {0,1}");
    const SquarefreeD& d = lambda.d();
    QuadElement one = QuadElement::one(d);
    QuadElement num = lambda * lambda - lambda + one;
    QuadElement den = lambda * lambda * (lambda - one) * (lambda - one);
    return (QuadElement::integer(256, d) * num * num * num) / den;
}

// The same value via the symmetric form 2^8 (1 - lambda*mu)^3 / (lambda*mu)^2
// with mu = 1 - lambda; used to cross-check lambda_to_j.
inline QuadElement lambda_to_j_symmetric(const QuadElement& lambda) {
    if (lambda.is_zero() || lambda.is_one())
        throw std::invalid_argument("lambda_to_j_symmetric: lambda in {0,1}");
    const SquarefreeD& d = lambda.d();
    QuadElement one = QuadElement::one(d);
    QuadElement lm = lambda * (one - lambda);
    QuadElement num = one - lm;
    return (QuadElement::integer(256, d) * num * num * num) / (lm * lm);
}

}  // namespace qf
