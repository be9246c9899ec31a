// Exact arithmetic in real quadratic fields Q(sqrt(d)): field elements with
// integer coordinates and a power-free denominator, conjugation, norms, the
// splitting of 2, and certified valuations at the primes above 2.
#pragma once

#include "quadfermat/arith.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf {

// A validated squarefree integer d >= 2, the discriminant parameter of
// K = Q(sqrt(d)).
class SquarefreeD {
  public:
    explicit SquarefreeD(const Int& d) : d_(d) {
        if (d < 2) throw std::invalid_argument("SquarefreeD: d must be >= 2");
        Int p = smallest_square_prime_divisor(d);
        if (p != 0) {
            std::ostringstream os;
            os << "SquarefreeD: " << d << " is divisible by " << p << "^2";
            throw std::invalid_argument(os.str());
        }
    }
    explicit SquarefreeD(long d) : SquarefreeD(Int(d)) {}

    // For values already known squarefree (e.g. output of squarefree_part).
    static SquarefreeD trusted(const Int& d) {
        if (d < 2) throw std::invalid_argument("SquarefreeD: d must be >= 2");
        return SquarefreeD(d, nullptr);
    }

    const Int& value() const { return d_; }
    long mod(unsigned long m) const {
        return static_cast<long>(mpz_fdiv_ui(d_.get_mpz_t(), m));
    }
    bool operator==(const SquarefreeD& o) const { return d_ == o.d_; }

  private:
    SquarefreeD(const Int& d, std::nullptr_t) : d_(d) {}
    Int d_;
};

// An element (x + y*sqrt(d)) / den of K = Q(sqrt(d)), kept in lowest terms
// with den >= 1. Algebraic integers have den == 1, or den == 2 with x, y odd
// and d = 1 (mod 4). S-units may carry larger powers of 2 in den.
class QuadElement {
  public:
    QuadElement(Int x, Int y, SquarefreeD d, Int den = 1)
        : x_(std::move(x)), y_(std::move(y)), den_(std::move(den)), d_(std::move(d)) {
        if (den_ == 0) throw std::invalid_argument("QuadElement: zero denominator");
        normalize();
    }

    static QuadElement integer(const Int& n, const SquarefreeD& d) {
        return QuadElement(n, 0, d);
    }
    static QuadElement zero(const SquarefreeD& d) { return integer(0, d); }
    static QuadElement one(const SquarefreeD& d) { return integer(1, d); }
    static QuadElement sqrt_d(const SquarefreeD& d) { return QuadElement(0, 1, d); }
    static QuadElement rational(const Rat& q, const SquarefreeD& d) {
        return QuadElement(Int(q.get_num()), 0, d, Int(q.get_den()));
    }

    const Int& x() const { return x_; }
    const Int& y() const { return y_; }
    const Int& den() const { return den_; }
    const SquarefreeD& d() const { return d_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_one() const { return y_ == 0 && den_ == 1 && x_ == 1; }
    bool is_rational() const { return y_ == 0; }
    // Lies in O_K: den 1, or den 2 with d = 1 (mod 4) and x, y both odd.
    bool is_integral() const {
        if (den_ == 1) return true;
        return den_ == 2 && d_.mod(4) == 1 && mpz_odd_p(x_.get_mpz_t()) &&
               mpz_odd_p(y_.get_mpz_t());
    }
    // True when the element is written (x + y*sqrt(d))/2.
    bool half() const { return den_ == 2; }

    QuadElement conjugate() const { return QuadElement(x_, -y_, d_, den_); }

    Rat norm() const {
        Rat n(x_ * x_ - d_.value() * y_ * y_, den_ * den_);
        n.canonicalize();
        return n;
    }
    Rat trace() const {
        Rat t(2 * x_, den_);
        t.canonicalize();
        return t;
    }

    QuadElement operator-() const { return QuadElement(-x_, -y_, d_, den_); }

    friend QuadElement operator+(const QuadElement& a, const QuadElement& b) {
        a.check_same_field(b);
        return QuadElement(a.x_ * b.den_ + b.x_ * a.den_,
                           a.y_ * b.den_ + b.y_ * a.den_, a.d_, a.den_ * b.den_);
    }
    friend QuadElement operator-(const QuadElement& a, const QuadElement& b) {
        return a + (-b);
    }
    friend QuadElement operator*(const QuadElement& a, const QuadElement& b) {
        a.check_same_field(b);
        return QuadElement(a.x_ * b.x_ + a.d_.value() * a.y_ * b.y_,
                           a.x_ * b.y_ + a.y_ * b.x_, a.d_, a.den_ * b.den_);
    }
    friend QuadElement operator/(const QuadElement& a, const QuadElement& b) {
        a.check_same_field(b);
        if (b.is_zero()) throw std::domain_error("QuadElement: division by zero");
        // a/b = a * conj(b) * den(b)^2 / (x_b^2 - d y_b^2)
        Int nb = b.x_ * b.x_ - b.d_.value() * b.y_ * b.y_;
        QuadElement num = a * b.conjugate();
        return QuadElement(num.x_ * b.den_ * b.den_, num.y_ * b.den_ * b.den_, a.d_,
                           num.den_ * nb);
    }

    bool operator==(const QuadElement& o) const {
        return d_ == o.d_ && x_ == o.x_ && y_ == o.y_ && den_ == o.den_;
    }
    bool operator!=(const QuadElement& o) const { return !(*this == o); }
    // Lexicographic on (x, y, den); elements must share d.
    bool operator<(const QuadElement& o) const {
        if (x_ != o.x_) return x_ < o.x_;
        if (y_ != o.y_) return y_ < o.y_;
        return den_ < o.den_;
    }

    // Canonical rendering, e.g. "sqrt(2)", "1 - sqrt(2)", "(1 + sqrt(5))/2".
    std::string str() const {
        std::ostringstream os;
        bool paren = den_ != 1 && x_ != 0 && y_ != 0;
        if (paren) os << "(";
        if (y_ == 0) {
            os << x_;
        } else {
            if (x_ != 0) os << x_ << (y_ > 0 ? " + " : " - ");
            else if (y_ < 0) os << "-";
            Int ay = abs(y_);
            if (ay != 1) os << ay << "*";
            os << "sqrt(" << d_.value() << ")";
        }
        if (paren) os << ")";
        if (den_ != 1) os << "/" << den_;
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadElement& e) {
        return os << e.str();
    }

  private:
    void check_same_field(const QuadElement& o) const {
        if (!(d_ == o.d_))
            throw std::invalid_argument("QuadElement: mixed fields");
    }
    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            x_ = -x_;
            y_ = -y_;
        }
        Int g = gcd(gcd(x_, y_), den_);
        if (g > 1) {
            x_ /= g;
            y_ /= g;
            den_ /= g;
        }
        if (x_ == 0 && y_ == 0) den_ = 1;
    }

    Int x_, y_, den_;
    SquarefreeD d_;
};

enum class SplitKind { ramified, inert, split };

inline const char* to_string(SplitKind k) {
    switch (k) {
        case SplitKind::ramified: return "ramified";
        case SplitKind::inert: return "inert";
        case SplitKind::split: return "split";
    }
    return "?";
}

// One prime of K above 2. In a quadratic field e*f <= 2 and ord_P(2) = e.
struct PrimeAbove2 {
    enum class Id { P1, P2 };
    Id id;
    int e;  // ramification index
    int f;  // residue degree
    int ord_of_2() const { return e; }
    const char* name() const { return id == Id::P1 ? "P1" : "P2"; }
};

// How 2 decomposes in Q(sqrt(d)), with the distinguished prime sets:
// S = all primes above 2, T = those with residue degree 1, U = those with
// ord_P(2) not divisible by 3 (always all of S here).
struct SplittingData {
    SplitKind kind;
    Int d;
    std::vector<PrimeAbove2> S;
    std::vector<PrimeAbove2> T;
    std::vector<PrimeAbove2> U;
};

inline SplittingData splitting_of_two(const SquarefreeD& d) {
    SplittingData s;
    s.d = d.value();
    long m8 = d.mod(8);
    if (m8 == 1) {
        s.kind = SplitKind::split;
        s.S = {{PrimeAbove2::Id::P1, 1, 1}, {PrimeAbove2::Id::P2, 1, 1}};
    } else if (m8 == 5) {
        s.kind = SplitKind::inert;
        s.S = {{PrimeAbove2::Id::P1, 1, 2}};
    } else {
        s.kind = SplitKind::ramified;
        s.S = {{PrimeAbove2::Id::P1, 2, 1}};
    }
    for (const auto& p : s.S) {
        if (p.f == 1) s.T.push_back(p);
        if (p.e % 3 != 0) s.U.push_back(p);  // e is 1 or 2, so U = S
    }
    return s;
}

// r with r^2 = d (mod 2^k) and r = 1 (mod 4); requires d = 1 (mod 8), k >= 3.
// The r = 1 (mod 4) branch pins the labeling of P1 vs P2.
inline Int hensel_sqrt_2adic(const SquarefreeD& d, unsigned long k) {
    if (d.mod(8) != 1)
        throw std::invalid_argument("hensel_sqrt_2adic: need d = 1 (mod 8)");
    if (k < 3) throw std::invalid_argument("hensel_sqrt_2adic: need k >= 3");
    // The lift step j fixes bit j-1 of the root, so run through j = k to pin
    // all k returned bits; successive precisions are then consistent.
    Int r = 1;
    Int dv = d.value();
    for (unsigned long j = 3; j <= k; ++j) {
        // r^2 = d (mod 2^j); lift to mod 2^(j+1)
        Int diff = r * r - dv;
        if (mpz_tstbit(diff.get_mpz_t(), j)) {
            Int add = 1;
            add <<= (j - 1);
            r += add;
        }
        Int mod = 1;
        mod <<= (j + 1);
        r %= mod;
    }
    Int mod = pow2(k);
    r %= mod;
    if (mpz_fdiv_ui(r.get_mpz_t(), 4) == 3) r = mod - r;
    return r;
}

namespace detail {

// v_2(x + y*r) where r is the 2-adic square root of d; escalates precision
// until the valuation is certified (strictly below the working precision).
inline long split_embedding_v2(const Int& x, const Int& y, const SquarefreeD& d,
                               unsigned long start_bits = 16) {
    for (unsigned long k = start_bits;; k *= 2) {
        Int r = hensel_sqrt_2adic(d, k);
        Int mod = pow2(k);
        Int z = (x + y * r) % mod;
        if (z < 0) z += mod;
        if (z != 0) {
            long v = v2(z);
            if (v < static_cast<long>(k)) return v;
        }
        if (k > (1UL << 22))
            throw std::runtime_error("split_embedding_v2: precision runaway");
    }
}

}  // namespace detail

// ord_P(e) for nonzero e and P above 2. Ramified: v_2(N(e)); inert:
// v_2(N(e))/2; split: certified via the 2-adic embedding, with the P2
// valuation read off the conjugate coordinate.
inline long valuation_above_2(const QuadElement& e, const PrimeAbove2& P,
                              const SplittingData& splitting,
                              unsigned long start_bits = 16) {
    if (e.is_zero())
        throw std::domain_error("valuation_above_2: zero element");
    Rat n = e.norm();
    switch (splitting.kind) {
        case SplitKind::ramified:
            return v2(n);
        case SplitKind::inert: {
            long v = v2(n);
            // norms of K-elements at an inert prime have even 2-valuation
            if (v % 2 != 0)
                throw std::logic_error("valuation_above_2: odd v2(norm) at inert prime");
            return v / 2;
        }
        case SplitKind::split: {
            if (e.is_rational()) {
                // both embeddings see the same rational number
                return v2(n) / 2;
            }
            Int y = (P.id == PrimeAbove2::Id::P1) ? e.y() : -e.y();
            long vnum = detail::split_embedding_v2(e.x(), y, SquarefreeD::trusted(splitting.d),
                                                   start_bits);
            return vnum - v2(Int(e.den()));
        }
    }
    throw std::logic_error("valuation_above_2: bad splitting kind");
}

}  // namespace qf
