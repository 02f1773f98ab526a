#pragma once

#include <algorithm>
#include <vector>

#include "pmf/primepower.hpp"

namespace pmf {

// Coefficient rings for q-expansions. Both expose the same small surface so
// QExpansion<Ring> can be written once; ResidueRing carries the Z/p^N context.

struct RationalRing {
    using elem = Rat;
    static constexpr bool exact = true;

    elem canon(const elem& a) const { return a; }
    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    elem inv(const elem& a) const {
        if (a == 0) throw bad_input("division by zero");
        return Rat(1) / a;
    }
    bool is_zero(const elem& a) const { return a == 0; }
    elem from_long(long a) const { return Rat(a); }
    // base^e for integer base, e of either sign
    elem int_pow_signed(long base, long e) const { return rat_pow(Rat(base), e); }
    bool compatible(const RationalRing&) const { return true; }
};

// Exact integers; division only when exact. Classical level-1 constructions
// (Miller basis, Delta, E4/E6 monomials) live here.
struct IntegerRing {
    using elem = Int;
    static constexpr bool exact = true;

    elem canon(const elem& a) const { return a; }
    elem add(const elem& a, const elem& b) const { return a + b; }
    elem sub(const elem& a, const elem& b) const { return a - b; }
    elem mul(const elem& a, const elem& b) const { return a * b; }
    elem neg(const elem& a) const { return -a; }
    elem inv(const elem& a) const {
        if (a == 1 || a == -1) return a;
        throw bad_input("non-unit integer inverse");
    }
    bool is_zero(const elem& a) const { return a == 0; }
    elem from_long(long a) const { return Int(a); }
    elem int_pow_signed(long base, long e) const {
        if (e < 0) throw bad_input("negative power in integer ring");
        return int_pow(base, static_cast<unsigned long>(e));
    }
    bool compatible(const IntegerRing&) const { return true; }
};

struct ResidueRing {
    PrimePower pp;
    using elem = Int;
    static constexpr bool exact = false;

    ResidueRing() = default;
    explicit ResidueRing(PrimePower r) : pp(std::move(r)) {}

    elem canon(const elem& a) const { return pp.canon(a); }
    elem add(const elem& a, const elem& b) const { return pp.add(a, b); }
    elem sub(const elem& a, const elem& b) const { return pp.sub(a, b); }
    elem mul(const elem& a, const elem& b) const { return pp.mul(a, b); }
    elem neg(const elem& a) const { return pp.neg(a); }
    elem inv(const elem& a) const { return pp.inv(a); }
    bool is_zero(const elem& a) const { return pp.canon(a) == 0; }
    elem from_long(long a) const { return pp.canon(Int(a)); }
    elem int_pow_signed(long base, long e) const { return pow_mod(Int(base), e, pp.modulus()); }
    bool compatible(const ResidueRing& o) const { return pp == o.pp; }
};

// Truncated q-expansion a_0 + a_1 q + ... + a_M q^M with a weight tag.
// prec() == M: all coefficients through q^M are known. Arithmetic results
// carry the minimum precision of the operands; products convolve exactly up
// to that bound (naive convolution is the reference multiplication).
template <class Ring>
class QExpansion {
  public:
    using elem = typename Ring::elem;

    QExpansion(Ring ring, int weight, long prec)
        : ring_(std::move(ring)), weight_(weight), coeff_(static_cast<size_t>(prec) + 1) {
        if (prec < 0) throw bad_input("q-precision must be >= 0");
        for (auto& c : coeff_) c = ring_.from_long(0);
    }

    const Ring& ring() const { return ring_; }
    int weight() const { return weight_; }
    long prec() const { return static_cast<long>(coeff_.size()) - 1; }

    const elem& a(long n) const {
        if (n < 0 || n > prec()) throw bad_input("coefficient index outside known precision");
        return coeff_[static_cast<size_t>(n)];
    }
    void set(long n, const elem& v) {
        if (n < 0 || n > prec()) throw bad_input("coefficient index outside known precision");
        coeff_[static_cast<size_t>(n)] = ring_.canon(v);
    }
    void set_weight(int w) { weight_ = w; }

    // smallest n with a_n != 0, or -1 for the zero series
    long leading_exponent() const {
        for (long n = 0; n <= prec(); ++n)
            if (!ring_.is_zero(a(n))) return n;
        return -1;
    }

    bool is_zero() const { return leading_exponent() == -1; }

    QExpansion truncated(long new_prec) const {
        if (new_prec > prec()) throw bad_input("cannot extend q-precision by truncation");
        QExpansion r(ring_, weight_, new_prec);
        for (long n = 0; n <= new_prec; ++n) r.coeff_[static_cast<size_t>(n)] = a(n);
        return r;
    }

    QExpansion operator+(const QExpansion& o) const {
        require_compatible(o);
        if (weight_ != o.weight_) throw bad_input("weight mismatch in q-series addition");
        long m = std::min(prec(), o.prec());
        QExpansion r(ring_, weight_, m);
        for (long n = 0; n <= m; ++n) r.set(n, ring_.add(a(n), o.a(n)));
        return r;
    }

    QExpansion operator-(const QExpansion& o) const {
        require_compatible(o);
        if (weight_ != o.weight_) throw bad_input("weight mismatch in q-series subtraction");
        long m = std::min(prec(), o.prec());
        QExpansion r(ring_, weight_, m);
        for (long n = 0; n <= m; ++n) r.set(n, ring_.sub(a(n), o.a(n)));
        return r;
    }

    QExpansion operator*(const QExpansion& o) const {
        require_compatible(o);
        long m = std::min(prec(), o.prec());
        QExpansion r(ring_, weight_ + o.weight_, m);
        for (long i = 0; i <= m; ++i) {
            if (ring_.is_zero(a(i))) continue;
            for (long j = 0; i + j <= m; ++j) {
                if (ring_.is_zero(o.a(j))) continue;
                r.coeff_[static_cast<size_t>(i + j)] =
                    ring_.add(r.coeff_[static_cast<size_t>(i + j)], ring_.mul(a(i), o.a(j)));
            }
        }
        for (auto& c : r.coeff_) c = ring_.canon(c);
        return r;
    }

    QExpansion scaled(const elem& s) const {
        QExpansion r(ring_, weight_, prec());
        for (long n = 0; n <= prec(); ++n) r.set(n, ring_.mul(a(n), s));
        return r;
    }

    bool coeffs_equal(const QExpansion& o, long upto) const {
        if (upto > prec() || upto > o.prec()) throw bad_input("comparison beyond known precision");
        for (long n = 0; n <= upto; ++n)
            if (ring_.canon(a(n)) != ring_.canon(o.a(n))) return false;
        return true;
    }

  private:
    void require_compatible(const QExpansion& o) const {
        if (!ring_.compatible(o.ring_)) throw bad_input("modulus mismatch between q-series");
    }

    Ring ring_;
    int weight_;
    std::vector<elem> coeff_;
};

using QExpQ = QExpansion<RationalRing>;
using QExpZ = QExpansion<IntegerRing>;
using QExpP = QExpansion<ResidueRing>;

inline QExpQ rational_series(int weight, long prec) { return QExpQ(RationalRing{}, weight, prec); }
inline QExpZ integer_series(int weight, long prec) { return QExpZ(IntegerRing{}, weight, prec); }
inline QExpP residue_series(const PrimePower& pp, int weight, long prec) {
    return QExpP(ResidueRing{pp}, weight, prec);
}

// theta = q d/dq applied t times: a_n -> n^t a_n. Raises the weight tag by 2t.
template <class Ring>
QExpansion<Ring> theta(const QExpansion<Ring>& f, long t) {
    if (t < 0) throw bad_input("theta power must be >= 0");
    if (t == 0) return f;
    QExpansion<Ring> r(f.ring(), f.weight() + static_cast<int>(2 * t), f.prec());
    for (long n = 1; n <= f.prec(); ++n)
        r.set(n, f.ring().mul(f.a(n), f.ring().int_pow_signed(n, t)));
    return r;
}

// p-depletion f^[p]: kill a_n for p | n (including a_0).
template <class Ring>
QExpansion<Ring> p_deplete(const QExpansion<Ring>& f, long p) {
    QExpansion<Ring> r(f.ring(), f.weight(), f.prec());
    for (long n = 1; n <= f.prec(); ++n)
        if (n % p != 0) r.set(n, f.a(n));
    return r;
}

// U_p on q-expansions: a_n -> a_{pn}; costs a factor p of q-precision.
template <class Ring>
QExpansion<Ring> u_p(const QExpansion<Ring>& f, long p) {
    long m = f.prec() / p;
    QExpansion<Ring> r(f.ring(), f.weight(), m);
    for (long n = 0; n <= m; ++n) r.set(n, f.a(n * p));
    return r;
}

// V_p on q-expansions: a_n -> a_{n/p} (0 unless p | n); gains a factor p.
template <class Ring>
QExpansion<Ring> v_p(const QExpansion<Ring>& f, long p, long prec_cap = 1 << 22) {
    long m = std::min(f.prec() * p, prec_cap);
    QExpansion<Ring> r(f.ring(), f.weight(), m);
    for (long n = 0; n * p <= m; ++n) r.set(n * p, f.a(n));
    return r;
}

// Hecke operator T_ell at level 1: a_n(T_ell f) = a_{n ell}(f) + ell^{k-1} a_{n/ell}(f),
// with k the weight tag of f.
template <class Ring>
QExpansion<Ring> hecke_t(long ell, const QExpansion<Ring>& f) {
    long m = f.prec() / ell;
    if (m < 1) throw precision_error("insufficient q-precision for T_" + std::to_string(ell));
    auto lk = f.ring().int_pow_signed(ell, f.weight() - 1);
    QExpansion<Ring> r(f.ring(), f.weight(), m);
    for (long n = 0; n <= m; ++n) {
        auto c = f.a(n * ell);
        if (n % ell == 0) c = f.ring().add(c, f.ring().mul(lk, f.a(n / ell)));
        r.set(n, c);
    }
    return r;
}

// Multiplicative inverse of a series with unit constant term.
template <class Ring>
QExpansion<Ring> series_inverse(const QExpansion<Ring>& f, long out_prec) {
    if (out_prec > f.prec()) throw precision_error("series inverse beyond known q-precision");
    auto c0 = f.ring().inv(f.a(0));
    QExpansion<Ring> r(f.ring(), -f.weight(), out_prec);
    r.set(0, c0);
    for (long n = 1; n <= out_prec; ++n) {
        typename Ring::elem s = f.ring().from_long(0);
        for (long i = 1; i <= n; ++i)
            s = f.ring().add(s, f.ring().mul(f.a(i), r.a(n - i)));
        r.set(n, f.ring().neg(f.ring().mul(c0, s)));
    }
    return r;
}

// Reduce an exact q-expansion mod p^N; every denominator must be prime to p.
inline QExpP reduce_series(const QExpQ& f, const PrimePower& pp) {
    QExpP r = residue_series(pp, f.weight(), f.prec());
    for (long n = 0; n <= f.prec(); ++n) r.set(n, pp.reduce(f.a(n)));
    return r;
}

inline QExpP reduce_series(const QExpZ& f, const PrimePower& pp) {
    QExpP r = residue_series(pp, f.weight(), f.prec());
    for (long n = 0; n <= f.prec(); ++n) r.set(n, pp.canon(f.a(n)));
    return r;
}

inline QExpQ to_rational(const QExpZ& f) {
    QExpQ r = rational_series(f.weight(), f.prec());
    for (long n = 0; n <= f.prec(); ++n) r.set(n, Rat(f.a(n)));
    return r;
}

// Reduce mod p^(N') for N' <= N.
inline QExpP reduce_series(const QExpP& f, const PrimePower& pp) {
    if (pp.p() != f.ring().pp.p() || pp.exponent() > f.ring().pp.exponent())
        throw bad_input("can only reduce a residue series to the same prime and lower exponent");
    QExpP r = residue_series(pp, f.weight(), f.prec());
    for (long n = 0; n <= f.prec(); ++n) r.set(n, pp.canon(f.a(n)));
    return r;
}

}  // namespace pmf
