#pragma once

#include <algorithm>
#include <string>

#include "pmf/primepower.hpp"

namespace pmf {

// Element of Q_p known to finite precision, in the capped-relative model:
// a nonzero value is p^v * u with u a unit known mod p^N (N = relative
// precision, so the absolute precision is v + N). A value indistinguishable
// from 0 carries only an absolute valuation floor ("= O(p^floor)").
//
// Precision never degrades silently: +/- recompute the attainable precision
// from the operands' absolute precisions, * and / keep the minimum relative
// precision, and anything that would need more precision than is available
// throws precision_error.
class PadicScalar {
  public:
    PadicScalar() : p_(0), zero_(true), exact_zero_(true), v_(0), N_(0), u_(0), floor_(0) {}

    static PadicScalar exact_zero(long p) {
        PadicScalar x;
        x.p_ = p;
        return x;
    }

    // 0 + O(p^floor)
    static PadicScalar approximate_zero(long p, long floor) {
        PadicScalar x;
        x.p_ = p;
        x.exact_zero_ = false;
        x.floor_ = floor;
        return x;
    }

    // Exact integer / rational input, recorded to relative precision N.
    static PadicScalar from_integer(const Int& a, long p, int N) {
        if (a == 0) return exact_zero(p);
        PadicScalar x;
        x.p_ = p;
        x.zero_ = false;
        x.exact_zero_ = false;
        x.v_ = valuation(a, Int(p));
        x.N_ = N;
        Int unit = a / int_pow(p, static_cast<unsigned long>(x.v_));
        x.u_ = PrimePower(p, N).canon(unit);
        return x;
    }

    static PadicScalar from_rational(const Rat& a, long p, int N) {
        if (a == 0) return exact_zero(p);
        long vn = valuation(Int(a.get_num()), Int(p));
        long vd = valuation(Int(a.get_den()), Int(p));
        PadicScalar x;
        x.p_ = p;
        x.zero_ = false;
        x.exact_zero_ = false;
        x.v_ = vn - vd;
        x.N_ = N;
        PrimePower ring(p, N);
        Int nu = Int(a.get_num()) / int_pow(p, static_cast<unsigned long>(vn));
        Int du = Int(a.get_den()) / int_pow(p, static_cast<unsigned long>(vd));
        x.u_ = ring.div(ring.canon(nu), ring.canon(du));
        return x;
    }

    // Residue r known mod p^N (absolute precision N). The relative precision
    // of the result is N - v(r), which is all the residue determines.
    static PadicScalar from_residue(const Int& r, const PrimePower& ring) {
        Int c = ring.canon(r);
        if (c == 0) return approximate_zero(ring.p(), ring.exponent());
        long v = valuation(c, Int(ring.p()));
        int rel = static_cast<int>(ring.exponent() - v);
        PadicScalar x;
        x.p_ = ring.p();
        x.zero_ = false;
        x.exact_zero_ = false;
        x.v_ = v;
        x.N_ = rel;
        Int unit = c / int_pow(ring.p(), static_cast<unsigned long>(v));
        x.u_ = PrimePower(ring.p(), rel).canon(unit);
        return x;
    }

    long p() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool is_unit() const { return !zero_ && v_ == 0; }
    int rel_prec() const { return zero_ ? 0 : N_; }
    const Int& unit_part() const { return u_; }

    // Valuation; for an approximate zero this is the recorded floor (a lower
    // bound), for an exact zero it is unbounded and asking for it is an error.
    long valuation_floor() const {
        if (exact_zero_) throw bad_input("exact zero has unbounded valuation");
        return zero_ ? floor_ : v_;
    }

    // Absolute precision: the value is known mod p^(this).
    long abs_prec() const {
        if (exact_zero_) throw bad_input("exact zero has unbounded precision");
        return zero_ ? floor_ : v_ + N_;
    }

    PadicScalar operator-() const {
        if (zero_) return *this;
        PadicScalar x = *this;
        x.u_ = PrimePower(p_, N_).neg(u_);
        return x;
    }

    PadicScalar operator+(const PadicScalar& o) const {
        check_same_prime(o);
        if (exact_zero_) return o;
        if (o.exact_zero_) return *this;
        long a = std::min(abs_prec(), o.abs_prec());
        if (zero_ && o.zero_) return approximate_zero(p_, a);
        if (zero_ || o.zero_) {
            const PadicScalar& nz = zero_ ? o : *this;
            if (nz.v_ >= a) return approximate_zero(p_, a);
            return nz.reduced_to_abs(a);
        }
        long m = std::min(v_, o.v_);
        if (m >= a) return approximate_zero(p_, a);
        // residues mod p^(a-m) of x/p^m and y/p^m
        PrimePower ring(p_, static_cast<int>(a - m));
        Int xr = ring.mul(ring.canon(int_pow(p_, static_cast<unsigned long>(v_ - m))), u_);
        Int yr = ring.mul(ring.canon(int_pow(p_, static_cast<unsigned long>(o.v_ - m))), o.u_);
        Int s = ring.add(xr, yr);
        if (s == 0) return approximate_zero(p_, a);
        long w = valuation(s, Int(p_));
        PadicScalar x;
        x.p_ = p_;
        x.zero_ = false;
        x.exact_zero_ = false;
        x.v_ = m + w;
        x.N_ = static_cast<int>(a - x.v_);
        Int unit = s / int_pow(p_, static_cast<unsigned long>(w));
        x.u_ = PrimePower(p_, x.N_).canon(unit);
        return x;
    }

    PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }

    PadicScalar operator*(const PadicScalar& o) const {
        check_same_prime(o);
        if (exact_zero_ || o.exact_zero_) return exact_zero(p_);
        if (zero_ || o.zero_) {
            long f1 = zero_ ? floor_ : v_;
            long f2 = o.zero_ ? o.floor_ : o.v_;
            return approximate_zero(p_, f1 + f2);
        }
        PadicScalar x;
        x.p_ = p_;
        x.zero_ = false;
        x.exact_zero_ = false;
        x.v_ = v_ + o.v_;
        x.N_ = std::min(N_, o.N_);
        x.u_ = PrimePower(p_, x.N_).mul(u_, o.u_);
        return x;
    }

    PadicScalar inverse() const {
        if (zero_) throw precision_error("cannot invert a (p-adically) zero value");
        PadicScalar x = *this;
        x.v_ = -v_;
        x.u_ = PrimePower(p_, N_).inv(u_);
        return x;
    }

    PadicScalar operator/(const PadicScalar& o) const { return *this * o.inverse(); }

    PadicScalar pow(long e) const {
        if (zero_) {
            if (e <= 0) throw bad_input("0^e with e <= 0");
            if (exact_zero_) return *this;
            return approximate_zero(p_, floor_ * e);
        }
        PadicScalar x = *this;
        x.v_ = v_ * e;
        x.u_ = PrimePower(p_, N_).pow(u_, e);
        return x;
    }

    // Cap the relative precision at n.
    PadicScalar reduced(int n) const {
        if (zero_ || N_ <= n) return *this;
        PadicScalar x = *this;
        x.N_ = n;
        x.u_ = PrimePower(p_, n).canon(u_);
        return x;
    }

    // The residue p^v * u mod p^(ring exponent); requires v >= 0 and enough
    // absolute precision.
    Int residue(const PrimePower& ring) const {
        if (ring.p() != p_) throw bad_input("residue: prime mismatch");
        if (exact_zero_) return Int(0);
        if (abs_prec() < ring.exponent())
            throw precision_error("value known mod p^" + std::to_string(abs_prec()) +
                                  " only, need p^" + std::to_string(ring.exponent()));
        if (zero_) return Int(0);
        if (v_ < 0) throw precision_error("negative valuation value has no residue mod p^N");
        return ring.mul(ring.canon(int_pow(p_, static_cast<unsigned long>(v_))), u_);
    }

    // Indistinguishable at the shared absolute precision?
    bool congruent(const PadicScalar& o) const {
        check_same_prime(o);
        PadicScalar d = *this - o;
        return d.is_zero();
    }

    bool identical(const PadicScalar& o) const {
        return p_ == o.p_ && zero_ == o.zero_ && exact_zero_ == o.exact_zero_ &&
               (zero_ ? (exact_zero_ || floor_ == o.floor_)
                      : (v_ == o.v_ && N_ == o.N_ && u_ == o.u_));
    }

    // Canonical rendering: "p^v * u mod p^N"; zeros render as "0" (exact)
    // or "O(p^(f))".
    std::string str() const {
        if (exact_zero_) return "0";
        if (zero_) return "O(" + std::to_string(p_) + "^(" + std::to_string(floor_) + "))";
        return std::to_string(p_) + "^" + std::to_string(v_) + " * " + u_.get_str() + " mod " +
               std::to_string(p_) + "^" + std::to_string(N_);
    }

  private:
    void check_same_prime(const PadicScalar& o) const {
        if (p_ != o.p_) throw bad_input("p-adic scalars over different primes");
    }

    PadicScalar reduced_to_abs(long a) const {
        PadicScalar x = *this;
        x.N_ = static_cast<int>(a - v_);
        x.u_ = PrimePower(p_, x.N_).canon(u_);
        return x;
    }

    long p_;
    bool zero_;
    bool exact_zero_;
    long v_;
    int N_;
    Int u_;
    long floor_;
};

}  // namespace pmf
