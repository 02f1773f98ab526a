#pragma once

#include <string>

#include "pmf/intops.hpp"

namespace pmf {

// Working ring Z/p^N. Residues are mpz_class values canonicalized to [0, p^N).
// Every object that carries residues (series, matrices) stores one of these,
// and mixed-ring operations are rejected.
class PrimePower {
  public:
    PrimePower() : p_(0), n_(0), mod_(0) {}
    PrimePower(long p, int n) : p_(p), n_(n) {
        if (!is_prime(p)) throw bad_input("modulus base " + std::to_string(p) + " is not prime");
        if (n < 1) throw bad_input("precision exponent must be >= 1");
        mod_ = int_pow(p, static_cast<unsigned long>(n));
    }

    long p() const { return p_; }
    int exponent() const { return n_; }
    const Int& modulus() const { return mod_; }

    bool operator==(const PrimePower& o) const { return p_ == o.p_ && n_ == o.n_; }
    bool operator!=(const PrimePower& o) const { return !(*this == o); }

    // The same prime at a different exponent.
    PrimePower with_exponent(int n) const { return PrimePower(p_, n); }

    Int canon(const Int& a) const {
        Int r;
        mpz_mod(r.get_mpz_t(), a.get_mpz_t(), mod_.get_mpz_t());
        return r;
    }

    Int add(const Int& a, const Int& b) const { return canon(a + b); }
    Int sub(const Int& a, const Int& b) const { return canon(a - b); }
    Int mul(const Int& a, const Int& b) const { return canon(a * b); }
    Int neg(const Int& a) const { return canon(-a); }
    Int inv(const Int& a) const { return inv_mod(a, mod_); }

    // a * b^{-1}; b must be a unit.
    Int div(const Int& a, const Int& b) const { return mul(a, inv(b)); }

    Int pow(const Int& a, long e) const { return pow_mod(a, e, mod_); }

    bool is_unit(const Int& a) const { return mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p_)) == 0 && canon(a) != 0; }

    // Reduce an exact rational with p-integral value; denominator must be prime to p.
    Int reduce(const Rat& q) const {
        Int den(q.get_den());
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p_)))
            throw precision_error("rational with p in denominator cannot be reduced mod " +
                                  std::to_string(p_) + "^" + std::to_string(n_));
        return mul(canon(Int(q.get_num())), inv(canon(den)));
    }

  private:
    long p_;
    int n_;
    Int mod_;
};

}  // namespace pmf
