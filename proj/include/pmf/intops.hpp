#pragma once

#include <gmpxx.h>

#include <string>

#include "pmf/errors.hpp"

namespace pmf {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(long base, unsigned long e) { return int_pow(Int(base), e); }

// q^e for a rational q and any integer e (e < 0 inverts; q must be nonzero then).
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (e > 0) {
        Rat r;
        mpz_pow_ui(r.get_num_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (q == 0) throw bad_input("rat_pow: 0 raised to a negative power");
    return rat_pow(Rat(1) / q, -e);
}

// v_p(n); n must be nonzero.
inline long valuation(const Int& n, const Int& p) {
    if (n == 0) throw bad_input("valuation of 0 is undefined; handle zero separately");
    Int m = n;
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline long valuation(const Rat& q, const Int& p) {
    if (q == 0) throw bad_input("valuation of 0 is undefined; handle zero separately");
    return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

// a^{-1} mod m; throws when gcd(a, m) > 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw precision_error("non-invertible element mod " + m.get_str());
    return r;
}

// a^e mod m with e possibly negative (then a must be invertible mod m).
inline Int pow_mod(const Int& a, long e, const Int& m) {
    Int r;
    if (e >= 0) {
        mpz_powm_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
    } else {
        Int ai = inv_mod(a, m);
        mpz_powm_ui(r.get_mpz_t(), ai.get_mpz_t(), static_cast<unsigned long>(-e), m.get_mpz_t());
    }
    return r;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long next_prime(long n) {
    long m = n + 1;
    while (!is_prime(m)) ++m;
    return m;
}

}  // namespace pmf
