#pragma once

#include <vector>

#include "pmf/series.hpp"

namespace pmf {

// B_0 .. B_n, exact, by the defining recurrence.
inline std::vector<Rat> bernoulli_numbers(long n) {
    std::vector<Rat> b(static_cast<size_t>(n) + 1);
    b[0] = 1;
    for (long m = 1; m <= n; ++m) {
        Rat s(0);
        for (long j = 0; j < m; ++j) {
            Int c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m + 1),
                         static_cast<unsigned long>(j));
            s += Rat(c) * b[static_cast<size_t>(j)];
        }
        b[static_cast<size_t>(m)] = -s / Rat(m + 1);
    }
    return b;
}

inline Rat bernoulli(long n) { return bernoulli_numbers(n)[static_cast<size_t>(n)]; }

// sigma_e(n) for n = 0..prec (entry 0 unused), exact integers, e >= 0.
inline std::vector<Int> divisor_sums(long e, long prec) {
    std::vector<Int> s(static_cast<size_t>(prec) + 1, Int(0));
    for (long d = 1; d <= prec; ++d) {
        Int de = int_pow(d, static_cast<unsigned long>(e));
        for (long n = d; n <= prec; n += d) s[static_cast<size_t>(n)] += de;
    }
    return s;
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, exact rational coefficients.
inline QExpQ eisenstein(long k, long prec) {
    if (k < 4 || k % 2 != 0) throw bad_input("Eisenstein weight must be even and >= 4");
    Rat c = Rat(-2 * k) / bernoulli(k);
    auto sig = divisor_sums(k - 1, prec);
    QExpQ e = rational_series(static_cast<int>(k), prec);
    e.set(0, Rat(1));
    for (long n = 1; n <= prec; ++n) e.set(n, c * Rat(sig[static_cast<size_t>(n)]));
    return e;
}

// p-depleted Eisenstein series of weight k (any integer, including <= 0):
// a_0 = 0 and a_n = sum_{d | n} d^{k-1} for p does not divide n, else 0.
// All divisors of such n are prime to p, so the coefficients are p-integral
// even for k <= 0.
inline QExpP depleted_eisenstein(const PrimePower& pp, long k, long prec) {
    QExpP e = residue_series(pp, static_cast<int>(k), prec);
    long p = pp.p();
    for (long d = 1; d <= prec; ++d) {
        if (d % p == 0) continue;
        Int de = pow_mod(Int(d), k - 1, pp.modulus());
        for (long n = d; n <= prec; n += d)
            if (n % p != 0) e.set(n, e.a(n) + de);
    }
    return e;
}

inline QExpQ depleted_eisenstein_exact(long p, long k, long prec) {
    QExpQ e = rational_series(static_cast<int>(k), prec);
    for (long d = 1; d <= prec; ++d) {
        if (d % p == 0) continue;
        Rat de = rat_pow(Rat(d), k - 1);
        for (long n = d; n <= prec; n += d)
            if (n % p != 0) e.set(n, e.a(n) + de);
    }
    return e;
}

// Integer-normalized E_4 and E_6 (coefficients 240 sigma_3, -504 sigma_5).
inline QExpZ e4_series(long prec) {
    auto sig = divisor_sums(3, prec);
    QExpZ e = integer_series(4, prec);
    e.set(0, Int(1));
    for (long n = 1; n <= prec; ++n) e.set(n, Int(240) * sig[static_cast<size_t>(n)]);
    return e;
}

inline QExpZ e6_series(long prec) {
    auto sig = divisor_sums(5, prec);
    QExpZ e = integer_series(6, prec);
    e.set(0, Int(1));
    for (long n = 1; n <= prec; ++n) e.set(n, Int(-504) * sig[static_cast<size_t>(n)]);
    return e;
}

// Delta = q prod (1-q^n)^24 via the pentagonal-number expansion of the Euler
// product; the independent construction used to cross-check the E_4/E_6 route.
inline QExpZ delta_series(long prec) {
    QExpZ eta = integer_series(0, prec);  // prod (1 - q^n), sparse
    eta.set(0, Int(1));
    for (long j = 1;; ++j) {
        long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
        if (g1 > prec && g2 > prec) break;
        Int s = (j % 2 == 0) ? Int(1) : Int(-1);
        if (g1 <= prec) eta.set(g1, s);
        if (g2 <= prec) eta.set(g2, s);
    }
    QExpZ x2 = eta * eta;
    QExpZ x3 = x2 * eta;
    QExpZ x6 = x3 * x3;
    QExpZ x12 = x6 * x6;
    QExpZ x24 = x12 * x12;
    QExpZ d = integer_series(12, prec);
    for (long n = 1; n <= prec; ++n) d.set(n, x24.a(n - 1));
    return d;
}

}  // namespace pmf
