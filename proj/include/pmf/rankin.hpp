#pragma once

#include <vector>

#include "pmf/family.hpp"
#include "pmf/katz.hpp"

namespace pmf {

// Interpolation range: integers 0 <= t <= k - l - 1 (empty when k <= l).
inline std::vector<long> sigma_range(long k, long ell) {
    std::vector<long> r;
    for (long t = 0; t + ell + 1 <= k; ++t) r.push_back(t);
    return r;
}

// Specialization point (f, theta^t(g)); f the ordinary side.
struct RankinPoint {
    EigenformRecord f;
    EigenformRecord g;
    long t = 0;

    bool in_sigma() const { return 0 <= t && t <= f.weight_k - g.weight_k - 1; }
};

// Ordinary Katz coordinates of the U_p-corrected product
// u_p( theta^t(g^[p]) * E^[p]_{k-l-2t} ), projected by e^ord. The single U_p
// application realizes the nearly-overconvergent product inside the
// overconvergent space, and leaves a pending alpha^{-1} correction that
// rankin_lvalue consumes.
inline ModVec xi_at_point(const RankinPoint& pt, const KatzSystem& sys) {
    if (pt.t < 0) throw bad_input("theta^t specializations need t >= 0");
    if (pt.f.weight_k != sys.weight())
        throw bad_input("Katz system weight does not match f");
    if (pt.f.p != sys.p() || pt.g.p != sys.p() || pt.f.N != sys.precision_exponent() ||
        pt.g.N != sys.precision_exponent())
        throw bad_input("(p, N) mismatch between fixtures and Katz system");
    long k = pt.f.weight_k, ell = pt.g.weight_k, t = pt.t;
    long we = k - ell - 2 * t;
    if ((ell + 2 * t) + we != k) throw invariant_violation("weight bookkeeping failed");
    QExpP gser = pt.g.q_expansion(sys.qprec());
    QExpP h = theta(p_deplete(gser, sys.p()), t) * depleted_eisenstein(sys.ring(), we, sys.qprec());
    ModVec coords = sys.coordinates(u_p(h, sys.p()));
    return sys.ordinary_projector().apply(coords);
}

struct RankinValue {
    PadicScalar value;
    bool in_sigma = false;
};

// Caches the Katz system scaffolding (ordinary space, Hecke projector) for a
// fixed ordinary f, so grids over (g, t) reuse it.
class RankinEvaluator {
  public:
    RankinEvaluator(const KatzSystem& sys, const EigenformRecord& f, long denom_budget = -1)
        : sys_(&sys), f_(f), lambda_(sys, f),
          budget_(denom_budget >= 0 ? denom_budget : (2L * sys.precision_exponent()) / 3) {}

    const LambdaFunctional& functional() const { return lambda_; }

    RankinValue value(const EigenformRecord& g, long t) const {
        RankinPoint pt{f_, g, t};
        ModVec xi = xi_at_point(pt, *sys_);
        PadicScalar lam = lambda_(xi);
        PadicScalar v = lam / f_.alpha;  // undo the single U_p application
        if (!v.is_zero() && v.valuation_floor() < -budget_)
            throw precision_error("value exceeds the denominator valuation budget");
        return RankinValue{v, pt.in_sigma()};
    }

  private:
    const KatzSystem* sys_;
    EigenformRecord f_;
    LambdaFunctional lambda_;
    long budget_;
};

inline RankinValue rankin_lvalue(const RankinPoint& pt, const KatzSystem& sys,
                                 long denom_budget = -1) {
    RankinEvaluator ev(sys, pt.f, denom_budget);
    return ev.value(pt.g, pt.t);
}

// P_p(g, X): inverse of the U_p/T_p Dirichlet series at p. For level-1 g
// this is 1 - a_p X + p^{l-1} X^2; coefficients as p-adic scalars.
inline std::vector<PadicScalar> p_euler_poly(const EigenformRecord& g) {
    long p = g.p;
    int N = g.N;
    return {PadicScalar::from_integer(Int(1), p, N),
            -PadicScalar::from_residue(g.a(p), g.ring()),
            PadicScalar::from_integer(int_pow(p, static_cast<unsigned long>(g.weight_k - 1)), p, N)};
}

inline PadicScalar eval_poly(const std::vector<PadicScalar>& asc, const PadicScalar& x) {
    PadicScalar v = PadicScalar::exact_zero(x.p());
    for (size_t i = asc.size(); i-- > 0;) v = v * x + asc[i];
    return v;
}

// Adjoint Euler factor for f crystalline at p (the level-1 case):
// (1 - p^{k-1}/alpha^2)(1 - p^{k-2}/alpha^2).
inline PadicScalar adjoint_factor(const EigenformRecord& f) {
    if (!f.ordinary) throw bad_input("adjoint factor needs an ordinary eigenform");
    long p = f.p;
    int N = f.N;
    PadicScalar one = PadicScalar::from_integer(Int(1), p, N);
    PadicScalar a2 = f.alpha * f.alpha;
    PadicScalar t1 = one - PadicScalar::from_integer(int_pow(p, static_cast<unsigned long>(f.weight_k - 1)), p, N) / a2;
    PadicScalar t2 = one - PadicScalar::from_integer(int_pow(p, static_cast<unsigned long>(f.weight_k - 2)), p, N) / a2;
    return t1 * t2;
}

// Formula stubs for the non-crystalline cases (excluded from level-1 scope;
// transcription only, exercised as formulas).
inline PadicScalar adjoint_factor_semistable(const PadicScalar& alpha, long k) {
    PadicScalar pk = PadicScalar::from_integer(int_pow(alpha.p(), static_cast<unsigned long>(k - 1)),
                                               alpha.p(), alpha.rel_prec());
    return -(pk / (alpha * alpha));
}

inline PadicScalar adjoint_factor_nonsemistable(const PadicScalar& alpha, long k, long a,
                                                const PadicScalar& gauss_sum) {
    PadicScalar pk = PadicScalar::from_integer(int_pow(alpha.p(), static_cast<unsigned long>(k - 1)),
                                               alpha.p(), alpha.rel_prec());
    return (pk / (alpha * alpha)).pow(a) * gauss_sum;
}

// P_p(g, p^t alpha^{-1}) / P_p(g*, p^{-(l+t)} alpha), with g* = g at level 1.
inline PadicScalar interpolation_ratio(const RankinPoint& pt) {
    const EigenformRecord& f = pt.f;
    const EigenformRecord& g = pt.g;
    long p = f.p;
    int N = f.N;
    auto pp = p_euler_poly(g);
    PadicScalar pt_pow = PadicScalar::from_integer(int_pow(p, static_cast<unsigned long>(pt.t)), p, N);
    PadicScalar x1 = pt_pow / f.alpha;
    PadicScalar x2 = f.alpha / PadicScalar::from_integer(
                                   int_pow(p, static_cast<unsigned long>(g.weight_k + pt.t)), p, N);
    PadicScalar num = eval_poly(pp, x1);
    PadicScalar den = eval_poly(pp, x2);
    if (den.is_zero()) throw precision_error("interpolation ratio: denominator vanishes mod p^N");
    return num / den;
}

// Symbolic bookkeeping for the archimedean ingredients of the interpolation
// formula; only the two p-adic factors are numbers.
struct InterpolationFactors {
    PadicScalar ratio;
    PadicScalar adjoint;
    long pow2_exponent = 0;   // 2^{1-k}
    long sign_exponent = 0;   // (-1)^t
    long i_exponent = 0;      // i^{k+l}
    long gamma_shift_1 = 0;   // Gamma_C(s)      at s = l+t
    long gamma_shift_2 = 0;   // Gamma_C(s-l+1)  at s = l+t
    int level_exponent_b = 0;  // epsilon-factor prefactor is 1 at b = 0
};

inline InterpolationFactors interpolation_factors(const RankinPoint& pt) {
    InterpolationFactors out;
    out.ratio = interpolation_ratio(pt);
    out.adjoint = adjoint_factor(pt.f);
    long k = pt.f.weight_k, ell = pt.g.weight_k, t = pt.t;
    out.pow2_exponent = 1 - k;
    out.sign_exponent = t;
    out.i_exponent = k + ell;
    out.gamma_shift_1 = ell + t;
    out.gamma_shift_2 = t + 1;
    out.level_exponent_b = 0;
    return out;
}

// Exact-rational instances of the two sides of the interpolation-factor
// determinant identity. beta is a free nonzero parameter; gamma is pinned by
// beta gamma = p^{l-1}. Not reachable from fixtures: used to check the
// identity as algebra.
inline Rat pratio_exact(long p, long ell, long t, const Rat& alpha, const Rat& beta) {
    Rat gamma = rat_pow(Rat(p), ell - 1) / beta;
    auto P = [&](const Rat& x) { return (1 - beta * x) * (1 - gamma * x); };
    Rat x1 = rat_pow(Rat(p), t) / alpha;
    Rat x2 = rat_pow(Rat(p), -(ell + t)) * alpha;
    Rat den = P(x2);
    if (den == 0) throw bad_input("degenerate instance: denominator vanishes");
    return P(x1) / den;
}

inline Rat dcris_determinant_exact(long p, long ell, long t, const Rat& alpha, const Rat& beta) {
    Rat gamma = rat_pow(Rat(p), ell - 1) / beta;
    Rat pm = rat_pow(Rat(p), -1 - t);
    Rat x1 = alpha / beta * pm;
    Rat x2 = alpha / gamma * pm;
    Rat det(1);
    for (const Rat& x : {x1, x2}) {
        if (x == 1 || x == 0) throw bad_input("degenerate instance: phi eigenvalue 1 or 0");
        det *= (1 - Rat(1, p) / x) / (1 - x);
    }
    return det;
}

// det(1 - X M) for the companion matrix M of P(X) = 1 + c_1 X + ... + c_d X^d
// is P itself; the tensor factor is the same determinant for the Kronecker
// product of the two companions. Coefficients ascending, constant term 1.
inline std::vector<Int> tensor_euler_factor(const std::vector<Int>& pf,
                                            const std::vector<Int>& pg) {
    auto companion = [](const std::vector<Int>& c) {
        if (c.empty() || c[0] != 1) throw bad_input("Euler polynomial must have constant term 1");
        long d = static_cast<long>(c.size()) - 1;
        if (d < 1) throw bad_input("Euler polynomial must have degree >= 1");
        std::vector<std::vector<Int>> m(static_cast<size_t>(d),
                                        std::vector<Int>(static_cast<size_t>(d), Int(0)));
        for (long i = 1; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = 1;
        for (long i = 0; i < d; ++i)
            m[static_cast<size_t>(i)][static_cast<size_t>(d - 1)] = -c[static_cast<size_t>(d - i)];
        return m;
    };
    auto a = companion(pf), b = companion(pg);
    size_t da = a.size(), db = b.size();
    std::vector<std::vector<Int>> k(da * db, std::vector<Int>(da * db, Int(0)));
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < da; ++j)
            for (size_t s = 0; s < db; ++s)
                for (size_t u = 0; u < db; ++u) k[i * db + s][j * db + u] = a[i][j] * b[s][u];
    return charpoly_exact(k);  // det(X I - K) coefficients = det(1 - X K) ascending
}

// Dirichlet coefficients of L^(p)(f x g, s) = prod_{ell != p} (quartic)^{-1},
// exact integers; needs exact fixtures. Verifies the zeta-convolution shape
// of the definition along the way.
inline std::vector<Int> dirichlet_coefficients(const EigenformRecord& f, const EigenformRecord& g,
                                               long bound) {
    if (!f.rational || !g.rational)
        throw bad_input("dirichlet coefficients need exact (dim-1) fixtures");
    if (f.p != g.p) throw bad_input("fixtures at different primes");
    if (bound > f.prec || bound > g.prec)
        throw precision_error("bound exceeds fixture q-precision");
    long p = f.p;
    std::vector<Int> out(static_cast<size_t>(bound) + 1, Int(0));
    out[1] = 1;
    // prime-power blocks from the inverted quartic
    std::vector<long> primes;
    for (long q = 2; q <= bound; q = next_prime(q)) primes.push_back(q);
    std::vector<std::vector<Int>> block(primes.size());
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        long ell = primes[pi];
        long rmax = 0;
        Int pw(1);
        while (pw * ell <= bound) { pw *= ell; ++rmax; }
        std::vector<Int>& u = block[pi];
        u.assign(static_cast<size_t>(rmax) + 1, Int(0));
        u[0] = 1;
        if (ell == p) continue;  // Euler factor removed at p
        std::vector<Int> pf = {Int(1), -f.eigenvalues_exact.at(ell),
                               int_pow(ell, static_cast<unsigned long>(f.weight_k - 1))};
        std::vector<Int> pg = {Int(1), -g.eigenvalues_exact.at(ell),
                               int_pow(ell, static_cast<unsigned long>(g.weight_k - 1))};
        std::vector<Int> q4 = tensor_euler_factor(pf, pg);
        for (long r = 1; r <= rmax; ++r) {
            Int s(0);
            for (long i = 1; i <= std::min<long>(4, r); ++i)
                s += q4[static_cast<size_t>(i)] * u[static_cast<size_t>(r - i)];
            u[static_cast<size_t>(r)] = -s;
        }
    }
    for (long n = 2; n <= bound; ++n) {
        long m = n;
        Int v(1);
        for (size_t pi = 0; pi < primes.size() && m > 1; ++pi) {
            long ell = primes[pi];
            if (m % ell != 0) continue;
            long e = 0;
            while (m % ell == 0) { m /= ell; ++e; }
            v *= block[pi][static_cast<size_t>(e)];
        }
        out[static_cast<size_t>(n)] = (m == 1) ? v : Int(0);
    }
    // zeta-convolution shape: B_n = sum_{m^2 | n, p !| m} m^{k+l-2} a_{n/m^2}(f) a_{n/m^2}(g)
    for (long n = 1; n <= bound; ++n) {
        if (n % p == 0) {
            if (out[static_cast<size_t>(n)] != 0)
                throw invariant_violation("depleted Dirichlet series has a p-divisible term");
            continue;
        }
        Int rhs(0);
        for (long m = 1; m * m <= n; ++m) {
            if (n % (m * m) != 0 || m % p == 0) continue;
            rhs += int_pow(m, static_cast<unsigned long>(f.weight_k + g.weight_k - 2)) *
                   f.coeffs_exact[static_cast<size_t>(n / (m * m))] *
                   g.coeffs_exact[static_cast<size_t>(n / (m * m))];
        }
        if (rhs != out[static_cast<size_t>(n)])
            throw invariant_violation("zeta-convolution identity failed at n = " + std::to_string(n));
    }
    return out;
}

}  // namespace pmf
