#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pmf/miller.hpp"
#include "pmf/modmatrix.hpp"
#include "pmf/padic.hpp"

namespace pmf {

// First `count` primes different from p, in increasing order. These are the
// separator operators used to tell eigensystems apart mod p.
inline std::vector<long> separator_primes(long p, int count = 5) {
    std::vector<long> out;
    long q = 2;
    while (static_cast<int>(out.size()) < count) {
        if (q != p) out.push_back(q);
        q = next_prime(q);
    }
    return out;
}

// Exact characteristic polynomial (Berkowitz again, over Z). Monic
// coefficients c[0..n], c[0] = 1: det(X I - A) = sum c[i] X^(n-i).
inline std::vector<Int> charpoly_exact(const std::vector<std::vector<Int>>& a) {
    size_t n = a.size();
    if (n == 0) return {Int(1)};
    std::vector<Int> vec = {Int(1), -a[0][0]};
    for (size_t i = 1; i < n; ++i) {
        std::vector<Int> q(i + 2);
        q[0] = 1;
        q[1] = -a[i][i];
        std::vector<Int> w(i);
        for (size_t t = 0; t < i; ++t) w[t] = a[t][i];
        for (size_t j = 2; j <= i + 1; ++j) {
            Int s(0);
            for (size_t t = 0; t < i; ++t) s += a[i][t] * w[t];
            q[j] = -s;
            if (j <= i) {
                std::vector<Int> w2(i, Int(0));
                for (size_t r = 0; r < i; ++r) {
                    Int acc(0);
                    for (size_t t = 0; t < i; ++t) acc += a[r][t] * w[t];
                    w2[r] = acc;
                }
                w = std::move(w2);
            }
        }
        std::vector<Int> next(vec.size() + 1, Int(0));
        for (size_t r = 0; r < next.size(); ++r) {
            Int s(0);
            for (size_t c = 0; c < vec.size(); ++c) {
                if (r < c || r - c >= q.size()) continue;
                s += q[r - c] * vec[c];
            }
            next[r] = s;
        }
        vec = std::move(next);
    }
    return vec;
}

inline Int eval_poly_mod(const std::vector<Int>& monic_desc, const Int& x, const PrimePower& pp) {
    Int v(0);
    for (const Int& c : monic_desc) v = pp.canon(v * x + c);
    return v;
}

inline Int eval_poly_derivative_mod(const std::vector<Int>& monic_desc, const Int& x,
                                    const PrimePower& pp) {
    long n = static_cast<long>(monic_desc.size()) - 1;
    Int v(0);
    for (long i = 0; i < n; ++i)
        v = pp.canon(v * x + Int(n - i) * monic_desc[static_cast<size_t>(i)]);
    return v;
}

// Newton-lift a root of a monic polynomial from mod p to mod p^N; the
// derivative must be a unit at the root (simple root mod p).
inline Int hensel_lift_root(const std::vector<Int>& monic_desc, const Int& root_mod_p,
                            const PrimePower& pp) {
    PrimePower fp(pp.p(), 1);
    if (eval_poly_mod(monic_desc, root_mod_p, fp) != 0)
        throw bad_input("hensel lift: not a root mod p");
    if (eval_poly_derivative_mod(monic_desc, root_mod_p, fp) == 0)
        throw separability_error("hensel lift: repeated root mod p");
    Int x = pp.canon(root_mod_p);
    for (int it = 0; it < pp.exponent() + 2; ++it) {
        Int fx = eval_poly_mod(monic_desc, x, pp);
        Int dfx = eval_poly_derivative_mod(monic_desc, x, pp);
        x = pp.canon(x - fx * pp.inv(dfx));
    }
    if (eval_poly_mod(monic_desc, x, pp) != 0)
        throw invariant_violation("hensel lift failed to converge");
    return x;
}

// Unit root of X^2 - a_p X + p^{k-1}, by Newton iteration from a_p mod p.
inline PadicScalar hensel_unit_root(const Int& a_p, long k, const PrimePower& pp) {
    if (!pp.is_unit(a_p)) throw bad_input("not ordinary: a_p has positive valuation");
    std::vector<Int> quad = {Int(1), pp.neg(a_p),
                             pow_mod(Int(pp.p()), k - 1, pp.modulus())};
    Int r0 = PrimePower(pp.p(), 1).canon(a_p);
    Int alpha = hensel_lift_root(quad, r0, pp);
    return PadicScalar::from_residue(alpha, pp);
}

inline PadicScalar hensel_unit_root(const PadicScalar& a_p, long k) {
    if (a_p.is_zero() || !a_p.is_unit())
        throw bad_input("not ordinary: a_p has positive valuation");
    PrimePower pp(a_p.p(), a_p.rel_prec());
    return hensel_unit_root(a_p.residue(pp), k, pp);
}

// Level-1 normalized cuspidal eigenform fixture. Coefficients are exact
// integers when the cuspidal space is one-dimensional, and residues mod p^N
// (Hensel-lifted eigensystem) otherwise.
struct EigenformRecord {
    long weight_k = 0;
    long p = 0;
    int N = 0;
    long prec = 0;
    int level_exponent = 0;  // b = 0 at tame level 1
    bool rational = false;
    std::vector<Int> coeffs;        // residues mod p^N, indices 0..prec
    std::vector<Int> coeffs_exact;  // present iff rational
    std::map<long, Int> eigenvalues;        // a_ell residues for small primes
    std::map<long, Int> eigenvalues_exact;  // present iff rational
    bool ordinary = false;
    PadicScalar alpha;

    PrimePower ring() const { return PrimePower(p, N); }

    const Int& a(long n) const {
        if (n < 0 || n > prec) throw bad_input("eigenform coefficient outside precision");
        return coeffs[static_cast<size_t>(n)];
    }

    QExpP q_expansion(long upto) const {
        if (upto > prec) throw precision_error("eigenform fixture has too few coefficients");
        QExpP f = residue_series(ring(), static_cast<int>(weight_k), upto);
        for (long n = 0; n <= upto; ++n) f.set(n, coeffs[static_cast<size_t>(n)]);
        return f;
    }

    QExpZ q_expansion_exact(long upto) const {
        if (!rational) throw bad_input("eigenform fixture is not exact");
        if (upto > prec) throw precision_error("eigenform fixture has too few coefficients");
        QExpZ f = integer_series(static_cast<int>(weight_k), upto);
        for (long n = 0; n <= upto; ++n) f.set(n, coeffs_exact[static_cast<size_t>(n)]);
        return f;
    }

    // residual eigensystem: a_ell mod p at the separator primes
    std::map<long, Int> residual_eigensystem(int count = 5) const {
        PrimePower fp(p, 1);
        std::map<long, Int> r;
        for (long ell : separator_primes(p, count)) r[ell] = fp.canon(a(ell));
        return r;
    }
};

// Matrix of T_ell on the cuspidal Miller basis f_1..f_d, exact integers.
// Column j holds the coordinates (= coefficients a_1..a_d) of T_ell f_j.
inline std::vector<std::vector<Int>> hecke_matrix_cusp(long ell, long k, MillerWorkspace& ws) {
    long d = dim_sk(k);
    if (d == 0) return {};
    auto basis = ws.basis(k);
    if (ws.prec() < ell * (d + 1))
        throw precision_error("insufficient q-precision for T_" + std::to_string(ell));
    std::vector<std::vector<Int>> m(static_cast<size_t>(d),
                                    std::vector<Int>(static_cast<size_t>(d)));
    for (long j = 1; j <= d; ++j) {
        QExpZ t = hecke_t(ell, basis[static_cast<size_t>(j)]);
        for (long i = 1; i <= d; ++i)
            m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = t.a(i);
    }
    return m;
}

struct EigenformScan {
    std::vector<EigenformRecord> records;
    std::vector<std::string> reports;  // eigensystems skipped and why
};

namespace detail {

inline void finish_record(EigenformRecord& rec) {
    PrimePower pp(rec.p, rec.N);
    long bound = std::min<long>(rec.prec, 64);
    for (long ell = 2; ell <= bound; ell = next_prime(ell)) {
        rec.eigenvalues[ell] = rec.a(ell);
        if (rec.rational) rec.eigenvalues_exact[ell] = rec.coeffs_exact[static_cast<size_t>(ell)];
    }
    bool unit_ap;
    if (rec.rational) {
        const Int& ap = rec.coeffs_exact[static_cast<size_t>(rec.p)];
        unit_ap = (ap != 0) && valuation(ap, Int(rec.p)) == 0;
    } else {
        unit_ap = pp.is_unit(rec.a(rec.p));
    }
    rec.ordinary = unit_ap;
    if (rec.ordinary) rec.alpha = hensel_unit_root(rec.a(rec.p), rec.weight_k, pp);
}

}  // namespace detail

// All cuspidal eigensystems of weight k whose Hecke eigenvalues can be
// separated mod p: for each separator operator T_ell in turn, each simple
// root of its characteristic polynomial mod p is Hensel-lifted to Z/p^N and
// the eigenvector solved there. Repeated roots are reported, not resolved.
inline EigenformScan cusp_eigenforms(long k, long p, int N, long prec) {
    EigenformScan out;
    long d = dim_sk(k);
    if (d == 0) return out;
    if (k % 2 != 0) return out;
    PrimePower pp(p, N);
    PrimePower fp(p, 1);
    MillerWorkspace ws(prec);
    auto basis = ws.basis(k);

    std::set<std::vector<Int>> seen;  // dedupe by residue coefficient vector
    std::set<std::pair<long, long>> reported_roots;

    if (d == 1) {
        EigenformRecord rec;
        rec.weight_k = k;
        rec.p = p;
        rec.N = N;
        rec.prec = prec;
        rec.rational = true;
        rec.coeffs_exact.resize(static_cast<size_t>(prec) + 1);
        rec.coeffs.resize(static_cast<size_t>(prec) + 1);
        for (long n = 0; n <= prec; ++n) {
            rec.coeffs_exact[static_cast<size_t>(n)] = basis[1].a(n);
            rec.coeffs[static_cast<size_t>(n)] = pp.canon(basis[1].a(n));
        }
        detail::finish_record(rec);
        out.records.push_back(std::move(rec));
        return out;
    }

    for (long ell : separator_primes(p)) {
        auto tmat = hecke_matrix_cusp(ell, k, ws);
        auto chi = charpoly_exact(tmat);
        std::vector<Int> chi_mod(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) chi_mod[i] = fp.canon(chi[i]);
        for (long r = 0; r < p; ++r) {
            Int root(r);
            if (eval_poly_mod(chi_mod, root, fp) != 0) continue;
            if (eval_poly_derivative_mod(chi_mod, root, fp) == 0) {
                if (reported_roots.insert({ell, r}).second)
                    out.reports.push_back("T_" + std::to_string(ell) + ": eigenvalue " +
                                          std::to_string(r) +
                                          " mod p is a repeated root; eigensystem not "
                                          "p-adically separable at this precision");
                continue;
            }
            std::vector<Int> chi_pn(chi.size());
            for (size_t i = 0; i < chi.size(); ++i) chi_pn[i] = pp.canon(chi[i]);
            Int a = hensel_lift_root(chi_pn, root, pp);
            ModMatrix tm(pp, d, d);
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    tm.set(i, j, tmat[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                     (i == j ? a : Int(0)));
            std::vector<ModVec> ker;
            try {
                ker = kernel_unit(tm);
            } catch (const precision_error&) {
                out.reports.push_back("T_" + std::to_string(ell) + ": eigenvector at " + a.get_str() +
                                      " not resolvable with unit pivots");
                continue;
            }
            if (ker.size() != 1) {
                out.reports.push_back("T_" + std::to_string(ell) + ": eigenvalue " + a.get_str() +
                                      " has kernel rank " + std::to_string(ker.size()));
                continue;
            }
            ModVec v = ker[0];
            if (!pp.is_unit(v[0])) {
                out.reports.push_back("T_" + std::to_string(ell) +
                                      ": eigenvector not normalizable (a_1 not a unit)");
                continue;
            }
            Int inv = pp.inv(v[0]);
            for (auto& c : v) c = pp.mul(c, inv);

            EigenformRecord rec;
            rec.weight_k = k;
            rec.p = p;
            rec.N = N;
            rec.prec = prec;
            rec.rational = false;
            rec.coeffs.assign(static_cast<size_t>(prec) + 1, Int(0));
            for (long n = 1; n <= prec; ++n) {
                Int s(0);
                for (long j = 1; j <= d; ++j) s += v[static_cast<size_t>(j - 1)] * basis[static_cast<size_t>(j)].a(n);
                rec.coeffs[static_cast<size_t>(n)] = pp.canon(s);
            }
            if (!seen.insert(rec.coeffs).second) continue;
            detail::finish_record(rec);
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

// f_alpha(tau) = f(tau) - (p^{k-1}/alpha) f(p tau): the level-p eigenvector
// with U_p-eigenvalue alpha, mod p^N.
inline QExpP p_stabilize(const EigenformRecord& f, long prec) {
    if (!f.ordinary) throw bad_input("p_stabilize: eigenform is not ordinary");
    PrimePower pp = f.ring();
    PadicScalar pk = PadicScalar::from_integer(int_pow(f.p, static_cast<unsigned long>(f.weight_k - 1)),
                                               f.p, f.N);
    Int beta = (pk / f.alpha).residue(pp);
    QExpP g = residue_series(pp, static_cast<int>(f.weight_k), prec);
    for (long n = 1; n <= prec; ++n) {
        Int c = f.a(n);
        if (n % f.p == 0) c -= beta * f.a(n / f.p);
        g.set(n, c);
    }
    return g;
}

}  // namespace pmf
