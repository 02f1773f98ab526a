#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pmf/config.hpp"
#include "pmf/eigenforms.hpp"

namespace pmf {

// Basis of weight-k overconvergent p-adic modular forms mod p^N to depth m:
// layer i = 0 holds the full Miller basis of M_k, layer i >= 1 holds the
// Miller complement of E_{p-1} M_{k+(i-1)(p-1)} inside M_{k+i(p-1)}, divided
// by E_{p-1}^i. Since E_{p-1} = 1 mod p, column c of the concatenated basis
// has leading exponent exactly c with pivot coefficient exactly 1, so
// coordinate solves are plain forward substitution with unit pivots.
class KatzSystem {
  public:
    KatzSystem(long p, int N, long k, long qprec = 0, int depth = 0)
        : ring_(p, N), k_(k) {
        if (k < 4 || k % 2 != 0) throw bad_input("Katz system needs even weight >= 4");
        if (p < 5) throw bad_input("Katz system needs p >= 5 (E_{p-1} classical)");
        depth_ = depth > 0 ? depth : katz_depth_rule(p, N);
        dims_.resize(static_cast<size_t>(depth_) + 1);
        for (int i = 0; i <= depth_; ++i)
            dims_[static_cast<size_t>(i)] = dim_mk(k + i * (p - 1));
        long B = dims_.back();
        long auto_m = katz_qprec_rule(p, B);
        qprec_ = qprec > 0 ? qprec : auto_m;
        if (qprec_ < p * (B + 10))
            throw precision_error("q-precision " + std::to_string(qprec_) +
                                  " below required bound " + std::to_string(p * (B + 10)));
        build_basis();
        build_up_matrix();
    }

    const PrimePower& ring() const { return ring_; }
    long p() const { return ring_.p(); }
    int precision_exponent() const { return ring_.exponent(); }
    long weight() const { return k_; }
    int depth() const { return depth_; }
    long qprec() const { return qprec_; }
    long basis_size() const { return static_cast<long>(basis_.size()); }

    // layer sizes: dim M_k, then dim M_{k+i(p-1)} - dim M_{k+(i-1)(p-1)}
    std::vector<long> layer_sizes() const {
        std::vector<long> s;
        s.push_back(dims_[0]);
        for (int i = 1; i <= depth_; ++i)
            s.push_back(dims_[static_cast<size_t>(i)] - dims_[static_cast<size_t>(i) - 1]);
        return s;
    }

    const QExpP& basis_element(long c) const { return basis_[static_cast<size_t>(c)]; }
    const ModMatrix& up_matrix() const { return up_; }

    const ModMatrix& ordinary_projector() const {
        if (!proj_) {
            long cap = 4 * static_cast<long>(ring_.exponent()) * basis_size();
            proj_ = idempotent_limit(up_, cap);
        }
        return *proj_;
    }

    // Coordinates of h in the Katz basis; h must be a weight-k series over
    // the same ring. The residual past the solve must vanish mod p^N over
    // the whole available coefficient range, otherwise h is not
    // overconvergent at this precision/depth and we refuse.
    ModVec coordinates(const QExpP& h) const {
        if (!(h.ring().pp == ring_)) throw bad_input("katz coordinates: modulus mismatch");
        if (h.weight() != static_cast<int>(k_))
            throw bad_input("katz coordinates: weight tag " + std::to_string(h.weight()) +
                            " does not match system weight " + std::to_string(k_));
        long B = basis_size();
        if (h.prec() < B)
            throw precision_error("katz coordinates: series precision below basis size");
        QExpP r = h;
        ModVec x(static_cast<size_t>(B), Int(0));
        for (long c = 0; c < B; ++c) {
            // pivot of column c sits at exponent c and equals 1 exactly
            Int coef = r.a(c);
            if (coef == 0) continue;
            x[static_cast<size_t>(c)] = coef;
            const QExpP& e = basis_[static_cast<size_t>(c)];
            for (long n = c; n <= r.prec(); ++n)
                r.set(n, r.a(n) - coef * e.a(n));
        }
        long worst = residual_valuation(r, B);
        if (worst < ring_.exponent())
            throw precision_error(
                "not overconvergent at this precision/depth: residual valuation " +
                std::to_string(worst) + " < " + std::to_string(ring_.exponent()));
        return x;
    }

    // Reconstruct the q-expansion sum(x_c e_c) to the basis precision.
    QExpP series_of(const ModVec& x) const {
        if (static_cast<long>(x.size()) != basis_size())
            throw bad_input("coordinate vector has wrong length");
        QExpP h = residue_series(ring_, static_cast<int>(k_), qprec_);
        for (long c = 0; c < basis_size(); ++c) {
            if (x[static_cast<size_t>(c)] == 0) continue;
            const QExpP& e = basis_[static_cast<size_t>(c)];
            for (long n = c; n <= qprec_; ++n)
                h.set(n, h.a(n) + x[static_cast<size_t>(c)] * e.a(n));
        }
        return h;
    }

  private:
    long residual_valuation(const QExpP& r, long from) const {
        long worst = ring_.exponent();
        for (long n = from; n <= r.prec(); ++n) {
            if (r.a(n) == 0) continue;
            worst = std::min(worst, valuation(r.a(n), Int(p())));
        }
        return worst;
    }

    void build_basis() {
        long p = ring_.p();
        MillerWorkspace ws(qprec_);
        QExpQ epm1 = eisenstein(p - 1, qprec_);
        QExpP epm1_res = reduce_series(epm1, ring_);
        QExpP inv_e = series_inverse(epm1_res, qprec_);
        QExpP inv_pow = residue_series(ring_, 0, qprec_);
        inv_pow.set(0, Int(1));
        for (int i = 0; i <= depth_; ++i) {
            if (i > 0) inv_pow = inv_pow * inv_e;
            long w = k_ + i * (p - 1);
            long lo = (i == 0) ? 0 : dims_[static_cast<size_t>(i) - 1];
            long hi = dims_[static_cast<size_t>(i)];
            if (lo == hi) continue;
            auto mb = ws.basis(w);
            for (long j = lo; j < hi; ++j) {
                QExpP e = reduce_series(mb[static_cast<size_t>(j)], ring_) * inv_pow;
                e.set_weight(static_cast<int>(k_));
                if (e.a(j) != 1)
                    throw invariant_violation("Katz basis pivot is not 1");
                for (long n = 0; n < j; ++n)
                    if (e.a(n) != 0) throw invariant_violation("Katz basis is not echelon");
                basis_.push_back(std::move(e));
            }
        }
        if (static_cast<long>(basis_.size()) != dims_.back())
            throw invariant_violation("Katz basis size disagrees with dim M_{k+m(p-1)}");
    }

    void build_up_matrix() {
        long B = basis_size();
        ModMatrix a(ring_, B, B);
        for (long c = 0; c < B; ++c) {
            ModVec col = coordinates(u_p(basis_[static_cast<size_t>(c)], p()));
            for (long i = 0; i < B; ++i) a.set(i, c, col[static_cast<size_t>(i)]);
        }
        up_ = std::move(a);
    }

    PrimePower ring_;
    long k_;
    int depth_;
    long qprec_;
    std::vector<long> dims_;
    std::vector<QExpP> basis_;
    ModMatrix up_{PrimePower(5, 1), 0, 0};
    mutable std::optional<ModMatrix> proj_;
};

// Unit-pivot column-echelon basis of the image of the ordinary projector.
struct OrdinarySpace {
    ModMatrix basis;              // B x r
    std::vector<long> pivot_rows;  // one per column, in column order

    long rank() const { return basis.cols(); }
};

inline OrdinarySpace ordinary_space(const KatzSystem& sys) {
    const ModMatrix& e = sys.ordinary_projector();
    const PrimePower& R = sys.ring();
    long B = e.rows();
    std::vector<ModVec> cols;
    std::vector<long> pivots;
    auto reduce_against = [&](ModVec& v) {
        for (size_t b = 0; b < cols.size(); ++b) {
            Int f = R.div(v[static_cast<size_t>(pivots[b])], cols[b][static_cast<size_t>(pivots[b])]);
            if (f == 0) continue;
            for (long i = 0; i < B; ++i)
                v[static_cast<size_t>(i)] = R.canon(v[static_cast<size_t>(i)] - f * cols[b][static_cast<size_t>(i)]);
        }
    };
    // Jordan clearing keeps each pivot row exclusive to its own column, so
    // coordinates in this basis can be read off independently.
    auto accept = [&](ModVec v, long pr) {
        Int inv = R.inv(v[static_cast<size_t>(pr)]);
        for (auto& c : v) c = R.mul(c, inv);
        for (size_t b = 0; b < cols.size(); ++b) {
            Int f = cols[b][static_cast<size_t>(pr)];
            if (f == 0) continue;
            for (long i = 0; i < B; ++i)
                cols[b][static_cast<size_t>(i)] =
                    R.canon(cols[b][static_cast<size_t>(i)] - f * v[static_cast<size_t>(i)]);
        }
        cols.push_back(std::move(v));
        pivots.push_back(pr);
    };
    auto find_unit_row = [&](const ModVec& v) {
        for (long i = 0; i < B; ++i)
            if (R.is_unit(v[static_cast<size_t>(i)])) return i;
        return -1L;
    };
    std::vector<ModVec> retry;
    for (long j = 0; j < B; ++j) {
        ModVec v(static_cast<size_t>(B));
        for (long i = 0; i < B; ++i) v[static_cast<size_t>(i)] = e.at(i, j);
        reduce_against(v);
        long pr = find_unit_row(v);
        if (pr >= 0) {
            accept(std::move(v), pr);
        } else if (std::any_of(v.begin(), v.end(), [](const Int& c) { return c != 0; })) {
            retry.push_back(std::move(v));
        }
    }
    // a deferred column must eventually reduce to zero or gain a unit entry
    bool progress = true;
    while (!retry.empty() && progress) {
        progress = false;
        std::vector<ModVec> next;
        for (auto& v : retry) {
            reduce_against(v);
            long pr = find_unit_row(v);
            if (pr >= 0) {
                accept(std::move(v), pr);
                progress = true;
            } else if (std::any_of(v.begin(), v.end(), [](const Int& c) { return c != 0; })) {
                next.push_back(std::move(v));
            }
        }
        retry = std::move(next);
    }
    if (!retry.empty())
        throw invariant_violation("ordinary image is not a free unit-pivot summand");
    if (static_cast<long>(cols.size()) != rank_mod_p(e))
        throw invariant_violation("ordinary rank disagrees with rank of E mod p");
    ModMatrix m(R, B, static_cast<long>(cols.size()));
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < B; ++i) m.set(i, j, cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    OrdinarySpace s{std::move(m), std::move(pivots)};
    return s;
}

// Coordinates of v (a Katz-coordinate vector lying in im(E)) in the ordinary
// basis; exact, and an error if v is not in the span.
inline ModVec express_in_ordinary(const OrdinarySpace& os, const ModVec& v) {
    const PrimePower& R = os.basis.ring();
    long B = os.basis.rows(), r = os.basis.cols();
    if (static_cast<long>(v.size()) != B) throw bad_input("vector length mismatch");
    ModVec x(static_cast<size_t>(r), Int(0));
    for (long b = 0; b < r; ++b) {
        long pr = os.pivot_rows[static_cast<size_t>(b)];
        x[static_cast<size_t>(b)] = v[static_cast<size_t>(pr)];  // pivot entries are 1
    }
    ModVec w = v;
    for (long b = 0; b < r; ++b) {
        if (x[static_cast<size_t>(b)] == 0) continue;
        for (long i = 0; i < B; ++i)
            w[static_cast<size_t>(i)] =
                R.canon(w[static_cast<size_t>(i)] - x[static_cast<size_t>(b)] * os.basis.at(i, b));
    }
    for (long i = 0; i < B; ++i)
        if (w[static_cast<size_t>(i)] != 0)
            throw precision_error("vector does not lie in the ordinary subspace mod p^N");
    return x;
}

inline ModVec ordinary_to_katz(const OrdinarySpace& os, const ModVec& x) {
    return os.basis.apply(x);
}

// Matrix of T_ell (ell != p) on the ordinary subspace. Hecke operators do
// not improve overconvergence, so they cannot be applied to the deep Katz
// layers at this depth; on im(E) every vector is classical mod p^N (the
// p-stabilization correction has valuation k-1 >= N), which keeps the
// coordinate solve exact.
inline ModMatrix hecke_on_ordinary(const KatzSystem& sys, const OrdinarySpace& os, long ell) {
    if (ell == sys.p()) throw bad_input("use the U_p matrix at ell = p");
    long r = os.basis.cols();
    ModMatrix out(os.basis.ring(), r, r);
    for (long j = 0; j < r; ++j) {
        ModVec b(static_cast<size_t>(os.basis.rows()));
        for (long i = 0; i < os.basis.rows(); ++i) b[static_cast<size_t>(i)] = os.basis.at(i, j);
        QExpP t = hecke_t(ell, sys.series_of(b));
        ModVec x = express_in_ordinary(os, sys.coordinates(t));
        for (long i = 0; i < r; ++i) out.set(i, j, x[static_cast<size_t>(i)]);
    }
    return out;
}

// Matrix of a Katz-basis operator restricted to the ordinary space.
inline ModMatrix restrict_to_ordinary(const OrdinarySpace& os, const ModMatrix& t) {
    long r = os.basis.cols();
    ModMatrix out(os.basis.ring(), r, r);
    ModMatrix tw = t * os.basis;
    for (long j = 0; j < r; ++j) {
        ModVec col(static_cast<size_t>(tw.rows()));
        for (long i = 0; i < tw.rows(); ++i) col[static_cast<size_t>(i)] = tw.at(i, j);
        ModVec x = express_in_ordinary(os, col);
        for (long i = 0; i < r; ++i) out.set(i, j, x[static_cast<size_t>(i)]);
    }
    return out;
}

// The eigen-functional lambda_{f,alpha}: the unique linear functional on the
// weight-k ordinary subspace that factors through projection to the
// f_alpha-eigenspace and sends f_alpha to 1. Realized as the q^1-coefficient
// of the composite Hecke projector ("product over the other eigensystems of
// (T - a')/(a_f - a')", assembled per separator prime as charpoly quotients,
// so no factorization mod p^N is ever needed).
class LambdaFunctional {
  public:
    LambdaFunctional(const KatzSystem& sys, const EigenformRecord& f)
        : sys_(&sys), os_(ordinary_space(sys)) {
        const PrimePower& R = sys.ring();
        if (f.weight_k != sys.weight() || f.p != sys.p() || f.N != sys.precision_exponent())
            throw bad_input("lambda functional: eigenform does not match the Katz system");
        if (!f.ordinary) throw bad_input("lambda functional: eigenform is not ordinary");

        // f_alpha = (1 - p^{k-1} alpha^{-2}) E f  (the ordinary projection of
        // f rescaled so that a_1 = 1)
        ModVec fc = sys.coordinates(f.q_expansion(sys.qprec()));
        ModVec ef = sys.ordinary_projector().apply(fc);
        PadicScalar one = PadicScalar::from_integer(Int(1), f.p, f.N);
        PadicScalar pk1 = PadicScalar::from_integer(
            int_pow(f.p, static_cast<unsigned long>(f.weight_k - 1)), f.p, f.N);
        PadicScalar scale = one - pk1 / (f.alpha * f.alpha);
        Int s = scale.residue(R);
        for (auto& c : ef) c = R.mul(c, s);
        falpha_katz_ = ef;
        falpha_ord_ = express_in_ordinary(os_, falpha_katz_);
        if (sys.series_of(falpha_katz_).a(1) != 1)
            throw invariant_violation("normalized f_alpha does not have a_1 = 1");

        // composite projector onto the f_alpha line inside im(E)
        long r = os_.rank();
        ModMatrix proj = ModMatrix::identity(R, r);
        bool used_any = false;
        for (long ell : separator_primes(f.p)) {
            ModMatrix t = hecke_on_ordinary(sys, os_, ell);
            Int a = f.a(ell);
            auto chi = charpoly(t);
            // synthetic division chi = (X - a) g + rem
            std::vector<Int> g(chi.size() - 1);
            Int carry(0);
            for (size_t i = 0; i + 1 < chi.size(); ++i) {
                carry = R.canon(chi[i] + a * carry);
                g[i] = carry;
            }
            Int rem = R.canon(chi.back() + a * carry);
            if (rem != 0)
                throw invariant_violation("a_ell(f) is not an eigenvalue of T_ell on im(E)");
            Int ga = eval_poly_mod(g, a, R);
            if (!R.is_unit(ga)) continue;  // T_ell alone does not separate f
            ModMatrix gt(R, r, r);
            for (long i = 0; i < r; ++i) gt.set(i, i, g[0]);
            for (size_t i = 1; i < g.size(); ++i) {
                gt = gt * t;
                for (long d = 0; d < r; ++d) gt.set(d, d, gt.at(d, d) + g[i]);
            }
            Int inv = R.inv(ga);
            ModMatrix pi(R, r, r);
            for (long i = 0; i < r; ++i)
                for (long j = 0; j < r; ++j) pi.set(i, j, gt.at(i, j) * inv);
            proj = pi * proj;
            used_any = true;
        }
        if (!used_any)
            throw separability_error(
                "no separator prime isolates the eigensystem mod p on im(E)");
        if (rank_mod_p(proj) != 1)
            throw separability_error(
                "eigenvalue collision mod p within im(E): projector rank exceeds 1");
        if (proj.apply(falpha_ord_) != falpha_ord_)
            throw invariant_violation("Hecke projector does not fix f_alpha");
        proj_ = std::move(proj);
    }

    const OrdinarySpace& space() const { return os_; }
    const ModVec& f_alpha_coordinates() const { return falpha_katz_; }

    // h given in Katz coordinates; must lie in im(E).
    PadicScalar operator()(const ModVec& h_katz) const {
        ModVec h = express_in_ordinary(os_, h_katz);
        ModVec w = proj_.apply(h);
        QExpP s = sys_->series_of(ordinary_to_katz(os_, w));
        return PadicScalar::from_residue(s.a(1), sys_->ring());
    }

  private:
    const KatzSystem* sys_;
    OrdinarySpace os_;
    ModVec falpha_katz_;
    ModVec falpha_ord_;
    ModMatrix proj_{PrimePower(5, 1), 0, 0};
};

inline PadicScalar lambda_f_alpha(const KatzSystem& sys, const EigenformRecord& f,
                                  const ModVec& h_ord) {
    return LambdaFunctional(sys, f)(h_ord);
}

}  // namespace pmf
