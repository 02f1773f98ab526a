#pragma once

#include <map>
#include <vector>

#include "pmf/eisenstein.hpp"

namespace pmf {

// dim M_k(SL_2(Z)) for even k >= 0 (0 for odd or negative k).
inline long dim_mk(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    if (k % 12 == 2) return k / 12;
    return k / 12 + 1;
}

inline long dim_sk(long k) {
    long d = dim_mk(k);
    return k >= 4 ? std::max<long>(0, d - 1) : 0;
}

// Shares the E4/E6/Delta power chains across the several weights a Katz
// system needs; everything is exact integer arithmetic.
class MillerWorkspace {
  public:
    explicit MillerWorkspace(long prec)
        : prec_(prec), e4_(e4_series(prec)), e6_(e6_series(prec)), delta_(delta_series(prec)) {}

    long prec() const { return prec_; }

    // Echelonized integral basis f_0, ..., f_{d-1} of M_k with
    // f_j = q^j + O(q^d), d = dim M_k.
    std::vector<QExpZ> basis(long k) {
        if (k < 4 || k % 2 != 0) throw bad_input("Miller basis needs even weight >= 4");
        long d = dim_mk(k);
        if (prec_ <= d) throw precision_error("q-precision too small for the Miller basis");
        std::vector<QExpZ> f;
        f.reserve(static_cast<size_t>(d));
        for (long j = 0; j < d; ++j) {
            long rem = k - 12 * j;
            long b = (rem % 4 == 0) ? 0 : 1;
            long a = (rem - 6 * b) / 4;
            QExpZ g = delta_pow(j) * e4_pow(a);
            if (b) g = g * e6_;
            g.set_weight(static_cast<int>(k));
            f.push_back(std::move(g));
        }
        // monomial j has leading term q^j with coefficient 1; clear the block
        // above the diagonal from the top down
        for (long j = d - 1; j >= 0; --j) {
            for (long j2 = j + 1; j2 < d; ++j2) {
                Int c = f[static_cast<size_t>(j)].a(j2);
                if (c == 0) continue;
                for (long n = j2; n <= prec_; ++n)
                    f[static_cast<size_t>(j)].set(n, f[static_cast<size_t>(j)].a(n) -
                                                         c * f[static_cast<size_t>(j2)].a(n));
            }
            if (f[static_cast<size_t>(j)].a(j) != 1)
                throw invariant_violation("Miller monomial lost its unit leading coefficient");
        }
        return f;
    }

  private:
    const QExpZ& e4_pow(long a) {
        auto it = e4pow_.find(a);
        if (it != e4pow_.end()) return it->second;
        QExpZ v = (a == 0) ? one() : e4_pow(a - 1) * e4_;
        return e4pow_.emplace(a, std::move(v)).first->second;
    }
    const QExpZ& delta_pow(long j) {
        auto it = dpow_.find(j);
        if (it != dpow_.end()) return it->second;
        QExpZ v = (j == 0) ? one() : delta_pow(j - 1) * delta_;
        return dpow_.emplace(j, std::move(v)).first->second;
    }
    QExpZ one() const {
        QExpZ v = integer_series(0, prec_);
        v.set(0, Int(1));
        return v;
    }

    long prec_;
    QExpZ e4_, e6_, delta_;
    std::map<long, QExpZ> e4pow_, dpow_;
};

inline std::vector<QExpZ> miller_basis(long k, long prec) {
    MillerWorkspace w(prec);
    return w.basis(k);
}

}  // namespace pmf
