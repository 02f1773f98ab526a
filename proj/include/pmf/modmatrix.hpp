#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmf/primepower.hpp"

namespace pmf {

using ModVec = std::vector<Int>;

// Dense matrix over Z/p^N, entries kept as canonical residues in [0, p^N).
// Solves and kernels insist on unit pivots so no precision is ever lost
// silently; a step that would divide by a non-unit throws precision_error.
class ModMatrix {
  public:
    ModMatrix(PrimePower ring, long rows, long cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows * cols), Int(0)) {
        if (rows < 0 || cols < 0) throw bad_input("negative matrix dimension");
    }

    static ModMatrix identity(const PrimePower& ring, long n) {
        ModMatrix m(ring, n, n);
        for (long i = 0; i < n; ++i) m.set(i, i, Int(1));
        return m;
    }

    const PrimePower& ring() const { return ring_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }

    const Int& at(long i, long j) const { return e_[idx(i, j)]; }
    void set(long i, long j, const Int& v) { e_[idx(i, j)] = ring_.canon(v); }

    bool operator==(const ModMatrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const ModMatrix& o) const { return !(*this == o); }

    ModMatrix operator+(const ModMatrix& o) const {
        require_same_shape(o);
        ModMatrix r(ring_, rows_, cols_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = ring_.add(e_[t], o.e_[t]);
        return r;
    }

    ModMatrix operator-(const ModMatrix& o) const {
        require_same_shape(o);
        ModMatrix r(ring_, rows_, cols_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = ring_.sub(e_[t], o.e_[t]);
        return r;
    }

    ModMatrix operator*(const ModMatrix& o) const {
        if (ring_ != o.ring_) throw bad_input("modulus mismatch in matrix product");
        if (cols_ != o.rows_) throw bad_input("shape mismatch in matrix product");
        ModMatrix r(ring_, rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (long j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j) == 0) continue;
                    r.e_[r.idx(i, j)] += at(i, k) * o.at(k, j);
                }
            }
        for (auto& v : r.e_) v = ring_.canon(v);
        return r;
    }

    ModVec apply(const ModVec& x) const {
        if (static_cast<long>(x.size()) != cols_) throw bad_input("matrix-vector shape mismatch");
        ModVec y(static_cast<size_t>(rows_), Int(0));
        for (long i = 0; i < rows_; ++i) {
            Int s(0);
            for (long j = 0; j < cols_; ++j) s += at(i, j) * x[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = ring_.canon(s);
        }
        return y;
    }

    // row-vector times matrix
    ModVec apply_left(const ModVec& x) const {
        if (static_cast<long>(x.size()) != rows_) throw bad_input("vector-matrix shape mismatch");
        ModVec y(static_cast<size_t>(cols_), Int(0));
        for (long j = 0; j < cols_; ++j) {
            Int s(0);
            for (long i = 0; i < rows_; ++i) s += x[static_cast<size_t>(i)] * at(i, j);
            y[static_cast<size_t>(j)] = ring_.canon(s);
        }
        return y;
    }

    ModMatrix power(long e) const {
        if (rows_ != cols_) throw bad_input("power of non-square matrix");
        if (e < 0) throw bad_input("negative matrix power");
        ModMatrix acc = identity(ring_, rows_);
        ModMatrix base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    ModMatrix reduced(const PrimePower& lower) const {
        ModMatrix r(lower, rows_, cols_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        return r;
    }

    ModMatrix transpose() const {
        ModMatrix r(ring_, cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
        return r;
    }

    Int trace() const {
        if (rows_ != cols_) throw bad_input("trace of non-square matrix");
        Int s(0);
        for (long i = 0; i < rows_; ++i) s += at(i, i);
        return ring_.canon(s);
    }

  private:
    size_t idx(long i, long j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw bad_input("matrix index out of range");
        return static_cast<size_t>(i * cols_ + j);
    }
    void require_same_shape(const ModMatrix& o) const {
        if (ring_ != o.ring_) throw bad_input("modulus mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw bad_input("shape mismatch");
    }

    PrimePower ring_;
    long rows_, cols_;
    std::vector<Int> e_;
};

// Characteristic polynomial det(X I - A) by the Berkowitz scheme (division
// free, so it works verbatim over Z/p^N). Returns monic coefficients
// c[0..n] with c[0] = 1: det(X I - A) = sum c[i] X^(n-i).
inline std::vector<Int> charpoly(const ModMatrix& a) {
    if (a.rows() != a.cols()) throw bad_input("charpoly of non-square matrix");
    const PrimePower& R = a.ring();
    long n = a.rows();
    if (n == 0) return {Int(1)};
    std::vector<Int> vec = {Int(1), R.neg(a.at(0, 0))};
    for (long i = 1; i < n; ++i) {
        // Toeplitz column: [1, -a_ii, -(r c), -(r M c), ..., -(r M^{i-1} c)]
        std::vector<Int> q(static_cast<size_t>(i) + 2);
        q[0] = Int(1);
        q[1] = R.neg(a.at(i, i));
        ModVec w(static_cast<size_t>(i));
        for (long t = 0; t < i; ++t) w[static_cast<size_t>(t)] = a.at(t, i);
        for (long j = 2; j <= i + 1; ++j) {
            Int s(0);
            for (long t = 0; t < i; ++t) s += a.at(i, t) * w[static_cast<size_t>(t)];
            q[static_cast<size_t>(j)] = R.neg(R.canon(s));
            if (j <= i) {
                ModVec w2(static_cast<size_t>(i), Int(0));
                for (long r = 0; r < i; ++r) {
                    Int acc(0);
                    for (long t = 0; t < i; ++t) acc += a.at(r, t) * w[static_cast<size_t>(t)];
                    w2[static_cast<size_t>(r)] = R.canon(acc);
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
            next[r] = R.canon(s);
        }
        vec = std::move(next);
    }
    return vec;
}

// Solve A x = b by Gaussian elimination with full pivoting restricted to
// unit pivots; the exact-solve guarantee of Z/p^N. Throws precision_error
// when no unit pivot is available (matrix singular mod p) and bad_input on
// inconsistent systems.
inline ModVec solve_unit(const ModMatrix& a, const ModVec& b) {
    const PrimePower& R = a.ring();
    long n = a.rows(), m = a.cols();
    if (static_cast<long>(b.size()) != n) throw bad_input("solve: rhs size mismatch");
    ModMatrix w = a;
    ModVec rhs = b;
    std::vector<long> col_of_step;
    std::vector<bool> row_used(static_cast<size_t>(n), false), col_used(static_cast<size_t>(m), false);
    std::vector<long> row_of_step;
    long rank = 0;
    for (long step = 0; step < std::min(n, m); ++step) {
        long pi = -1, pj = -1;
        for (long i = 0; i < n && pi < 0; ++i) {
            if (row_used[static_cast<size_t>(i)]) continue;
            for (long j = 0; j < m; ++j) {
                if (col_used[static_cast<size_t>(j)]) continue;
                if (R.is_unit(w.at(i, j))) { pi = i; pj = j; break; }
            }
        }
        if (pi < 0) break;
        row_used[static_cast<size_t>(pi)] = true;
        col_used[static_cast<size_t>(pj)] = true;
        row_of_step.push_back(pi);
        col_of_step.push_back(pj);
        ++rank;
        Int inv = R.inv(w.at(pi, pj));
        for (long i = 0; i < n; ++i) {
            if (i == pi || w.at(i, pj) == 0) continue;
            Int f = R.mul(w.at(i, pj), inv);
            for (long j = 0; j < m; ++j) w.set(i, j, w.at(i, j) - f * w.at(pi, j));
            rhs[static_cast<size_t>(i)] = R.canon(rhs[static_cast<size_t>(i)] - f * rhs[static_cast<size_t>(pi)]);
        }
    }
    // remaining rows must be consistent
    for (long i = 0; i < n; ++i) {
        if (row_used[static_cast<size_t>(i)]) continue;
        bool zero_row = true;
        for (long j = 0; j < m; ++j)
            if (w.at(i, j) != 0) { zero_row = false; break; }
        if (!zero_row)
            throw precision_error("precision-unsafe solve: no unit pivot for a nonzero row");
        if (rhs[static_cast<size_t>(i)] != 0) throw bad_input("inconsistent linear system");
    }
    if (rank < m) throw precision_error("precision-unsafe solve: matrix singular mod p");
    ModVec x(static_cast<size_t>(m), Int(0));
    for (long s = 0; s < rank; ++s) {
        long i = row_of_step[static_cast<size_t>(s)], j = col_of_step[static_cast<size_t>(s)];
        x[static_cast<size_t>(j)] = R.div(rhs[static_cast<size_t>(i)], w.at(i, j));
    }
    return x;
}

inline ModMatrix inverse(const ModMatrix& a) {
    if (a.rows() != a.cols()) throw bad_input("inverse of non-square matrix");
    long n = a.rows();
    ModMatrix r(a.ring(), n, n);
    for (long j = 0; j < n; ++j) {
        ModVec e(static_cast<size_t>(n), Int(0));
        e[static_cast<size_t>(j)] = 1;
        ModVec x = solve_unit(a, e);
        for (long i = 0; i < n; ++i) r.set(i, j, x[static_cast<size_t>(i)]);
    }
    return r;
}

// Kernel of A over Z/p^N in the unit-pivot regime: eliminate as far as unit
// pivots reach; the remaining block must vanish identically mod p^N, and the
// kernel is then free on the unassigned columns. Anything else is a
// precision-delicate situation we refuse to guess about.
inline std::vector<ModVec> kernel_unit(const ModMatrix& a) {
    const PrimePower& R = a.ring();
    long n = a.rows(), m = a.cols();
    ModMatrix w = a;
    std::vector<bool> row_used(static_cast<size_t>(n), false), col_used(static_cast<size_t>(m), false);
    std::vector<std::pair<long, long>> pivots;
    for (;;) {
        long pi = -1, pj = -1;
        for (long i = 0; i < n && pi < 0; ++i) {
            if (row_used[static_cast<size_t>(i)]) continue;
            for (long j = 0; j < m; ++j) {
                if (col_used[static_cast<size_t>(j)]) continue;
                if (R.is_unit(w.at(i, j))) { pi = i; pj = j; break; }
            }
        }
        if (pi < 0) break;
        row_used[static_cast<size_t>(pi)] = true;
        col_used[static_cast<size_t>(pj)] = true;
        pivots.emplace_back(pi, pj);
        Int inv = R.inv(w.at(pi, pj));
        for (long i = 0; i < n; ++i) {
            if (i == pi || w.at(i, pj) == 0) continue;
            Int f = R.mul(w.at(i, pj), inv);
            for (long j = 0; j < m; ++j) w.set(i, j, w.at(i, j) - f * w.at(pi, j));
        }
    }
    for (long i = 0; i < n; ++i) {
        if (row_used[static_cast<size_t>(i)]) continue;
        for (long j = 0; j < m; ++j)
            if (w.at(i, j) != 0)
                throw precision_error("kernel not resolvable with unit pivots at this precision");
    }
    std::vector<ModVec> basis;
    for (long j = 0; j < m; ++j) {
        if (col_used[static_cast<size_t>(j)]) continue;
        ModVec v(static_cast<size_t>(m), Int(0));
        v[static_cast<size_t>(j)] = 1;
        for (auto& [pi, pj] : pivots)
            v[static_cast<size_t>(pj)] = R.neg(R.div(w.at(pi, j), w.at(pi, pj)));
        basis.push_back(std::move(v));
    }
    return basis;
}

inline long rank_mod_p(const ModMatrix& a) {
    PrimePower fp(a.ring().p(), 1);
    ModMatrix w = a.reduced(fp);
    long n = w.rows(), m = w.cols(), rank = 0;
    std::vector<bool> row_used(static_cast<size_t>(n), false), col_used(static_cast<size_t>(m), false);
    for (;;) {
        long pi = -1, pj = -1;
        for (long i = 0; i < n && pi < 0; ++i) {
            if (row_used[static_cast<size_t>(i)]) continue;
            for (long j = 0; j < m; ++j) {
                if (col_used[static_cast<size_t>(j)]) continue;
                if (w.at(i, j) != 0) { pi = i; pj = j; break; }
            }
        }
        if (pi < 0) break;
        row_used[static_cast<size_t>(pi)] = true;
        col_used[static_cast<size_t>(pj)] = true;
        ++rank;
        Int inv = fp.inv(w.at(pi, pj));
        for (long i = 0; i < n; ++i) {
            if (i == pi || w.at(i, pj) == 0) continue;
            Int f = fp.mul(w.at(i, pj), inv);
            for (long j = 0; j < m; ++j) w.set(i, j, w.at(i, j) - f * w.at(pi, j));
        }
    }
    return rank;
}

// Hida's idempotent lim A^{n!}: iterate B <- B^n until stationary for two
// consecutive steps (coprime step lengths force the limit idempotent).
inline ModMatrix idempotent_limit(const ModMatrix& a, long iteration_cap) {
    if (a.rows() != a.cols()) throw bad_input("projector limit of non-square matrix");
    ModMatrix b = a;
    long stable = 0;
    for (long n = 2; n <= iteration_cap + 1; ++n) {
        ModMatrix next = b.power(n);
        if (next == b) {
            if (++stable >= 2) {
                if (b * b != b)
                    throw invariant_violation("stationary factorial power is not idempotent");
                return b;
            }
        } else {
            stable = 0;
        }
        b = next;
    }
    throw precision_error("ordinary projector did not stabilize within the iteration cap");
}

}  // namespace pmf
