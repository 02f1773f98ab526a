#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pmf/errors.hpp"

namespace pmf {

// Hodge-Tate weight profile (cyclotomic character has weight +1): the weight
// multiset, the dimension of the c = +1 eigenspace of complex conjugation,
// and optionally the weights of a designated local subrepresentation V+.
struct HTProfile {
    std::vector<long> weights;             // kept sorted
    long d_plus = 0;
    std::optional<std::vector<long>> sub;  // kept sorted

    HTProfile(std::vector<long> w, long dp, std::optional<std::vector<long>> s = std::nullopt)
        : weights(std::move(w)), d_plus(dp), sub(std::move(s)) {
        std::sort(weights.begin(), weights.end());
        if (sub) std::sort(sub->begin(), sub->end());
        if (d_plus < 0 || d_plus > static_cast<long>(weights.size()))
            throw bad_input("d_plus outside [0, dim]");
        if (sub && !is_submultiset(*sub, weights))
            throw bad_input("sub is not a sub-multiset of the weights");
    }

    static bool is_submultiset(const std::vector<long>& a, const std::vector<long>& b) {
        // both sorted
        size_t i = 0;
        for (long x : a) {
            while (i < b.size() && b[i] < x) ++i;
            if (i == b.size() || b[i] != x) return false;
            ++i;
        }
        return true;
    }

    std::vector<long> complement() const {
        if (!sub) throw bad_input("profile has no designated subrepresentation");
        std::vector<long> c;
        size_t i = 0;
        for (long x : weights) {
            if (i < sub->size() && (*sub)[i] == x) {
                ++i;
                continue;
            }
            c.push_back(x);
        }
        return c;
    }

    long count_ge_one() const {
        return static_cast<long>(std::count_if(weights.begin(), weights.end(),
                                               [](long w) { return w >= 1; }));
    }

    HTProfile shifted(long j) const {
        std::vector<long> w = weights;
        for (long& x : w) x += j;
        std::optional<std::vector<long>> s;
        if (sub) {
            s = *sub;
            for (long& x : *s) x += j;
        }
        return HTProfile(std::move(w), d_plus, std::move(s));
    }
};

// criticality: (number of Hodge-Tate weights >= 1) = dim V^{c=+1}
inline bool is_critical(const HTProfile& prof) { return prof.count_ge_one() == prof.d_plus; }

// Panchishkin: critical, and the designated sub carries exactly the weights
// >= 1 while the quotient carries only weights <= 0.
inline bool is_panchishkin(const HTProfile& prof) {
    if (!prof.sub) throw bad_input("Panchishkin predicate needs a designated sub");
    if (!is_critical(prof)) return false;
    if (static_cast<long>(prof.sub->size()) != prof.count_ge_one()) return false;
    for (long w : *prof.sub)
        if (w < 1) return false;
    for (long w : prof.complement())
        if (w > 0) return false;
    return true;
}

// r-Panchishkin: the sub is allowed to be r dimensions smaller than the
// c = +1 eigenspace; r = 0 recovers the plain Panchishkin condition.
inline bool is_r_panchishkin(const HTProfile& prof, long r) {
    if (!prof.sub) throw bad_input("r-Panchishkin predicate needs a designated sub");
    if (r < 0 || r > prof.d_plus) throw bad_input("r outside [0, d_plus]");
    if (static_cast<long>(prof.sub->size()) != prof.d_plus - r) return false;
    for (long w : *prof.sub)
        if (w < 1) return false;
    for (long w : prof.complement())
        if (w > 0) return false;
    return true;
}

// Near-ordinarity relative to a supplied full flag of sub-multisets:
// chain[0] = {} up to chain[dim] = all weights, one new weight per step, in
// weakly increasing order.
inline bool is_nearly_ordinary(const HTProfile& prof, const std::vector<std::vector<long>>& chain) {
    size_t dim = prof.weights.size();
    if (chain.size() != dim + 1) throw bad_input("flag chain must have dim+1 steps");
    std::vector<std::vector<long>> sorted_chain = chain;
    for (auto& c : sorted_chain) std::sort(c.begin(), c.end());
    if (!sorted_chain.front().empty()) throw bad_input("flag chain must start empty");
    if (sorted_chain.back() != prof.weights) throw bad_input("flag chain must end at the profile");
    long prev = 0;
    bool first = true;
    for (size_t i = 0; i + 1 < sorted_chain.size(); ++i) {
        if (sorted_chain[i].size() + 1 != sorted_chain[i + 1].size())
            throw bad_input("flag chain is not full");
        if (!HTProfile::is_submultiset(sorted_chain[i], sorted_chain[i + 1]))
            throw bad_input("flag chain is not nested");
        // the graded weight added at this step
        std::vector<long> diff;
        size_t a = 0;
        for (long x : sorted_chain[i + 1]) {
            if (a < sorted_chain[i].size() && sorted_chain[i][a] == x) {
                ++a;
                continue;
            }
            diff.push_back(x);
        }
        long g = diff.at(0);
        if (!first && g < prev) return false;
        prev = g;
        first = false;
    }
    return true;
}

// Maximal interval of twists j such that the j-shifted profile stays
// Panchishkin: [1 - min(sub), -max(complement)].
inline std::pair<long, long> critical_twist_range(const HTProfile& prof) {
    if (!is_panchishkin(prof)) throw bad_input("profile is not Panchishkin at j = 0");
    const auto comp = prof.complement();
    if (comp.empty() || prof.sub->empty())
        throw bad_input("twist range is unbounded when sub or quotient is empty");
    long lo = 1 - prof.sub->front();
    long hi = -(*std::max_element(comp.begin(), comp.end()));
    return {lo, hi};
}

// Profile of the 2-dimensional representation of a weight-k eigenform:
// weights {0, 1-k}, unramified sub at weight 0, d_plus = 1 (odd).
inline HTProfile modular_profile(long k) {
    return HTProfile({0, 1 - k}, 1, std::vector<long>{0});
}

// Rankin profile of rho_f (x) rho_g^*(1+t): weights
// {1+t, l+t, 2-k+t, l+1-k+t}, sub = (unramified line of f) (x) rho_g^*(1+t)
// = {1+t, l+t}, d_plus = 2.
inline HTProfile rankin_profile(long k, long ell, long t) {
    return HTProfile({1 + t, ell + t, 2 - k + t, ell + 1 - k + t}, 2,
                     std::vector<long>{1 + t, ell + t});
}

// Block parabolic in a product of general linear groups: block sizes per
// factor, and a partition of each factor giving the Levi blocks.
struct ParabolicShape {
    std::vector<long> factors;
    std::vector<std::vector<long>> levi;

    ParabolicShape(std::vector<long> f, std::vector<std::vector<long>> l)
        : factors(std::move(f)), levi(std::move(l)) {
        if (factors.size() != levi.size())
            throw bad_input("one Levi partition per general-linear factor");
        for (size_t i = 0; i < factors.size(); ++i) {
            long s = 0;
            for (long b : levi[i]) {
                if (b < 1) throw bad_input("Levi block sizes must be >= 1");
                s += b;
            }
            if (s != factors[i]) throw bad_input("Levi partition does not sum to the factor size");
        }
    }
};

// dim B_M = sum over Levi blocks of n(n+1)/2.
inline long big_eigenvariety_dim(const ParabolicShape& shape) {
    long d = 0;
    for (const auto& f : shape.levi)
        for (long b : f) d += b * (b + 1) / 2;
    return d;
}

// dim Z_M = number of Levi blocks.
inline long small_eigenvariety_dim(const ParabolicShape& shape) {
    long d = 0;
    for (const auto& f : shape.levi) d += static_cast<long>(f.size());
    return d;
}

// Twisting a factor by a character and another by its inverse does not move
// the tensor product: one redundant dimension per extra factor.
inline long redundant_twists(const ParabolicShape& shape) {
    return static_cast<long>(shape.factors.size()) - 1;
}

// Ordinary (Hida) families sit one cyclotomic-twist direction below the
// nearly-ordinary GL_2 Borel count.
inline long hida_family_dim() {
    ParabolicShape gl2_borel({2}, {{1, 1}});
    return small_eigenvariety_dim(gl2_borel) - 1;
}

struct TripleProductDims {
    long raw_product_dim = 0;   // 2 + 3 + 3
    long redundant = 0;         // two twist redundancies
    long determinant_cut = 1;   // the self-duality condition
    long base_dim = 0;          // = 5
};

inline TripleProductDims triple_product_dims() {
    ParabolicShape shape({2, 2, 2}, {{1, 1}, {2}, {2}});
    TripleProductDims d;
    d.raw_product_dim = big_eigenvariety_dim(shape);
    d.redundant = redundant_twists(shape);
    d.determinant_cut = 1;
    d.base_dim = d.raw_product_dim - d.redundant - d.determinant_cut;
    return d;
}

inline bool triple_product_dominant(long k1, long k2, long k3) { return k1 >= k2 + k3; }

// n-fold tensor base: nearly-ordinary GL_2 times (n-1) unrestricted GL_2
// factors, minus the redundant twists: 2 + 3(n-1) - (n-1) = 2n.
inline long tensor_family_dim(long n) {
    if (n < 1) throw bad_input("need at least one factor");
    std::vector<long> f(static_cast<size_t>(n), 2);
    std::vector<std::vector<long>> l;
    l.push_back({1, 1});
    for (long i = 1; i < n; ++i) l.push_back({2});
    ParabolicShape shape(std::move(f), std::move(l));
    return big_eigenvariety_dim(shape) - redundant_twists(shape);
}

}  // namespace pmf
