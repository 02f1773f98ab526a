#pragma once

#include <map>
#include <string>
#include <vector>

#include "pmf/eigenforms.hpp"

namespace pmf {

// A branch is represented extensionally: classical members declared
// congruent, all reducing to one residual eigensystem mod p.
struct BranchData {
    long p = 0;
    int N = 0;
    std::vector<EigenformRecord> members;
    std::map<long, Int> residual;  // a_ell mod p at the separator primes

    void add(const EigenformRecord& f) {
        if (members.empty()) {
            p = f.p;
            N = f.N;
            residual = f.residual_eigensystem();
        } else {
            if (f.p != p || f.N != N) throw bad_input("branch member at a different (p, N)");
            if (f.residual_eigensystem() != residual)
                throw bad_input("branch member has a different residual eigensystem");
        }
        members.push_back(f);
    }
};

// Nearly-classical specialization of the universal eigenform attached to f:
// theta^t applied to the p-depletion, a q-series of weight tag l + 2t.
inline QExpP specialize_universal(const EigenformRecord& f, long t, long prec) {
    return theta(p_deplete(f.q_expansion(prec), f.p), t);
}

struct CongruencePair {
    size_t i = 0, j = 0;
    long weight_i = 0, weight_j = 0;
    // valuation of a_ell(f_i) - a_ell(f_j), capped at N ("at least N")
    std::map<long, long> valuations;
    long alpha_valuation = 0;
    bool pass = false;
};

struct CongruenceReport {
    long p = 0;
    int modulus_exponent = 0;  // the m being verified
    std::vector<CongruencePair> pairs;
    bool all_pass = true;
};

namespace detail {
inline long capped_valuation(const Int& x, const PrimePower& pp) {
    Int c = pp.canon(x);
    if (c == 0) return pp.exponent();
    return valuation(c, Int(pp.p()));
}
}  // namespace detail

// Verify a_ell congruences mod p^m across all member pairs of a branch, and
// the congruence of the unit roots. Weights must be congruent mod
// (p-1) p^{m-1} pairwise or the pairing is rejected.
inline CongruenceReport branch_congruence_check(const BranchData& branch, int m) {
    if (m < 1) throw bad_input("congruence exponent must be >= 1");
    CongruenceReport rep;
    rep.p = branch.p;
    rep.modulus_exponent = m;
    if (branch.members.size() < 2) return rep;  // nothing to compare
    if (m > branch.N)
        throw precision_error("cannot verify congruences mod p^" + std::to_string(m) +
                              " at precision N = " + std::to_string(branch.N));
    PrimePower pp(branch.p, branch.N);
    Int weight_modulus = Int(branch.p - 1) * int_pow(branch.p, static_cast<unsigned long>(m - 1));
    for (size_t i = 0; i < branch.members.size(); ++i) {
        for (size_t j = i + 1; j < branch.members.size(); ++j) {
            const EigenformRecord& a = branch.members[i];
            const EigenformRecord& b = branch.members[j];
            if ((Int(a.weight_k) - Int(b.weight_k)) % weight_modulus != 0)
                throw bad_input("rejected pairing: weights " + std::to_string(a.weight_k) + ", " +
                                std::to_string(b.weight_k) + " not congruent mod " +
                                weight_modulus.get_str());
            CongruencePair cp;
            cp.i = i;
            cp.j = j;
            cp.weight_i = a.weight_k;
            cp.weight_j = b.weight_k;
            cp.pass = true;
            for (long ell : separator_primes(branch.p)) {
                long v = detail::capped_valuation(a.a(ell) - b.a(ell), pp);
                cp.valuations[ell] = v;
                if (v < m) cp.pass = false;
            }
            if (a.ordinary && b.ordinary) {
                PadicScalar d = a.alpha - b.alpha;
                cp.alpha_valuation = d.is_zero() ? branch.N : std::min<long>(d.valuation_floor(), branch.N);
                if (cp.alpha_valuation < m) cp.pass = false;
            } else {
                cp.alpha_valuation = -1;
                cp.pass = false;
            }
            rep.all_pass = rep.all_pass && cp.pass;
            rep.pairs.push_back(std::move(cp));
        }
    }
    return rep;
}

// The unique ordinary weight-k eigenform with the given residual eigensystem.
inline EigenformRecord find_branch_member(long p, int N, long k,
                                          const std::map<long, Int>& residual, long prec) {
    auto scan = cusp_eigenforms(k, p, N, prec);
    std::vector<EigenformRecord> hits;
    for (const auto& r : scan.records)
        if (r.ordinary && r.residual_eigensystem() == residual) hits.push_back(r);
    if (hits.empty())
        throw bad_input("no ordinary weight-" + std::to_string(k) +
                        " eigenform with the requested residual eigensystem");
    if (hits.size() > 1)
        throw bad_input("residual eigensystem is not unique at weight " + std::to_string(k));
    return hits[0];
}

}  // namespace pmf
