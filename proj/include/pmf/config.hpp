#pragma once

#include <string>

#include "pmf/intops.hpp"

namespace pmf {

// Depth of the Katz expansion: smallest m with floor(m(p-1)/(p+1)) >= N.
// U_p gains valuation at that rate across layers; the depth-stability audit
// (recompute at m+1, compare mod p^N) is what actually certifies the choice.
inline int katz_depth_rule(long p, int N) {
    for (int m = 1;; ++m)
        if ((static_cast<long>(m) * (p - 1)) / (p + 1) >= N) return m;
}

// q-precision rule: one application of U_p (or T_ell up to the largest
// separator prime) eats a factor of the q-precision, and the coordinate
// solve wants a residual window past the largest leading exponent.
inline long katz_qprec_rule(long p, long basis_size, long largest_hecke = 13) {
    return std::max(p, largest_hecke) * (basis_size + 10);
}

// Runtime knobs shared by the CLI and the drivers. p >= 5 keeps E_{p-1}
// inside the classical weight range.
struct JobConfig {
    long p = 5;
    int N = 2;
    long qprec = 0;      // 0 = derive from katz_qprec_rule
    int depth = 0;       // 0 = derive from katz_depth_rule
    std::string cache_dir;
    std::string format = "json";  // json | table
    long denom_budget = -1;       // -1 = default 2N/3

    void validate() const {
        if (!is_prime(p) || p < 5) throw bad_input("p must be a prime >= 5");
        if (N < 1) throw bad_input("N must be >= 1");
    }

    long effective_denom_budget() const { return denom_budget >= 0 ? denom_budget : (2 * N) / 3; }
};

}  // namespace pmf
