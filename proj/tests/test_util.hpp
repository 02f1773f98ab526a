#pragma once

#include <cstdlib>
#include <iostream>
#include <random>

#include "pmf/pmf.hpp"

namespace pmftest {

// Seeded RNG for property tests; override with PMF_TEST_SEED. The seed is
// printed once so any failure is reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen = [] {
        unsigned long seed = 20240915;
        if (const char* env = std::getenv("PMF_TEST_SEED")) seed = std::strtoul(env, nullptr, 10);
        std::cout << "property-test seed: " << seed << "\n";
        return std::mt19937_64(seed);
    }();
    return gen;
}

inline long rand_range(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(rng());
}

// nonzero rational with controlled p-valuation spread
inline pmf::Rat rand_rational(long p) {
    long num = rand_range(1, 400) * (rand_range(0, 1) ? 1 : -1);
    long den = rand_range(1, 400);
    long v = rand_range(-2, 2);
    pmf::Rat q(num, den);
    q.canonicalize();
    return q * pmf::rat_pow(pmf::Rat(p), v);
}

inline pmf::PadicScalar rand_scalar(long p, int n) {
    return pmf::PadicScalar::from_rational(rand_rational(p), p, n);
}

}  // namespace pmftest
