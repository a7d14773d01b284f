#pragma once

#include "covergrowth/laurent.hpp"
#include "covergrowth/rational.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace testutil {

// Deterministic by default; override with GROWTH_TEST_SEED for exploration.
inline uint64_t test_seed() {
    if (const char* env = std::getenv("GROWTH_TEST_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0x5eedc0de1234ULL;
}

inline std::mt19937_64 make_rng(uint64_t salt = 0) {
    return std::mt19937_64(test_seed() ^ (salt * 0x9e3779b97f4a7c15ULL));
}

inline long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline covergrowth::Rational rand_rational(std::mt19937_64& rng, long long max_num = 20,
                                           long long max_den = 10,
                                           bool nonzero = false) {
    using covergrowth::Rational;
    while (true) {
        Rational q = covergrowth::make_rational(
            covergrowth::BigInt(rand_int(rng, -max_num, max_num)),
            covergrowth::BigInt(rand_int(rng, 1, max_den)));
        if (!nonzero || q != 0) return q;
    }
}

inline covergrowth::LaurentPoly rand_poly(std::mt19937_64& rng, int max_terms = 4,
                                          int min_exp = -4, int max_exp = 4,
                                          bool nonzero = false) {
    using covergrowth::LaurentPoly;
    while (true) {
        LaurentPoly p;
        int terms = (int)rand_int(rng, 0, max_terms);
        for (int i = 0; i < terms; ++i) {
            p.add_term((int)rand_int(rng, min_exp, max_exp), rand_rational(rng, 9, 4));
        }
        if (!nonzero || !p.is_zero()) return p;
    }
}

} // namespace testutil
