#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "gsdyn/polynomial.hpp"

// Seed for randomized property tests; override with GS_DYNAMICS_SEED.
inline std::uint64_t test_seed() {
    if (const char* env = std::getenv("GS_DYNAMICS_SEED")) return std::stoull(env);
    return 20240611ULL;
}

inline gsdyn::Rational random_rational(std::mt19937_64& rng, int span = 9, int den_max = 6) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, den_max);
    gsdyn::Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline gsdyn::Polynomial random_polynomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    int d = deg(rng);
    std::vector<gsdyn::Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(random_rational(rng));
    return gsdyn::Polynomial(std::move(c));
}
