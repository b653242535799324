#pragma once

#include <cstdint>
#include <random>

#include "isolde/matrix.hpp"
#include "isolde/rat.hpp"

namespace test_util {

inline isolde::Rat R(const char* s) { return isolde::Rat::from_string(s); }

// Deterministic RNG wrapper. Draws are reduced modulo n directly so the
// stream does not depend on the standard library's distribution code.
struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t below(std::uint64_t n) { return eng() % n; }
    std::mt19937_64 eng;
};

inline isolde::Rat random_rat(Rng& rng, long max_abs_num, long max_den) {
    const long num = static_cast<long>(rng.below(2 * max_abs_num + 1)) - max_abs_num;
    const long den = 1 + static_cast<long>(rng.below(max_den));
    return isolde::Rat(mpz_class(num), mpz_class(den));
}

inline isolde::RatMatrix random_rat_matrix(Rng& rng, int n, long max_abs_num, long max_den) {
    isolde::RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_rat(rng, max_abs_num, max_den);
    return m;
}

// Random row-stochastic matrix: each row is a composition of d into n
// nonnegative parts, divided by d, so every denominator divides d.
inline isolde::RatMatrix random_stochastic(Rng& rng, int n, long max_den) {
    isolde::RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const long d = 1 + static_cast<long>(rng.below(max_den));
        std::vector<long> parts(static_cast<size_t>(n), 0);
        for (long t = 0; t < d; ++t) parts[rng.below(static_cast<std::uint64_t>(n))]++;
        for (int j = 0; j < n; ++j) m(i, j) = isolde::Rat(mpz_class(parts[static_cast<size_t>(j)]), mpz_class(d));
    }
    return m;
}

}  // namespace test_util
