#pragma once

// Multiplicative orders modulo m. These drive orbit periods of the exact
// sigma^2 evaluation and the index I of the large-ratio closed form.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace lilsigma {

inline constexpr std::uint64_t kOrderIterationCap = 1'000'000;

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod);

// Smallest n >= 1 with base^n == 1 (mod modulus). Requires modulus >= 2 and
// gcd(base, modulus) == 1. Moduli below 2^64 go through Carmichael-lambda
// factoring; anything else falls back to iteration and fails loudly past
// `iteration_cap`.
std::uint64_t mult_order(const mpz_class& base, const mpz_class& modulus,
                         std::uint64_t iteration_cap = kOrderIterationCap);

// Smallest n >= 1 with q^n == +1 or -1 (mod m); same preconditions.
std::uint64_t signed_order(const mpz_class& q, const mpz_class& m,
                           std::uint64_t iteration_cap = kOrderIterationCap);

}  // namespace lilsigma
