#include <numeric>

#include "doctest.h"
#include "lilsigma/number_theory.hpp"

using namespace lilsigma;

namespace {

// Naive order by repeated multiplication, the reference the fast path must match.
std::uint64_t naive_order(std::uint64_t b, std::uint64_t m) {
    std::uint64_t v = b % m, n = 1;
    while (v != 1) {
        v = v * b % m;
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("multiplicative order examples") {
    CHECK(mult_order(12, 18335) == 24);
    CHECK(mult_order(7, 18335) == 24);
    CHECK(mult_order(1, 97) == 1);
    CHECK(mult_order(3, 7) == 6);
    CHECK(mult_order(4, 7) == 3);
    CHECK(std::lcm(mult_order(3, 7), mult_order(4, 7)) == 6);
    CHECK(mult_order(8, 29643) == 40);
    CHECK(mult_order(5, 29643) == 40);
    CHECK_THROWS_AS(mult_order(6, 9), std::invalid_argument);
    CHECK_THROWS_AS(mult_order(2, 1), std::invalid_argument);
}

TEST_CASE("order by iteration beyond 64 bits") {
    mpz_class m = (mpz_class(1) << 89) - 1;   // 2 has order 89 here
    CHECK(mult_order(2, m) == 89);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 3, 50);
    big -= 1;                                 // ~2^79, order of 3 is exactly 50
    CHECK(mult_order(3, big) == 50);
}

TEST_CASE("iteration cap fails loudly") {
    mpz_class m = (mpz_class(1) << 127) - 1;  // Mersenne prime, order of 3 is huge
    CHECK_THROWS_AS(mult_order(3, m, 1000), std::runtime_error);
}

TEST_CASE("order oracle, exhaustive small moduli") {
    for (std::uint64_t m = 2; m <= 1000; ++m) {
        for (std::uint64_t b = 1; b < m; ++b) {
            if (std::gcd(b, m) != 1) continue;
            CHECK(mult_order(b, m) == naive_order(b, m));
        }
    }
}

TEST_CASE("signed order examples") {
    CHECK(signed_order(6, 7) == 1);    // 6 = -1 mod 7
    CHECK(signed_order(1, 91) == 1);
    CHECK(signed_order(2, 7) == 3);
    CHECK(signed_order(2, 15) == 4);   // 2^2 = 4 is a nontrivial root of 1 mod 15
    CHECK(signed_order(3, 5) == 2);
    CHECK(signed_order(3, 2) == 1);
    CHECK_THROWS_AS(signed_order(3, 9), std::invalid_argument);
}

TEST_CASE("signed order divides the full order") {
    for (std::uint64_t m = 3; m <= 200; ++m) {
        for (std::uint64_t b = 2; b < m; ++b) {
            if (std::gcd(b, m) != 1) continue;
            std::uint64_t s = signed_order(b, m);
            std::uint64_t o = mult_order(b, m);
            CHECK((s == o || 2 * s == o));
            CHECK(pow_mod(b, mpz_class(2 * static_cast<unsigned long>(s)), m) == 1);
            mpz_class qs = pow_mod(b, mpz_class(static_cast<unsigned long>(s)), m);
            CHECK((qs == 1 || qs == mpz_class(static_cast<unsigned long>(m - 1))));
        }
    }
}
