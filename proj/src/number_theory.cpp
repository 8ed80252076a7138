#include "lilsigma/number_theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace lilsigma {
namespace {

using u64 = std::uint64_t;

// Trial division up to 10^6, then primality-test the cofactor. Returns the
// factorization as prime -> exponent, or nullopt when the cofactor is a
// composite with no small factors (caller falls back to iteration).
std::optional<std::map<u64, int>> try_factor(u64 n) {
    std::map<u64, int> f;
    for (u64 d = 2; d <= 1'000'000 && d * d <= n; d += (d == 2 ? 1 : 2)) {
        while (n % d == 0) { ++f[d]; n /= d; }
    }
    if (n > 1) {
        mpz_class z(static_cast<unsigned long>(n >> 32));
        z <<= 32;
        z += static_cast<unsigned long>(n & 0xffffffffULL);
        // no factor <= 10^6, so n < 10^12 is prime; otherwise ask GMP
        if (n < 1'000'000'000'000ULL || mpz_probab_prime_p(z.get_mpz_t(), 32) > 0)
            ++f[n];
        else
            return std::nullopt;
    }
    return f;
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

// Carmichael lambda from the factorization of m.
u64 carmichael(const std::map<u64, int>& fac) {
    u64 l = 1;
    for (auto [p, e] : fac) {
        u64 le;
        if (p == 2)
            le = e == 1 ? 1 : e == 2 ? 2 : (1ULL << (e - 2));
        else {
            le = p - 1;
            for (int i = 1; i < e; ++i) le *= p;
        }
        l = lcm_u64(l, le);
    }
    return l;
}

u64 order_by_iteration(const mpz_class& base, const mpz_class& m, u64 cap) {
    mpz_class v = base % m;
    if (v < 0) v += m;
    u64 n = 1;
    while (v != 1) {
        v = v * base % m;
        if (v < 0) v += m;
        if (++n > cap)
            throw std::runtime_error("mult_order: iteration cap exceeded");
    }
    return n;
}

}  // namespace

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

u64 mult_order(const mpz_class& base, const mpz_class& modulus, u64 iteration_cap) {
    if (modulus < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), base.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) throw std::invalid_argument("mult_order: base and modulus are not coprime");

    if (mpz_fits_ulong_p(modulus.get_mpz_t())) {
        u64 m = mpz_get_ui(modulus.get_mpz_t());
        auto mf = try_factor(m);
        if (mf) {
            u64 lambda = carmichael(*mf);
            auto lf = try_factor(lambda);
            if (lf) {
                u64 e = lambda;
                for (auto [p, _] : *lf) {
                    while (e % p == 0 && pow_mod(base, mpz_class(static_cast<unsigned long>(e / p)),
                                                 modulus) == 1)
                        e /= p;
                }
                return e;
            }
        }
    }
    return order_by_iteration(base, modulus, iteration_cap);
}

u64 signed_order(const mpz_class& q, const mpz_class& m, u64 iteration_cap) {
    if (m < 2) throw std::invalid_argument("signed_order: modulus must be >= 2");
    if (m == 2) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
        if (g != 1) throw std::invalid_argument("signed_order: not coprime");
        return 1;
    }
    u64 o = mult_order(q, m, iteration_cap);
    // q^n == -1 forces n to be an odd multiple of o/2, so only o/2 can beat o.
    if (o % 2 == 0 && pow_mod(q, mpz_class(static_cast<unsigned long>(o / 2)), m) == m - 1)
        return o / 2;
    return o;
}

}  // namespace lilsigma
