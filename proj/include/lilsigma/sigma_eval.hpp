#pragma once

// Exact evaluation of the variance functional
//
//   sigma^2(a) = V(a,a) + 2 * sum_{n>=1} V(<p^n a>, <q^n a>) / (pq)^n
//
// for a rational ratio p/q > 1: truncated partial sums with rigorous tail
// bounds, a bit-exact closed form at points with (eventually) periodic orbit,
// and the exact quadratic that the truncated series equals on any interval
// free of breakpoints.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lilsigma/rational.hpp"

namespace lilsigma {

// The ratio p/q as a pair of coprime integers, p > q >= 1.
struct RatioPair {
    long p;
    long q;

    RatioPair(long p_, long q_);

    long pq() const { return p * q; }
    Rational value() const { return Rational(p, q); }
};

// Rigorous two-sided bracket [lower, upper] of sigma^2(a) from a depth-N
// partial sum: upper - lower == 2 * tail_bound(pq, N).
struct SigmaEnclosure {
    Rational lower;
    Rational upper;
    int depth = 0;

    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
    Rational width() const { return upper - lower; }
};

// Half-open interval [lo, hi).
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x < hi; }
    bool interior_contains(const Rational& x) const { return lo < x && x < hi; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }
    std::string str() const { return "[" + lo.str() + ", " + hi.str() + ")"; }
};

// Thrown when an interval straddles a breakpoint of the requested depth and
// the affine description does not exist; callers subdivide and retry.
struct StraddleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// On a breakpoint-free interval, <p^n x> = p^n x - a and <q^n x> = q^n x - b
// with constant floors, and their order never flips in the interior.
struct AffinePart {
    int depth = 0;                 // n
    mpz_class floor_p;             // a = floor(p^n x) on the interval
    mpz_class floor_q;             // b = floor(q^n x)
    int crossover_sign = 0;        // sign of <p^n x> - <q^n x> in the interior
};

// Exact quadratic A x^2 + B x + C equal to the depth-N truncated series on an
// elementary interval, with the value/derivative tail constants attached.
// A == -(1 + 2N) always; the quadratic is strictly concave.
struct LocalQuadratic {
    Rational A, B, C;
    Interval interval;
    int depth = 0;
    Rational tail;                          // value tail, Eq. (tail_bound)
    std::optional<Rational> deriv_tail;     // absent when q == 1 (diverges)

    Rational eval(const Rational& x) const { return (A * x + B) * x + C; }
    Rational deriv(const Rational& x) const { return Rational(2) * A * x + B; }
    Rational axis() const { return -B / (Rational(2) * A); }
};

// V(a,a) + 2 sum_{n=1..N} V(<p^n a>, <q^n a>)/(pq)^n, exact.
// Fractional parts are reduced with one modular multiply per term.
Rational sigma2_partial(const RatioPair& pq, const Rational& a, int N);

// 1 / (2 (pq-1) (pq)^N): |sigma^2(a) - sigma2_partial(a,N)| never exceeds it.
Rational tail_bound(const RatioPair& pq, int N);

// 2 / ((q-1) q^N): bound on the derivative of the dropped tail, valid off
// breakpoints. Rejects q == 1.
Rational deriv_tail_bound(const RatioPair& pq, int N);

// Bit-exact sigma^2(c) for c whose orbit is purely periodic, i.e.
// gcd(p, den(c)) == gcd(q, den(c)) == 1. Denominator 1 returns 0.
Rational sigma2_exact_periodic(const RatioPair& pq, const Rational& c);

// Bit-exact sigma^2(a) for every rational a in [0,1): the modular orbit of
// (p^n, q^n) mod den(a) is eventually periodic, and the periodic block sums
// in closed form. `max_states` caps the cycle search.
Rational sigma2_exact_rational(const RatioPair& pq, const Rational& a,
                               std::size_t max_states = 20'000);

SigmaEnclosure sigma2_enclosure(const RatioPair& pq, const Rational& a, int N);

// Constant floors and crossover sign of depth n on J; throws StraddleError if
// the interior of J meets a multiple of 1/p^n, 1/q^n or 1/(p^n - q^n).
AffinePart affine_parts(const RatioPair& pq, int n, const Interval& J);

// The exact quadratic of the depth-N truncation on J. J must be free of
// depth-<=N breakpoints in its interior.
LocalQuadratic local_quadratic(const RatioPair& pq, int N, const Interval& J);

namespace detail {
// Closed form V(c,c) + 2 (pq)^T/((pq)^T - 1) sum_{n=1..T} V_n/(pq)^n.
// Any positive multiple of the true period yields the same rational.
Rational periodic_closed_form(const RatioPair& pq, const Rational& c, std::uint64_t T);
}  // namespace detail

}  // namespace lilsigma
