#pragma once

// Machine-checkable proofs that sup sigma^2 = sigma^2(c): partition [0,1/2)
// at breakpoints, bound each piece away from c by its concave local
// quadratic plus the value tail, and pin the two pieces touching c with
// monotonicity from derivative bounds. By the reflection symmetry
// sigma^2(a) = sigma^2(1-a) the verdicts extend to all of [0,1).

#include <optional>
#include <string>
#include <vector>

#include "lilsigma/rational.hpp"
#include "lilsigma/sigma_eval.hpp"

namespace lilsigma {

enum class VerdictKind { QuadBound, MonotoneUp, MonotoneDown };

const char* to_string(VerdictKind k);

// One certified fact about one interval. margin > 0 always:
//   QuadBound:    margin = sigma2_c - sup_closure(Q) - tail; witness = the
//                 evaluation point (axis clamped to the closed interval).
//   MonotoneUp:   margin = Q'(hi) - deriv_tail  (> 0: strictly increasing);
//                 witness = that bound value.
//   MonotoneDown: margin = -(Q'(lo) + deriv_tail); witness = Q'(lo)+deriv_tail.
struct Verdict {
    Interval interval;
    VerdictKind kind = VerdictKind::QuadBound;
    int depth = 0;
    Rational margin;
    Rational witness;
};

enum class CertStatus { Proven, Failed };

struct Certificate {
    long p = 0;
    long q = 0;
    Rational c;
    Rational sigma2_c;
    CertStatus status = CertStatus::Failed;
    std::vector<Verdict> verdicts;                // sorted by interval.lo
    std::optional<Interval> failed_interval;      // set when status == Failed
    std::optional<Rational> failure_margin;       // best margin seen there
};

struct CertifyOptions {
    int max_depth = 8;
    int initial_depth = 1;
};

// All multiples of 1/p^n, 1/q^n, 1/(p^n - q^n) for n <= N inside [range.lo,
// range.hi), sorted and deduplicated.
std::vector<Rational> breakpoints(const RatioPair& pq, int N, const Interval& range);

// Smallest depth-<=N breakpoint > x, largest one < x.
Rational next_breakpoint(const RatioPair& pq, int N, const Rational& x);
Rational prev_breakpoint(const RatioPair& pq, int N, const Rational& x);

// Outcome of one check: either a passing verdict, or the reason it failed
// (straddle, or a margin that is not strictly positive).
struct CheckOutcome {
    std::optional<Verdict> verdict;
    bool straddle = false;
    std::optional<Rational> margin;   // the non-positive margin on failure

    explicit operator bool() const { return verdict.has_value(); }
};

// sup over the closure of J of (local quadratic + tail) must stay strictly
// below sigma2_c. Requires c outside the interior of J (a violation simply
// reports a non-positive margin).
CheckOutcome check_quadbound(const RatioPair& pq, const Rational& sigma2_c,
                             const Interval& J, int N);

// Strict increase on J from Q'(J.hi) - deriv_tail > 0 (the concave quadratic
// has decreasing derivative, so the right endpoint binds).
CheckOutcome check_monotone_up(const RatioPair& pq, const Interval& J, int N);

// Strict decrease on J from Q'(J.lo) + deriv_tail < 0.
CheckOutcome check_monotone_down(const RatioPair& pq, const Interval& J, int N);

// Adaptive certification that sigma^2 attains its supremum over [0,1) at c
// (and at 1-c). Monotone chains grow outward from c, handing off to quadratic
// bounds as soon as one passes; everything else is covered left to right,
// deepening N up to opts.max_depth per piece. Failure is reported as a
// Certificate with status Failed and the worst offending interval, never as
// an exception.
Certificate certify_supremum(const RatioPair& pq, const Rational& c,
                             const CertifyOptions& opts = {});

// Re-derives every verdict from scratch and re-checks the tiling and chain
// layout. Returns false (with a diagnostic) on the first discrepancy.
bool recheck(const Certificate& cert, std::string* diagnostic = nullptr);

}  // namespace lilsigma
