#pragma once

// The discrepancy constant Sigma_{p/q}, stored as the exact rational
// Sigma^2 = sup_a sigma^2(a). Dispatch runs through the closed forms (all
// irrational powers; both odd; q == 1; large even-pq ratios), then the
// regression table of proven small ratios, and finally candidate search over
// the n/(p^k - q^k) lattice with optional certification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lilsigma/certifier.hpp"
#include "lilsigma/rational.hpp"
#include "lilsigma/sigma_eval.hpp"

namespace lilsigma {

enum class Provenance {
    NonRoot,        // no power of theta is rational: Sigma^2 = 1/4
    OddOdd,         // p, q both odd closed form
    EvenQ1,         // q = 1, p even >= 4 closed form
    TwoQ1,          // p/q = 2
    LargeFormula,   // large-ratio closed form (type I)
    TheoremTable,   // proven small ratio from the bundled table
    Certified,      // search + machine-checked certificate
    SearchOnly,     // best search candidate, certification unavailable/failed
    Unknown,        // search produced nothing usable
};

const char* to_string(Provenance p);

// Presentation-only factored form: coeff^2 * radicand == sigma_squared holds
// exactly; Sigma itself (the square root) is never stored.
struct SigmaDisplay {
    Rational coeff;
    Rational radicand;
};

struct SigmaConstant {
    Rational sigma_squared;
    std::optional<SigmaDisplay> display;
    Provenance provenance = Provenance::Unknown;
};

// theta with theta^r = p/q (r has no effect on the constant), or a theta none
// of whose powers is rational.
struct ThetaSpec {
    bool irrational_powers = false;
    std::optional<RatioPair> ratio;
    unsigned long root_index = 1;

    static ThetaSpec irrational() { return ThetaSpec{true, std::nullopt, 1}; }
    static ThetaSpec rational_root(RatioPair pq, unsigned long r = 1) {
        return ThetaSpec{false, pq, r};
    }
};

// A maximizer candidate c = n/(p^k - q^k); value_lower is exact when
// `exact` is set, otherwise the lower end of `enclosure`.
struct Candidate {
    int k = 0;
    mpz_class n;
    Rational c;
    Rational value_lower;
    std::optional<Rational> exact;
    std::optional<SigmaEnclosure> enclosure;
};

struct ConstantOptions {
    int search_max_k = 6;
    bool run_certify = true;
    int certify_max_depth = 8;
    int threads = 0;              // 0 = hardware concurrency
};

// Large-ratio closed form with index I = signed_order(q, p-q). Requires pq
// even and p - q >= 2 (p - q == 1 degenerates to 0, where the formula is
// known false). Valid as Sigma^2 above the thresholds p/q >= 9/4 (p odd) or
// p/q >= 4 (p even); pass assume_type_one to evaluate a ratio proven type I
// below them.
SigmaConstant formula_large(const RatioPair& pq, bool assume_type_one = false);

// (1/4)(pq+1)/(pq-1) for p, q both odd: the general upper bound, attained.
SigmaConstant formula_oddodd(const RatioPair& pq);

// (1/4)(p+1)p(p-2)/(p-1)^3 for even p >= 4, q = 1. p = 2 is rejected (its
// constant is the separate 14/27).
SigmaConstant formula_even_q1(long p);

SigmaConstant sigma_constant(const ThetaSpec& spec, const ConstantOptions& opts = {});

// Enumerate candidates n/(p^k - q^k) in (0, 1/2] for k <= max_k, prefilter
// with double partial sums (depth 12, 10x tail slack), evaluate survivors
// exactly (or by enclosure when the orbit period is impractical), and return
// the best `top` ranked by value, ties broken by (k, n) ascending.
std::vector<Candidate> search_candidates(const RatioPair& pq, int max_k, int top,
                                         int threads = 0);

// Factored display of s: pulls the largest square divisor found within a
// trial-division budget out of numerator and denominator.
SigmaDisplay make_display(const Rational& s);

struct TheoremRow {
    long p = 0;
    long q = 0;
    int type = 0;
    Rational c;
    Rational sigma_squared;
    SigmaDisplay display;
};

// Rows of the bundled regression table (data/theorem_table.tsv). The location
// defaults to the build-time data directory and can be overridden with the
// LILSIGMA_DATA_DIR environment variable.
const std::vector<TheoremRow>& theorem_table();
std::string data_dir();

}  // namespace lilsigma
