#pragma once

// Empirical sanity layer: exact fractional orbits <(p/q)^k x0>, extreme
// discrepancy D_N, and the ratio N D_N / sqrt(2 N log log N) to eyeball
// against Sigma. Qualitative only; the limit itself is asymptotic and out of
// reach at desk scale.

#include <vector>

#include "lilsigma/rational.hpp"
#include "lilsigma/sigma_eval.hpp"

namespace lilsigma {

struct Orbit {
    RatioPair pq;
    Rational x0;
    std::vector<Rational> points;   // point k = <p^k num0 / (q^k den0)>, k from 0
};

struct DiscrepancyReport {
    long n = 0;
    Rational d_star;      // sup over [0, b)
    Rational d_extreme;   // sup over [a, b); d_star <= d_extreme <= 2 d_star
    double lil_ratio = 0.0;
};

inline constexpr long kOrbitCap = 20'000;
inline constexpr long kMinLilCheckpoint = 16;

// First `count` orbit points, exact. Numerator bit-length grows linearly with
// k, hence the cap.
Orbit orbit(const RatioPair& pq, const Rational& x0, long count, long cap = kOrbitCap);

// Exact extreme/star discrepancy of a finite sample in [0,1) via the sorted
// one-sided deviations d+ and d-; lil_ratio is left at 0.
DiscrepancyReport discrepancy(std::vector<Rational> points);

// Double-precision variant used for large samples.
double discrepancy_extreme(std::vector<double> points);

// (N, N D_N / sqrt(2 N log log N)) at each checkpoint; every checkpoint must
// be >= 16 so that log log N is safely positive.
std::vector<std::pair<long, double>> lil_trace(const RatioPair& pq, const Rational& x0,
                                               const std::vector<long>& checkpoints,
                                               long cap = kOrbitCap);

}  // namespace lilsigma
