#include "lilsigma/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lilsigma {

Orbit orbit(const RatioPair& pq, const Rational& x0, long count, long cap) {
    if (count < 1) throw std::invalid_argument("orbit: count must be >= 1");
    if (count > cap) throw std::invalid_argument("orbit: count exceeds the cap");

    Orbit orb{pq, x0, {}};
    orb.points.reserve(static_cast<std::size_t>(count));
    const mpz_class num0 = x0.num();
    const mpz_class den0 = x0.den();
    if (pq.q == 1) {
        // denominator never grows: iterate the residue directly
        mpz_class r = num0 % den0;
        if (r < 0) r += den0;
        for (long k = 0; k < count; ++k) {
            orb.points.emplace_back(r, den0);
            r = r * pq.p % den0;
        }
        return orb;
    }
    mpz_class power = 1;   // p^k
    mpz_class mod = den0;  // q^k den0
    for (long k = 0; k < count; ++k) {
        mpz_class r = power * num0 % mod;
        if (r < 0) r += mod;
        orb.points.emplace_back(r, mod);
        power *= pq.p;
        mod *= pq.q;
    }
    return orb;
}

DiscrepancyReport discrepancy(std::vector<Rational> points) {
    if (points.empty()) throw std::invalid_argument("discrepancy: empty sample");
    for (const Rational& y : points)
        if (y.sign() < 0 || y >= Rational(1))
            throw std::invalid_argument("discrepancy: points must lie in [0,1)");
    std::sort(points.begin(), points.end());
    const long n = static_cast<long>(points.size());
    Rational d_plus(-1), d_minus(-1);
    for (long i = 0; i < n; ++i) {
        Rational up = Rational(i + 1, n) - points[static_cast<std::size_t>(i)];
        Rational dn = points[static_cast<std::size_t>(i)] - Rational(i, n);
        if (up > d_plus) d_plus = up;
        if (dn > d_minus) d_minus = dn;
    }
    DiscrepancyReport rep;
    rep.n = n;
    rep.d_extreme = d_plus + d_minus;
    rep.d_star = std::max(d_plus, d_minus);
    return rep;
}

double discrepancy_extreme(std::vector<double> points) {
    if (points.empty()) throw std::invalid_argument("discrepancy: empty sample");
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double d_plus = -1, d_minus = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        d_plus = std::max(d_plus, (static_cast<double>(i) + 1) / n - points[i]);
        d_minus = std::max(d_minus, points[i] - static_cast<double>(i) / n);
    }
    return d_plus + d_minus;
}

std::vector<std::pair<long, double>> lil_trace(const RatioPair& pq, const Rational& x0,
                                               const std::vector<long>& checkpoints,
                                               long cap) {
    if (checkpoints.empty()) throw std::invalid_argument("lil_trace: no checkpoints");
    long n_max = 0;
    for (long n : checkpoints) {
        if (n < kMinLilCheckpoint)
            throw std::invalid_argument("lil_trace: checkpoints must be >= 16");
        n_max = std::max(n_max, n);
    }
    Orbit orb = orbit(pq, x0, n_max, cap);
    std::vector<double> pts;
    pts.reserve(orb.points.size());
    for (const Rational& y : orb.points) pts.push_back(y.to_double());

    std::vector<std::pair<long, double>> out;
    std::vector<long> sorted_cp = checkpoints;
    std::sort(sorted_cp.begin(), sorted_cp.end());
    for (long n : sorted_cp) {
        std::vector<double> prefix(pts.begin(), pts.begin() + n);
        double dn = discrepancy_extreme(std::move(prefix));
        double nn = static_cast<double>(n);
        out.emplace_back(n, nn * dn / std::sqrt(2.0 * nn * std::log(std::log(nn))));
    }
    return out;
}

}  // namespace lilsigma
