#include "lilsigma/sigma_eval.hpp"

#include <map>
#include <numeric>
#include <utility>

#include "lilsigma/number_theory.hpp"

namespace lilsigma {
namespace {

void require_unit_interval(const Rational& a, const char* who) {
    if (a.sign() < 0 || a >= Rational(1))
        throw std::invalid_argument(std::string(who) + ": argument must lie in [0,1)");
}

// V of two fractional parts given as residues x/d, y/d (already in [0,1)).
Rational cov_of_residues(const mpz_class& x, const mpz_class& y, const mpz_class& d) {
    const mpz_class& m = x < y ? x : y;
    return Rational(m * d - x * y, d * d);
}

}  // namespace

RatioPair::RatioPair(long p_, long q_) : p(p_), q(q_) {
    if (q < 1 || p <= q)
        throw std::invalid_argument("RatioPair: need p > q >= 1");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("RatioPair: p and q must be coprime");
    if (p > 1'000'000'000L)
        throw std::invalid_argument("RatioPair: p out of supported range");
}

Rational sigma2_partial(const RatioPair& pq, const Rational& a, int N) {
    require_unit_interval(a, "sigma2_partial");
    if (N < 0) throw std::invalid_argument("sigma2_partial: N must be >= 0");
    if (a.is_zero()) return Rational(0);

    const mpz_class d = a.den();
    const mpz_class num = a.num();
    Rational sum = cov_kernel(a, a);
    mpz_class pn = 1, qn = 1, pqn = 1;
    for (int n = 1; n <= N; ++n) {
        pn = pn * pq.p % d;
        qn = qn * pq.q % d;
        pqn *= pq.pq();
        sum += Rational(2, pqn) * cov_of_residues(pn * num % d, qn * num % d, d);
    }
    return sum;
}

Rational tail_bound(const RatioPair& pq, int N) {
    if (N < 0) throw std::invalid_argument("tail_bound: N must be >= 0");
    mpz_class pqN;
    mpz_ui_pow_ui(pqN.get_mpz_t(), static_cast<unsigned long>(pq.pq()),
                  static_cast<unsigned long>(N));
    return Rational(1, 2 * (pq.pq() - 1) * pqN);
}

Rational deriv_tail_bound(const RatioPair& pq, int N) {
    if (pq.q == 1)
        throw std::invalid_argument("deriv_tail_bound: diverges for q == 1");
    if (N < 0) throw std::invalid_argument("deriv_tail_bound: N must be >= 0");
    mpz_class qN;
    mpz_ui_pow_ui(qN.get_mpz_t(), static_cast<unsigned long>(pq.q),
                  static_cast<unsigned long>(N));
    return Rational(2, (pq.q - 1) * qN);
}

namespace {

// Numerator of V(x/d, y/d) scaled by d^2: min(x,y) d - x y.
mpz_class cov_numerator(const mpz_class& x, const mpz_class& y, const mpz_class& d) {
    const mpz_class& m = x < y ? x : y;
    return m * d - x * y;
}

}  // namespace

namespace detail {

Rational periodic_closed_form(const RatioPair& pq, const Rational& c, std::uint64_t T) {
    if (T < 1) throw std::invalid_argument("periodic_closed_form: T must be >= 1");
    const mpz_class d = c.den();
    const mpz_class num = c.num();
    // sum_{n=1..T} 2 V_n/(pq)^n == H / (d^2 (pq)^T) with H accumulated in
    // Horner form; the geometric factor (pq)^T/((pq)^T - 1) then collapses
    // the denominator to d^2 ((pq)^T - 1).
    mpz_class acc = 0, pn = 1 % d, qn = 1 % d, pqT = 1;
    for (std::uint64_t n = 1; n <= T; ++n) {
        pn = pn * pq.p % d;
        qn = qn * pq.q % d;
        pqT *= pq.pq();
        acc = acc * pq.pq() + 2 * cov_numerator(pn * num % d, qn * num % d, d);
    }
    return cov_kernel(c, c) + Rational(acc, d * d * (pqT - 1));
}

}  // namespace detail

Rational sigma2_exact_periodic(const RatioPair& pq, const Rational& c) {
    require_unit_interval(c, "sigma2_exact_periodic");
    const mpz_class d = c.den();
    if (d == 1) return Rational(0);
    mpz_class g;
    mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(pq.p));
    if (g != 1)
        throw std::invalid_argument("sigma2_exact_periodic: gcd(p, den) != 1, orbit not periodic");
    mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(pq.q));
    if (g != 1)
        throw std::invalid_argument("sigma2_exact_periodic: gcd(q, den) != 1, orbit not periodic");

    std::uint64_t op = mult_order(pq.p, d);
    std::uint64_t oq = mult_order(pq.q, d);
    std::uint64_t T = op / std::gcd(op, oq) * oq;
    return detail::periodic_closed_form(pq, c, T);
}

Rational sigma2_exact_rational(const RatioPair& pq, const Rational& a, std::size_t max_states) {
    require_unit_interval(a, "sigma2_exact_rational");
    const mpz_class d = a.den();
    if (d == 1) return Rational(0);
    const mpz_class num = a.num();

    // Walk (p^n mod d, q^n mod d) until the state repeats.
    std::vector<std::pair<mpz_class, mpz_class>> states;
    std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
    mpz_class pn = 1 % d, qn = 1 % d;
    std::size_t n0, period;
    for (;;) {
        auto key = std::make_pair(pn, qn);
        auto it = seen.find(key);
        if (it != seen.end()) {
            n0 = it->second;
            period = states.size() - n0;
            break;
        }
        seen.emplace(std::move(key), states.size());
        states.emplace_back(pn, qn);
        if (states.size() > max_states)
            throw std::runtime_error("sigma2_exact_rational: orbit period exceeds state cap");
        pn = pn * pq.p % d;
        qn = qn * pq.q % d;
    }

    auto term = [&](std::size_t k) {
        const auto& [pk, qk] = k < states.size() ? states[k] : states[n0 + (k - n0) % period];
        return cov_numerator(pk * num % d, qk * num % d, d);
    };

    // prefix k = 1..start-1, then one full period, both as Horner numerators
    const std::size_t start = std::max<std::size_t>(n0, 1);
    mpz_class acc_pre = 0, acc_blk = 0;
    for (std::size_t k = 1; k < start; ++k) acc_pre = acc_pre * pq.pq() + 2 * term(k);
    for (std::size_t k = start; k < start + period; ++k)
        acc_blk = acc_blk * pq.pq() + 2 * term(k);
    mpz_class pq_pre, pqT;
    mpz_ui_pow_ui(pq_pre.get_mpz_t(), static_cast<unsigned long>(pq.pq()),
                  static_cast<unsigned long>(start - 1));
    mpz_ui_pow_ui(pqT.get_mpz_t(), static_cast<unsigned long>(pq.pq()),
                  static_cast<unsigned long>(period));
    mpz_class d2pre = d * d * pq_pre;
    return cov_kernel(a, a) + Rational(acc_pre, d2pre) + Rational(acc_blk, d2pre * (pqT - 1));
}

SigmaEnclosure sigma2_enclosure(const RatioPair& pq, const Rational& a, int N) {
    Rational mid = sigma2_partial(pq, a, N);
    Rational t = tail_bound(pq, N);
    return SigmaEnclosure{mid - t, mid + t, N};
}

AffinePart affine_parts(const RatioPair& pq, int n, const Interval& J) {
    if (n < 1) throw std::invalid_argument("affine_parts: depth must be >= 1");
    if (!(J.lo < J.hi)) throw std::invalid_argument("affine_parts: empty interval");

    mpz_class Lp, Lq;
    mpz_ui_pow_ui(Lp.get_mpz_t(), static_cast<unsigned long>(pq.p), static_cast<unsigned long>(n));
    mpz_ui_pow_ui(Lq.get_mpz_t(), static_cast<unsigned long>(pq.q), static_cast<unsigned long>(n));
    mpz_class Lc = Lp - Lq;

    for (const mpz_class& L : {Lp, Lq, Lc}) {
        // a multiple of 1/L strictly inside (lo, hi)?
        Rational loL = J.lo * Rational(L);
        Rational first(loL.floor() + 1);
        if (first < J.hi * Rational(L))
            throw StraddleError("affine_parts: interval straddles a depth-" + std::to_string(n) +
                                " breakpoint");
    }

    Rational mid = J.midpoint();
    AffinePart part;
    part.depth = n;
    part.floor_p = (Rational(Lp) * mid).floor();
    part.floor_q = (Rational(Lq) * mid).floor();
    Rational delta = Rational(Lc) * mid - Rational(part.floor_p - part.floor_q);
    part.crossover_sign = delta.sign();
    if (part.crossover_sign == 0)
        throw StraddleError("affine_parts: midpoint sits on a crossover point");
    return part;
}

LocalQuadratic local_quadratic(const RatioPair& pq, int N, const Interval& J) {
    if (N < 0) throw std::invalid_argument("local_quadratic: N must be >= 0");
    LocalQuadratic Q;
    Q.interval = J;
    Q.depth = N;
    Q.A = Rational(-1);
    Q.B = Rational(1);
    Q.C = Rational(0);

    mpz_class Lp = 1, Lq = 1, pqn = 1;
    for (int n = 1; n <= N; ++n) {
        AffinePart part = affine_parts(pq, n, J);
        Lp *= pq.p;
        Lq *= pq.q;
        pqn *= pq.pq();
        Rational w(2, pqn);
        const mpz_class& a = part.floor_p;
        const mpz_class& b = part.floor_q;
        // V = (smaller fractional part) * (1 - larger fractional part)
        if (part.crossover_sign < 0) {  // <p^n x> < <q^n x>: (Lp x - a)((b+1) - Lq x)
            Q.A += w * Rational(-(Lp * Lq));
            Q.B += w * Rational(Lp * (b + 1) + a * Lq);
            Q.C += w * Rational(-(a * (b + 1)));
        } else {  // (Lq x - b)((a+1) - Lp x)
            Q.A += w * Rational(-(Lp * Lq));
            Q.B += w * Rational(Lq * (a + 1) + b * Lp);
            Q.C += w * Rational(-(b * (a + 1)));
        }
    }
    if (Q.A != Rational(-(1 + 2L * N)))
        throw std::logic_error("local_quadratic: leading coefficient invariant violated");
    Q.tail = tail_bound(pq, N);
    if (pq.q > 1) Q.deriv_tail = deriv_tail_bound(pq, N);
    return Q;
}

}  // namespace lilsigma
