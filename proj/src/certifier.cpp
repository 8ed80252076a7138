#include "lilsigma/certifier.hpp"

#include <algorithm>
#include <set>

namespace lilsigma {
namespace {

const Rational kHalf(1, 2);

std::vector<mpz_class> lattice_moduli(const RatioPair& pq, int N) {
    std::vector<mpz_class> out;
    mpz_class Lp = 1, Lq = 1;
    for (int n = 1; n <= N; ++n) {
        Lp *= pq.p;
        Lq *= pq.q;
        out.push_back(Lp);
        out.push_back(Lq);
        out.push_back(Lp - Lq);
    }
    return out;
}

struct Failure {
    Interval interval;
    std::optional<Rational> margin;
    bool value_kind = false;   // quad-bound failure (value units) vs monotone
};

}  // namespace

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::QuadBound: return "quad";
        case VerdictKind::MonotoneUp: return "up";
        case VerdictKind::MonotoneDown: return "down";
    }
    return "?";
}

std::vector<Rational> breakpoints(const RatioPair& pq, int N, const Interval& range) {
    if (N < 1) throw std::invalid_argument("breakpoints: N must be >= 1");
    std::set<Rational> pts;
    for (const mpz_class& L : lattice_moduli(pq, N)) {
        Rational rl = range.lo * Rational(L);
        Rational rh = range.hi * Rational(L);
        for (mpz_class k = rl.ceil(); Rational(k) < rh; ++k)
            pts.insert(Rational(k, L));
    }
    return {pts.begin(), pts.end()};
}

Rational next_breakpoint(const RatioPair& pq, int N, const Rational& x) {
    std::optional<Rational> best;
    for (const mpz_class& L : lattice_moduli(pq, N)) {
        Rational cand((x * Rational(L)).floor() + 1, L);
        if (!best || cand < *best) best = cand;
    }
    return *best;
}

Rational prev_breakpoint(const RatioPair& pq, int N, const Rational& x) {
    std::optional<Rational> best;
    for (const mpz_class& L : lattice_moduli(pq, N)) {
        Rational cand((x * Rational(L)).ceil() - 1, L);
        if (!best || cand > *best) best = cand;
    }
    return *best;
}

CheckOutcome check_quadbound(const RatioPair& pq, const Rational& sigma2_c,
                             const Interval& J, int N) {
    CheckOutcome out;
    LocalQuadratic Q;
    try {
        Q = local_quadratic(pq, N, J);
    } catch (const StraddleError&) {
        out.straddle = true;
        return out;
    }
    Rational point = Q.axis();
    if (point < J.lo) point = J.lo;
    if (point > J.hi) point = J.hi;     // supremum over the closure
    Rational margin = sigma2_c - Q.eval(point) - Q.tail;
    if (margin > Rational(0))
        out.verdict = Verdict{J, VerdictKind::QuadBound, N, margin, point};
    else
        out.margin = margin;
    return out;
}

CheckOutcome check_monotone_up(const RatioPair& pq, const Interval& J, int N) {
    CheckOutcome out;
    LocalQuadratic Q;
    try {
        Q = local_quadratic(pq, N, J);
    } catch (const StraddleError&) {
        out.straddle = true;
        return out;
    }
    if (!Q.deriv_tail)
        throw std::invalid_argument("check_monotone_up: q == 1 has no derivative tail");
    Rational bound = Q.deriv(J.hi) - *Q.deriv_tail;
    if (bound > Rational(0))
        out.verdict = Verdict{J, VerdictKind::MonotoneUp, N, bound, bound};
    else
        out.margin = bound;
    return out;
}

CheckOutcome check_monotone_down(const RatioPair& pq, const Interval& J, int N) {
    CheckOutcome out;
    LocalQuadratic Q;
    try {
        Q = local_quadratic(pq, N, J);
    } catch (const StraddleError&) {
        out.straddle = true;
        return out;
    }
    if (!Q.deriv_tail)
        throw std::invalid_argument("check_monotone_down: q == 1 has no derivative tail");
    Rational bound = Q.deriv(J.lo) + *Q.deriv_tail;
    if (bound < Rational(0))
        out.verdict = Verdict{J, VerdictKind::MonotoneDown, N, -bound, bound};
    else
        out.margin = -bound;
    return out;
}

Certificate certify_supremum(const RatioPair& pq, const Rational& c, const CertifyOptions& opts) {
    if (pq.q == 1)
        throw std::invalid_argument(
            "certify_supremum: q == 1 is not certifiable (the derivative tail diverges); "
            "its constants come from the closed formulas");
    if (!(Rational(0) < c && c <= kHalf))
        throw std::invalid_argument("certify_supremum: c must lie in (0, 1/2]");
    if (opts.max_depth < 1 || opts.initial_depth < 1 || opts.initial_depth > opts.max_depth)
        throw std::invalid_argument("certify_supremum: bad depth options");

    Certificate cert;
    cert.p = pq.p;
    cert.q = pq.q;
    cert.c = c;
    cert.sigma2_c = sigma2_exact_rational(pq, c);

    std::vector<Failure> fails;
    const int N0 = opts.initial_depth;
    constexpr std::size_t kChainCap = 100'000;

    // Monotone-decrease chain from c to the right; stops as soon as a
    // quadratic bound takes over.
    Rational R = c;
    if (c < kHalf) {
        Rational pos = c;
        bool first = true;
        for (;;) {
            if (pos >= kHalf) { R = kHalf; break; }
            if (!first) {
                bool handoff = false;
                for (int N = N0; N <= opts.max_depth && !handoff; ++N) {
                    Interval J{pos, std::min(next_breakpoint(pq, N, pos), kHalf)};
                    if (check_quadbound(pq, cert.sigma2_c, J, N)) handoff = true;
                }
                if (handoff) { R = pos; break; }
            }
            bool extended = false;
            std::optional<Rational> best;
            Interval coarse{pos, kHalf};
            for (int N = N0; N <= opts.max_depth; ++N) {
                Interval J{pos, std::min(next_breakpoint(pq, N, pos), kHalf)};
                if (N == N0) coarse = J;
                auto out = check_monotone_down(pq, J, N);
                if (out) {
                    cert.verdicts.push_back(*out.verdict);
                    pos = J.hi;
                    extended = true;
                    break;
                }
                if (out.margin && (!best || *out.margin > *best)) best = out.margin;
            }
            if (!extended || cert.verdicts.size() > kChainCap) {
                fails.push_back({coarse, best, false});
                R = pos;
                break;
            }
            first = false;
        }
    }

    // Monotone-increase chain from c to the left.
    Rational L = c;
    {
        Rational pos = c;
        bool first = true;
        for (;;) {
            if (pos <= Rational(0)) { L = Rational(0); break; }
            if (!first) {
                bool handoff = false;
                for (int N = N0; N <= opts.max_depth && !handoff; ++N) {
                    Interval J{prev_breakpoint(pq, N, pos), pos};
                    if (check_quadbound(pq, cert.sigma2_c, J, N)) handoff = true;
                }
                if (handoff) { L = pos; break; }
            }
            bool extended = false;
            std::optional<Rational> best;
            Interval coarse{Rational(0), pos};
            for (int N = N0; N <= opts.max_depth; ++N) {
                Interval J{prev_breakpoint(pq, N, pos), pos};
                if (N == N0) coarse = J;
                auto out = check_monotone_up(pq, J, N);
                if (out) {
                    cert.verdicts.push_back(*out.verdict);
                    pos = J.lo;
                    extended = true;
                    break;
                }
                if (out.margin && (!best || *out.margin > *best)) best = out.margin;
            }
            if (!extended || cert.verdicts.size() > kChainCap) {
                fails.push_back({coarse, best, false});
                L = pos;
                break;
            }
            first = false;
        }
    }

    // Quadratic covering of what the chains did not claim.
    auto cover = [&](const Rational& lo, const Rational& hi) {
        Rational pos = lo;
        while (pos < hi) {
            bool done = false;
            std::optional<Rational> best;
            Interval coarse{pos, hi};
            for (int N = N0; N <= opts.max_depth; ++N) {
                Interval J{pos, std::min(next_breakpoint(pq, N, pos), hi)};
                if (N == N0) coarse = J;
                auto out = check_quadbound(pq, cert.sigma2_c, J, N);
                if (out) {
                    cert.verdicts.push_back(*out.verdict);
                    pos = J.hi;
                    done = true;
                    break;
                }
                if (out.margin && (!best || *out.margin > *best)) best = out.margin;
            }
            if (!done) {
                fails.push_back({coarse, best, true});
                pos = coarse.hi;
            }
        }
    };
    cover(Rational(0), L);
    cover(R, kHalf);

    std::sort(cert.verdicts.begin(), cert.verdicts.end(),
              [](const Verdict& a, const Verdict& b) { return a.interval.lo < b.interval.lo; });

    if (fails.empty()) {
        cert.status = CertStatus::Proven;
        return cert;
    }
    cert.status = CertStatus::Failed;
    // Report the worst value-kind failure when one exists: that is where the
    // claimed supremum is actually exceeded.
    const Failure* worst = nullptr;
    for (const Failure& f : fails) {
        if (!worst) { worst = &f; continue; }
        if (f.value_kind != worst->value_kind) {
            if (f.value_kind) worst = &f;
            continue;
        }
        if (f.margin && (!worst->margin || *f.margin < *worst->margin)) worst = &f;
    }
    cert.failed_interval = worst->interval;
    cert.failure_margin = worst->margin;
    return cert;
}

bool recheck(const Certificate& cert, std::string* diagnostic) {
    auto fail = [&](const std::string& why) {
        if (diagnostic) *diagnostic = why;
        return false;
    };

    if (cert.status != CertStatus::Proven) return fail("status is not proven");
    std::optional<RatioPair> pq;
    try {
        pq.emplace(cert.p, cert.q);
    } catch (const std::exception& e) {
        return fail(std::string("bad ratio: ") + e.what());
    }
    if (pq->q == 1) return fail("q == 1 certificates are not valid");
    if (!(Rational(0) < cert.c && cert.c <= kHalf)) return fail("c outside (0, 1/2]");
    if (cert.verdicts.empty()) return fail("no verdicts");

    // Exact tiling of [0, 1/2).
    if (cert.verdicts.front().interval.lo != Rational(0))
        return fail("tiling does not start at 0");
    for (std::size_t i = 0; i + 1 < cert.verdicts.size(); ++i) {
        if (cert.verdicts[i].interval.hi != cert.verdicts[i + 1].interval.lo)
            return fail("gap or overlap after " + cert.verdicts[i].interval.str());
    }
    if (cert.verdicts.back().interval.hi != kHalf)
        return fail("tiling does not end at 1/2");

    // Chain layout: the increase chain must run contiguously into c, the
    // decrease chain contiguously out of it.
    bool saw_up_into_c = false, saw_down_from_c = false;
    for (std::size_t i = 0; i < cert.verdicts.size(); ++i) {
        const Verdict& v = cert.verdicts[i];
        if (v.kind == VerdictKind::MonotoneUp) {
            if (v.interval.hi > cert.c) return fail("increase verdict beyond c");
            if (v.interval.hi == cert.c)
                saw_up_into_c = true;
            else if (i + 1 >= cert.verdicts.size() ||
                     cert.verdicts[i + 1].kind != VerdictKind::MonotoneUp)
                return fail("increase chain broken at " + v.interval.str());
        } else if (v.kind == VerdictKind::MonotoneDown) {
            if (v.interval.lo < cert.c) return fail("decrease verdict before c");
            if (v.interval.lo == cert.c)
                saw_down_from_c = true;
            else if (i == 0 || cert.verdicts[i - 1].kind != VerdictKind::MonotoneDown)
                return fail("decrease chain broken at " + v.interval.str());
        } else {
            if (v.interval.interior_contains(cert.c))
                return fail("quadratic verdict contains c in its interior");
        }
    }
    if (!saw_up_into_c) return fail("no increase chain ending at c");
    if (cert.c < kHalf && !saw_down_from_c) return fail("no decrease chain starting at c");

    for (const Verdict& v : cert.verdicts) {
        CheckOutcome out;
        switch (v.kind) {
            case VerdictKind::QuadBound:
                out = check_quadbound(*pq, cert.sigma2_c, v.interval, v.depth);
                break;
            case VerdictKind::MonotoneUp:
                out = check_monotone_up(*pq, v.interval, v.depth);
                break;
            case VerdictKind::MonotoneDown:
                out = check_monotone_down(*pq, v.interval, v.depth);
                break;
        }
        if (!out)
            return fail("verdict does not hold on " + v.interval.str());
        if (out.verdict->margin != v.margin || out.verdict->witness != v.witness)
            return fail("stored margin/witness mismatch on " + v.interval.str());
    }
    return true;
}

}  // namespace lilsigma
