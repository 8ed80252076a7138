#include "lilsigma/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "lilsigma/number_theory.hpp"

namespace lilsigma {
namespace {

#ifndef LILSIGMA_DEFAULT_DATA_DIR
#define LILSIGMA_DEFAULT_DATA_DIR "data"
#endif

constexpr int kPrefilterDepth = 12;
constexpr std::size_t kExactStateCap = 4'000;
constexpr int kEnclosureDepth = 40;

Rational sharp_upper_bound(const RatioPair& pq) {
    return Rational(pq.pq() + 1, 4 * (pq.pq() - 1));
}

// sigma^2 partial sum in doubles for the prefilter; fractional parts reduced
// with 64-bit modular arithmetic, so no p^n blow-up.
double approx_sigma2(std::uint64_t n, std::uint64_t D, const std::uint64_t* pmod,
                     const std::uint64_t* qmod, double inv_pq) {
    double x = static_cast<double>(n) / static_cast<double>(D);
    double s = x - x * x;
    double w = 1.0;
    for (int j = 1; j <= kPrefilterDepth; ++j) {
        w *= inv_pq;
        double a = static_cast<double>(pmod[j] * n % D) / static_cast<double>(D);
        double b = static_cast<double>(qmod[j] * n % D) / static_cast<double>(D);
        s += 2.0 * w * (std::min(a, b) - a * b);
    }
    return s;
}

}  // namespace

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::NonRoot: return "non-root";
        case Provenance::OddOdd: return "odd-odd";
        case Provenance::EvenQ1: return "even-q1";
        case Provenance::TwoQ1: return "two-q1";
        case Provenance::LargeFormula: return "large-formula";
        case Provenance::TheoremTable: return "theorem-table";
        case Provenance::Certified: return "certified";
        case Provenance::SearchOnly: return "search-only";
        case Provenance::Unknown: return "unknown";
    }
    return "?";
}

SigmaDisplay make_display(const Rational& s) {
    auto split_square = [](mpz_class v) {
        mpz_class root = 1, rest = 1;
        for (unsigned long d = 2; d <= 100'000 && mpz_class(d) * d <= v; d += (d == 2 ? 1 : 2)) {
            int e = 0;
            while (mpz_divisible_ui_p(v.get_mpz_t(), d)) {
                v /= d;
                ++e;
            }
            for (int i = 0; i < e / 2; ++i) root *= d;
            if (e % 2) rest *= d;
        }
        if (mpz_perfect_square_p(v.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
            root *= r;
        } else {
            rest *= v;
        }
        return std::make_pair(root, rest);
    };
    mpz_class num = s.num(), den = s.den();
    if (num < 0) throw std::invalid_argument("make_display: negative value");
    auto [rn, nn] = split_square(num);
    auto [rd, nd] = split_square(den);
    return SigmaDisplay{Rational(rn, rd), Rational(nn, nd)};
}

SigmaConstant formula_large(const RatioPair& pq, bool assume_type_one) {
    if (pq.pq() % 2 != 0)
        throw std::invalid_argument("formula_large: pq must be even");
    if (pq.p - pq.q < 2)
        throw std::invalid_argument(
            "formula_large: p - q == 1 degenerates to 0 and the formula is known false there");
    if (!assume_type_one) {
        bool ok = (pq.p % 2 == 1) ? (4 * pq.p >= 9 * pq.q) : (pq.p >= 4 * pq.q);
        if (!ok)
            throw std::invalid_argument(
                "formula_large: ratio below the validity threshold; pass assume_type_one for a "
                "ratio proven to be of type I");
    }
    Rational x0(pq.p - pq.q - 1, 2 * (pq.p - pq.q));
    std::uint64_t I = signed_order(pq.q, pq.p - pq.q);
    mpz_class pqI;
    mpz_ui_pow_ui(pqI.get_mpz_t(), static_cast<unsigned long>(pq.pq()),
                  static_cast<unsigned long>(I));
    Rational Q(pqI);
    Rational s = (Q + Rational(1)) / (Q - Rational(1)) * cov_kernel_diag(x0);
    mpz_class qm = 1, pqm = 1;
    for (std::uint64_t m = 1; m < I; ++m) {
        qm *= pq.q;
        pqm *= pq.pq();
        s += Rational(2) * Q / (Q - Rational(1)) * cov_kernel_diag(Rational(qm) * x0) /
             Rational(pqm);
    }
    return SigmaConstant{s, make_display(s), Provenance::LargeFormula};
}

SigmaConstant formula_oddodd(const RatioPair& pq) {
    if (pq.p % 2 == 0 || pq.q % 2 == 0)
        throw std::invalid_argument("formula_oddodd: p and q must both be odd");
    Rational s = sharp_upper_bound(pq);
    return SigmaConstant{s, make_display(s), Provenance::OddOdd};
}

SigmaConstant formula_even_q1(long p) {
    if (p < 4 || p % 2 != 0)
        throw std::invalid_argument("formula_even_q1: p must be even and >= 4 (p = 2 has its own "
                                    "constant 14/27)");
    Rational s = Rational(static_cast<long>(p + 1), 4) * Rational(p) * Rational(p - 2) /
                 (Rational(p - 1) * Rational(p - 1) * Rational(p - 1));
    return SigmaConstant{s, make_display(s), Provenance::EvenQ1};
}

std::vector<Candidate> search_candidates(const RatioPair& pq, int max_k, int top, int threads) {
    if (max_k < 1) throw std::invalid_argument("search_candidates: max_k must be >= 1");
    if (top < 1) throw std::invalid_argument("search_candidates: top must be >= 1");
    // 64-bit modular products below need D^2 < 2^63.
    if (max_k * std::log2(static_cast<double>(pq.p)) > 31)
        throw std::invalid_argument("search_candidates: p^max_k too large for the prefilter");
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    const double inv_pq = 1.0 / static_cast<double>(pq.pq());
    struct Tables {
        std::uint64_t D;
        std::uint64_t pmod[kPrefilterDepth + 1];
        std::uint64_t qmod[kPrefilterDepth + 1];
    };
    auto tables_for = [&](int k) {
        Tables t{};
        std::uint64_t Dp = 1, Dq = 1;
        for (int i = 0; i < k; ++i) { Dp *= pq.p; Dq *= pq.q; }
        t.D = Dp - Dq;
        if (t.D < 2) return t;
        t.pmod[0] = t.qmod[0] = 1 % t.D;
        for (int j = 1; j <= kPrefilterDepth; ++j) {
            t.pmod[j] = t.pmod[j - 1] * static_cast<std::uint64_t>(pq.p) % t.D;
            t.qmod[j] = t.qmod[j - 1] * static_cast<std::uint64_t>(pq.q) % t.D;
        }
        return t;
    };

    // Pass 1: the `top` best approximate values, streamed (duplicates of the
    // same point at different k may occupy slots; that only tightens the
    // cutoff).
    std::vector<double> best(static_cast<std::size_t>(top), -1.0);  // min-first
    auto offer = [](std::vector<double>& heap, double x) {
        auto it = std::min_element(heap.begin(), heap.end());
        if (x > *it) *it = x;
    };
    for (int k = 1; k <= max_k; ++k) {
        Tables t = tables_for(k);
        if (t.D < 2) continue;
        const std::uint64_t n_hi = t.D / 2;        // c in (0, 1/2]
        std::vector<std::vector<double>> parts(static_cast<std::size_t>(threads), best);
        auto work = [&](int ti) {
            std::uint64_t lo = 1 + n_hi * ti / threads, hi = n_hi * (ti + 1) / threads;
            for (std::uint64_t n = lo; n <= hi; ++n)
                offer(parts[static_cast<std::size_t>(ti)],
                      approx_sigma2(n, t.D, t.pmod, t.qmod, inv_pq));
        };
        std::vector<std::thread> pool;
        for (int ti = 1; ti < threads; ++ti) pool.emplace_back(work, ti);
        work(0);
        for (auto& th : pool) th.join();
        for (auto& part : parts)
            for (double x : part) offer(best, x);
    }
    double kth = *std::min_element(best.begin(), best.end());
    if (kth < 0) return {};
    double top1 = *std::max_element(best.begin(), best.end());

    // Conservative slack: 10x the depth-12 tail plus a float-error cushion.
    const double slack = 10.0 * tail_bound(pq, kPrefilterDepth).to_double() + 1e-12 + 1e-9 * top1;
    const double cutoff = kth - slack;

    // Pass 2: re-evaluate survivors exactly, deduplicating reduced points at
    // their first (k, n) appearance.
    std::map<std::pair<mpz_class, mpz_class>, int> seen;
    std::vector<Candidate> survivors;
    for (int k = 1; k <= max_k; ++k) {
        Tables t = tables_for(k);
        if (t.D < 2) continue;
        for (std::uint64_t n = 1; n <= t.D / 2; ++n) {
            if (approx_sigma2(n, t.D, t.pmod, t.qmod, inv_pq) < cutoff) continue;
            Rational c(static_cast<long>(n), static_cast<long>(t.D));
            auto key = std::make_pair(c.num(), c.den());
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), k);
            Candidate cand;
            cand.k = k;
            cand.n = mpz_class(static_cast<unsigned long>(n));
            cand.c = c;
            try {
                cand.exact = sigma2_exact_rational(pq, c, kExactStateCap);
                cand.value_lower = *cand.exact;
            } catch (const std::runtime_error&) {  // period past the cap
                cand.enclosure = sigma2_enclosure(pq, c, kEnclosureDepth);
                cand.value_lower = cand.enclosure->lower;
            }
            survivors.push_back(std::move(cand));
        }
    }
    std::sort(survivors.begin(), survivors.end(), [](const Candidate& a, const Candidate& b) {
        if (a.value_lower != b.value_lower) return a.value_lower > b.value_lower;
        if (a.k != b.k) return a.k < b.k;
        return a.n < b.n;
    });
    if (static_cast<int>(survivors.size()) > top) survivors.resize(top);
    return survivors;
}

std::string data_dir() {
    if (const char* env = std::getenv("LILSIGMA_DATA_DIR"); env && *env) return env;
    return LILSIGMA_DEFAULT_DATA_DIR;
}

const std::vector<TheoremRow>& theorem_table() {
    static std::vector<TheoremRow> rows;
    static std::once_flag loaded;
    std::call_once(loaded, [] {
        const std::string path = data_dir() + "/theorem_table.tsv";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open theorem table: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            TheoremRow row;
            std::string c, s2, coeff, rad;
            if (!(ls >> row.p >> row.q >> row.type >> c >> s2 >> coeff >> rad))
                throw std::runtime_error("malformed theorem table line: " + line);
            row.c = Rational::parse(c);
            row.sigma_squared = Rational::parse(s2);
            row.display = SigmaDisplay{Rational::parse(coeff), Rational::parse(rad)};
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw std::runtime_error("theorem table is empty: " + path);
    });
    return rows;
}

SigmaConstant sigma_constant(const ThetaSpec& spec, const ConstantOptions& opts) {
    if (spec.irrational_powers) {
        SigmaConstant out;
        out.sigma_squared = Rational(1, 4);
        out.display = SigmaDisplay{Rational(1, 2), Rational(1)};
        out.provenance = Provenance::NonRoot;
        return out;
    }
    if (!spec.ratio) throw std::invalid_argument("sigma_constant: missing ratio");
    const RatioPair& pq = *spec.ratio;   // the root index r drops out entirely

    if (pq.p % 2 == 1 && pq.q % 2 == 1) return formula_oddodd(pq);
    if (pq.q == 1) {
        if (pq.p == 2) {
            SigmaConstant out;
            out.sigma_squared = Rational(14, 27);
            out.display = make_display(out.sigma_squared);
            out.provenance = Provenance::TwoQ1;
            return out;
        }
        return formula_even_q1(pq.p);
    }
    bool above_threshold = (pq.p % 2 == 1) ? (4 * pq.p >= 9 * pq.q) : (pq.p >= 4 * pq.q);
    if (above_threshold) return formula_large(pq);

    for (const TheoremRow& row : theorem_table()) {
        if (row.p == pq.p && row.q == pq.q) {
            SigmaConstant out;
            out.sigma_squared = sigma2_exact_periodic(pq, row.c);
            out.display = row.display;
            out.provenance = Provenance::TheoremTable;
            return out;
        }
    }

    auto cands = search_candidates(pq, opts.search_max_k, 1, opts.threads);
    if (cands.empty()) {
        SigmaConstant out;
        out.provenance = Provenance::Unknown;
        return out;
    }
    const Candidate& best = cands.front();
    SigmaConstant out;
    out.sigma_squared = best.value_lower;
    out.provenance = Provenance::SearchOnly;
    if (best.exact) {
        out.display = make_display(*best.exact);
        if (opts.run_certify) {
            CertifyOptions copts;
            copts.max_depth = opts.certify_max_depth;
            Certificate cert = certify_supremum(pq, best.c, copts);
            if (cert.status == CertStatus::Proven) out.provenance = Provenance::Certified;
        }
    }
    return out;
}

}  // namespace lilsigma
