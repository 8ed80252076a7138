// lilsigma command line: exact sigma^2 evaluation, discrepancy constants,
// supremum certificates, maximizer search, and orbit simulation.
//
// Exit codes: 0 success (certify: proven), 2 honest inconclusiveness
// (certify failed / constant unknown / recheck rejected), 1 usage or input
// errors.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lilsigma/certificate_io.hpp"
#include "lilsigma/certifier.hpp"
#include "lilsigma/constants.hpp"
#include "lilsigma/simulator.hpp"

using nlohmann::json;
using namespace lilsigma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Common {
    std::string format = "text";
    int threads = 0;

    bool json_out() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", common.threads,
                    "Worker threads for search (0 = all cores)");
}

json rational_json(const Rational& r) {
    return json{{"exact", r.str()}, {"decimal", r.decimal()}};
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int default_max_depth() {
    if (const char* env = std::getenv("LIL_SIGMA_MAX_DEPTH"); env && *env) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 8;
}

int cmd_sigma2(long p, long q, const std::string& at, int depth, const Common& common) {
    RatioPair pq(p, q);
    Rational a = Rational::parse(at);
    json doc{{"op", "sigma2"}, {"p", p}, {"q", q}, {"at", a.str()}};
    std::optional<Rational> exact;
    try {
        exact = sigma2_exact_rational(pq, a);
    } catch (const std::runtime_error&) {
        // orbit period past the cap: fall through to the enclosure
    }
    if (exact) {
        doc["method"] = "exact";
        doc["sigma2"] = rational_json(*exact);
        if (common.json_out())
            emit(doc);
        else
            std::cout << "sigma^2(" << p << "/" << q << ") at " << a.str() << " = "
                      << exact->str() << " = " << exact->decimal() << "\n";
        return kExitOk;
    }
    SigmaEnclosure e = sigma2_enclosure(pq, a, depth);
    doc["method"] = "enclosure";
    doc["depth"] = depth;
    doc["lower"] = rational_json(e.lower);
    doc["upper"] = rational_json(e.upper);
    if (common.json_out())
        emit(doc);
    else
        std::cout << "sigma^2(" << p << "/" << q << ") at " << a.str() << " in ["
                  << e.lower.str() << ", " << e.upper.str() << "]  (depth " << depth << ")\n";
    return kExitOk;
}

int cmd_constant(long p, long q, unsigned long r, bool irrational, int search_depth,
                 bool no_certify, int max_depth, const Common& common) {
    ThetaSpec spec = irrational ? ThetaSpec::irrational()
                                : ThetaSpec::rational_root(RatioPair(p, q), r);
    ConstantOptions opts;
    opts.search_max_k = search_depth;
    opts.run_certify = !no_certify;
    opts.certify_max_depth = max_depth;
    opts.threads = common.threads;
    SigmaConstant s = sigma_constant(spec, opts);

    json doc{{"op", "constant"}, {"provenance", to_string(s.provenance)}};
    if (!irrational) {
        doc["p"] = p;
        doc["q"] = q;
        doc["r"] = r;
    }
    if (s.provenance != Provenance::Unknown) {
        doc["sigma_squared"] = rational_json(s.sigma_squared);
        if (s.display) {
            doc["display"] = json{{"coeff", s.display->coeff.str()},
                                  {"radicand", s.display->radicand.str()}};
        }
    }
    if (common.json_out()) {
        emit(doc);
    } else if (s.provenance == Provenance::Unknown) {
        std::cout << "Sigma^2: unknown (search inconclusive)\n";
    } else {
        std::cout << "Sigma^2 = " << s.sigma_squared.str() << " = "
                  << s.sigma_squared.decimal() << "\n";
        if (s.display)
            std::cout << "Sigma   = (" << s.display->coeff.str() << ")*sqrt("
                      << s.display->radicand.str() << ")\n";
        std::cout << "provenance: " << to_string(s.provenance) << "\n";
    }
    return s.provenance == Provenance::Unknown ? kExitInconclusive : kExitOk;
}

int cmd_certify(long p, long q, const std::string& c_str, int max_depth,
                const std::string& emit_path, const Common& common) {
    RatioPair pq(p, q);
    Rational c = Rational::parse(c_str);
    CertifyOptions opts;
    opts.max_depth = max_depth;
    Certificate cert = certify_supremum(pq, c, opts);
    if (!emit_path.empty()) write_certificate_file(cert, emit_path);

    json doc{{"op", "certify"},
             {"p", p},
             {"q", q},
             {"c", c.str()},
             {"sigma2_c", rational_json(cert.sigma2_c)},
             {"status", cert.status == CertStatus::Proven ? "proven" : "failed"},
             {"verdicts", cert.verdicts.size()}};
    if (cert.failed_interval)
        doc["failed_interval"] =
            json{{"lo", cert.failed_interval->lo.str()}, {"hi", cert.failed_interval->hi.str()}};
    if (common.json_out()) {
        emit(doc);
    } else if (cert.status == CertStatus::Proven) {
        std::cout << "proven: sup sigma^2 = sigma^2(" << c.str() << ") = "
                  << cert.sigma2_c.str() << "\n"
                  << cert.verdicts.size() << " verdicts cover [0, 1/2)\n";
    } else {
        std::cout << "failed: could not certify c = " << c.str();
        if (cert.failed_interval) std::cout << " on " << cert.failed_interval->str();
        if (cert.failure_margin) std::cout << " (best margin " << cert.failure_margin->str() << ")";
        std::cout << "\n";
    }
    return cert.status == CertStatus::Proven ? kExitOk : kExitInconclusive;
}

int cmd_recheck(const std::string& path, const Common& common) {
    Certificate cert = read_certificate_file(path);
    std::string why;
    bool ok = recheck(cert, &why);
    json doc{{"op", "recheck"}, {"path", path}, {"valid", ok}};
    if (!ok) doc["reason"] = why;
    if (common.json_out())
        emit(doc);
    else
        std::cout << (ok ? "certificate valid" : "certificate INVALID: " + why) << "\n";
    return ok ? kExitOk : kExitInconclusive;
}

int cmd_search(long p, long q, int max_k, int top, const Common& common) {
    RatioPair pq(p, q);
    auto cands = search_candidates(pq, max_k, top, common.threads);
    json arr = json::array();
    for (const Candidate& cand : cands) {
        json item{{"k", cand.k},
                  {"n", cand.n.get_str()},
                  {"c", cand.c.str()},
                  {"value_lower", rational_json(cand.value_lower)},
                  {"exact", cand.exact.has_value()}};
        arr.push_back(item);
    }
    json doc{{"op", "search"}, {"p", p}, {"q", q}, {"max_k", max_k}, {"candidates", arr}};
    if (common.json_out()) {
        emit(doc);
    } else {
        for (const Candidate& cand : cands)
            std::cout << "k=" << cand.k << "  c=" << cand.c.str() << "  sigma^2"
                      << (cand.exact ? " = " : " >= ") << cand.value_lower.str() << " = "
                      << cand.value_lower.decimal() << "\n";
        if (cands.empty()) std::cout << "no candidates\n";
    }
    return cands.empty() ? kExitInconclusive : kExitOk;
}

int cmd_simulate(long p, long q, const std::string& x0_str, long n,
                 std::vector<long> checkpoints, const Common& common) {
    RatioPair pq(p, q);
    Rational x0 = Rational::parse(x0_str);
    if (checkpoints.empty()) {
        for (long c = 16; c <= n; c *= 2) checkpoints.push_back(c);
        if (checkpoints.empty() || checkpoints.back() != n) checkpoints.push_back(n);
    }
    std::sort(checkpoints.begin(), checkpoints.end());
    for (long cp : checkpoints)
        if (cp < kMinLilCheckpoint)
            throw std::invalid_argument("simulate: checkpoints must be >= 16");

    // reference constant, when the dispatcher knows it
    std::optional<Rational> sigma2;
    try {
        SigmaConstant s = sigma_constant(ThetaSpec::rational_root(pq),
                                         ConstantOptions{4, false, 8, common.threads});
        if (s.provenance != Provenance::Unknown) sigma2 = s.sigma_squared;
    } catch (const std::exception&) {
    }

    Orbit orb = orbit(pq, x0, checkpoints.back(), std::max(n, kOrbitCap));
    std::vector<double> pts;
    pts.reserve(orb.points.size());
    for (const Rational& y : orb.points) pts.push_back(y.to_double());

    json rows = json::array();
    for (long cp : checkpoints) {
        double dn = discrepancy_extreme({pts.begin(), pts.begin() + cp});
        double nn = static_cast<double>(cp);
        double ratio = nn * dn / std::sqrt(2.0 * nn * std::log(std::log(nn)));
        rows.push_back(json{{"N", cp}, {"d_extreme", dn}, {"lil_ratio", ratio}});
        if (!common.json_out())
            std::cout << "N=" << cp << "  D_N=" << dn << "  N*D_N/sqrt(2N loglog N)=" << ratio
                      << "\n";
    }
    json doc{{"op", "simulate"}, {"p", p}, {"q", q}, {"x0", x0.str()}, {"trace", rows}};
    if (sigma2) {
        doc["sigma_squared"] = rational_json(*sigma2);
        if (!common.json_out())
            std::cout << "reference Sigma = sqrt(" << sigma2->str() << ") = "
                      << std::sqrt(sigma2->to_double()) << "\n";
    }
    if (common.json_out()) emit(doc);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact law-of-the-iterated-logarithm discrepancy constants for rational "
                 "geometric progressions"};
    app.require_subcommand(1);
    Common common;

    long p = 0, q = 0;
    unsigned long r = 1;
    std::string at, c_str, x0_str, emit_path, recheck_path;
    bool irrational = false, no_certify = false;
    int depth = 40, search_depth = 6, top = 3, max_depth = default_max_depth();
    long n = 1024;
    std::vector<long> checkpoints;

    auto* sigma2 = app.add_subcommand("sigma2", "Evaluate sigma^2 at a rational point");
    sigma2->add_option("--p", p)->required();
    sigma2->add_option("--q", q)->required();
    sigma2->add_option("--at", at, "Evaluation point a in [0,1), as num/den")->required();
    sigma2->add_option("--depth", depth, "Enclosure depth if the orbit period is impractical");
    add_common(sigma2, common);

    auto* constant = app.add_subcommand("constant", "Compute the constant Sigma^2_{p/q}");
    constant->add_option("--p", p);
    constant->add_option("--q", q);
    constant->add_option("--r", r, "Root index: theta^r = p/q (does not change the value)");
    constant->add_flag("--irrational", irrational,
                       "No power of theta is rational (constant 1/4)");
    constant->add_option("--search-depth", search_depth, "Max k for the candidate search");
    constant->add_flag("--no-certify", no_certify, "Skip certification of searched candidates");
    constant->add_option("--max-depth", max_depth, "Certifier depth cap");
    add_common(constant, common);

    auto* certify = app.add_subcommand("certify", "Certify that sup sigma^2 = sigma^2(c)");
    certify->add_option("--p", p)->required();
    certify->add_option("--q", q)->required();
    certify->add_option("--c", c_str, "Claimed maximizer in (0, 1/2]")->required();
    certify->add_option("--max-depth", max_depth, "Depth cap (env LIL_SIGMA_MAX_DEPTH)");
    certify->add_option("--emit-certificate", emit_path, "Write the certificate here");
    add_common(certify, common);

    auto* recheck_cmd = app.add_subcommand("recheck", "Re-verify a certificate file");
    recheck_cmd->add_option("path", recheck_path)->required();
    add_common(recheck_cmd, common);

    auto* search = app.add_subcommand("search", "Search maximizer candidates n/(p^k - q^k)");
    search->add_option("--p", p)->required();
    search->add_option("--q", q)->required();
    search->add_option("--max-k", search_depth, "Largest k to enumerate");
    search->add_option("--top", top, "How many candidates to report");
    add_common(search, common);

    auto* simulate = app.add_subcommand("simulate", "Exact orbit + discrepancy trace");
    simulate->add_option("--p", p)->required();
    simulate->add_option("--q", q)->required();
    simulate->add_option("--x0", x0_str, "Start point, as num/den")->required();
    simulate->add_option("--n", n, "Number of orbit points");
    simulate->add_option("--checkpoints", checkpoints, "Report at these N (default: powers of 2)");
    add_common(simulate, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sigma2->parsed()) return cmd_sigma2(p, q, at, depth, common);
        if (constant->parsed()) {
            if (!irrational && (p == 0 || q == 0)) {
                std::cerr << "constant: need --p and --q (or --irrational)\n";
                return kExitError;
            }
            return cmd_constant(p, q, r, irrational, search_depth, no_certify, max_depth, common);
        }
        if (certify->parsed()) return cmd_certify(p, q, c_str, max_depth, emit_path, common);
        if (recheck_cmd->parsed()) return cmd_recheck(recheck_path, common);
        if (search->parsed()) return cmd_search(p, q, search_depth, top, common);
        if (simulate->parsed()) return cmd_simulate(p, q, x0_str, n, checkpoints, common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
