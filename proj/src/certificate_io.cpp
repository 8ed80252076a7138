#include "lilsigma/certificate_io.hpp"

#include <fstream>
#include <sstream>

namespace lilsigma {
namespace {

constexpr const char* kSchema = "lilsigma-certificate/1";

std::runtime_error bad(const std::string& why) {
    return std::runtime_error("certificate parse error: " + why);
}

VerdictKind kind_from(const std::string& s) {
    if (s == "quad") return VerdictKind::QuadBound;
    if (s == "up") return VerdictKind::MonotoneUp;
    if (s == "down") return VerdictKind::MonotoneDown;
    throw bad("unknown verdict kind '" + s + "'");
}

}  // namespace

std::string serialize(const Certificate& cert) {
    std::ostringstream out;
    out << "schema: " << kSchema << '\n';
    out << "p: " << cert.p << '\n';
    out << "q: " << cert.q << '\n';
    out << "c: " << cert.c.str() << '\n';
    out << "sigma2_c: " << cert.sigma2_c.str() << '\n';
    out << "status: " << (cert.status == CertStatus::Proven ? "proven" : "failed") << '\n';
    if (cert.status == CertStatus::Failed && cert.failed_interval) {
        out << "failed_interval: " << cert.failed_interval->lo.str() << ' '
            << cert.failed_interval->hi.str() << '\n';
        if (cert.failure_margin)
            out << "failure_margin: " << cert.failure_margin->str() << '\n';
    }
    out << "verdicts: " << cert.verdicts.size() << '\n';
    for (const Verdict& v : cert.verdicts) {
        out << "verdict: " << v.interval.lo.str() << ' ' << v.interval.hi.str() << ' '
            << to_string(v.kind) << ' ' << v.depth << ' ' << v.margin.str() << ' '
            << v.witness.str() << '\n';
    }
    return out.str();
}

Certificate parse_certificate(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next = [&](const std::string& key) {
        if (!std::getline(in, line)) throw bad("missing '" + key + "' line");
        const std::string prefix = key + ": ";
        if (line.rfind(prefix, 0) != 0) throw bad("expected '" + key + ":', got '" + line + "'");
        return line.substr(prefix.size());
    };

    Certificate cert;
    if (next("schema") != kSchema) throw bad("unsupported schema");
    cert.p = std::stol(next("p"));
    cert.q = std::stol(next("q"));
    cert.c = Rational::parse(next("c"));
    cert.sigma2_c = Rational::parse(next("sigma2_c"));
    std::string status = next("status");
    if (status == "proven")
        cert.status = CertStatus::Proven;
    else if (status == "failed")
        cert.status = CertStatus::Failed;
    else
        throw bad("unknown status '" + status + "'");

    if (!std::getline(in, line)) throw bad("missing verdict count");
    if (line.rfind("failed_interval: ", 0) == 0) {
        std::istringstream ls(line.substr(17));
        std::string a, b;
        if (!(ls >> a >> b)) throw bad("malformed failed_interval");
        Interval fi;
        fi.lo = Rational::parse(a);
        fi.hi = Rational::parse(b);
        cert.failed_interval = std::move(fi);
        if (!std::getline(in, line)) throw bad("missing verdict count");
        if (line.rfind("failure_margin: ", 0) == 0) {
            cert.failure_margin = Rational::parse(line.substr(16));
            if (!std::getline(in, line)) throw bad("missing verdict count");
        }
    }
    if (line.rfind("verdicts: ", 0) != 0) throw bad("expected 'verdicts:', got '" + line + "'");
    long count = std::stol(line.substr(10));
    if (count < 0) throw bad("negative verdict count");

    for (long i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw bad("truncated verdict list");
        if (line.rfind("verdict: ", 0) != 0) throw bad("expected 'verdict:' line");
        std::istringstream ls(line.substr(9));
        std::string lo, hi, kind, margin, witness;
        int depth;
        if (!(ls >> lo >> hi >> kind >> depth >> margin >> witness))
            throw bad("malformed verdict line '" + line + "'");
        std::string extra;
        if (ls >> extra) throw bad("trailing tokens on verdict line");
        // field-by-field assignment: a throw mid-way through aggregate
        // initialization leaks the finished members under gcc 11 (PR 66139)
        Verdict v;
        v.interval.lo = Rational::parse(lo);
        v.interval.hi = Rational::parse(hi);
        v.kind = kind_from(kind);
        v.depth = depth;
        v.margin = Rational::parse(margin);
        v.witness = Rational::parse(witness);
        cert.verdicts.push_back(std::move(v));
    }
    if (std::getline(in, line) && !line.empty()) throw bad("trailing content after verdicts");
    return cert;
}

void write_certificate_file(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open certificate file for writing: " + path);
    out << serialize(cert);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open certificate file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str());
}

}  // namespace lilsigma
