#include "lilsigma/rational.hpp"

#include <sstream>

namespace lilsigma {

namespace {

// "-?digits(/digits)?", nothing else; GMP itself would skip whitespace.
bool well_formed(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    start = ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return i > start && i == s.size();
}

}  // namespace

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (!well_formed(s) || q.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::domain_error("Rational::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational frac(const Rational& x) { return x - Rational(x.floor()); }

Rational cov_kernel(const Rational& x, const Rational& y) {
    static const Rational one(1);
    if (x.sign() < 0 || y.sign() < 0 || x >= one || y >= one)
        throw std::domain_error("cov_kernel: arguments must lie in [0,1)");
    const Rational& m = x < y ? x : y;
    return m - x * y;
}

Rational cov_kernel_diag(const Rational& x) {
    Rational f = frac(x);
    return f * (Rational(1) - f);
}

std::string Rational::decimal(int sig) const {
    if (sig < 1) throw std::invalid_argument("Rational::decimal: sig must be >= 1");
    if (is_zero()) return "0";
    mpz_class a = ::abs(v_.get_num());
    const mpz_class& b = v_.get_den();

    // e = floor(log10(a/b)); seed from digit counts, then correct exactly.
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
    auto cmp_pow10 = [&](long k) {  // sign of a/b - 10^k
        mpz_class lhs = a, rhs = b, p;
        if (k >= 0) {
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
            rhs *= p;
        } else {
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-k));
            lhs *= p;
        }
        return cmp(lhs, rhs);
    };
    while (cmp_pow10(e) < 0) --e;
    while (cmp_pow10(e + 1) >= 0) ++e;

    // digits = round(a * 10^(sig-1-e) / b), half-up
    long shift = sig - 1 - e;
    mpz_class scaled = a, p;
    if (shift >= 0) {
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled *= p;
    } else {
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled /= 1;  // keep exact below
    }
    mpz_class denom = b;
    if (shift < 0) denom *= p;
    mpz_class digits = (2 * scaled + denom) / (2 * denom);
    std::string ds = digits.get_str();
    if (static_cast<int>(ds.size()) > sig) {  // carry 999.. -> 1000..
        ++e;
        ds.resize(static_cast<size_t>(sig));
    }

    std::ostringstream out;
    if (sign() < 0) out << '-';
    if (e >= sig || e < -5) {
        out << ds[0];
        if (sig > 1) out << '.' << ds.substr(1);
        out << 'e' << (e >= 0 ? "+" : "") << e;
    } else if (e >= 0) {
        out << ds.substr(0, static_cast<size_t>(e) + 1) << '.'
            << ds.substr(static_cast<size_t>(e) + 1);
        if (e + 1 == sig) {
            std::string s = out.str();
            s.pop_back();  // drop trailing '.'
            return s;
        }
    } else {
        out << "0.";
        for (long i = 0; i < -e - 1; ++i) out << '0';
        out << ds;
    }
    return out.str();
}

}  // namespace lilsigma
