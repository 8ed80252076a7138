#pragma once

// Exact rational scalar backed by GMP. Values are canonical (lowest terms,
// positive denominator) after construction and stay canonical through every
// operation; no rounding happens anywhere in this type.

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace lilsigma {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}                       // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& n) : v_(n) {}           // NOLINT(google-explicit-constructor)
    Rational(long n, long d) : v_(n, d) { canonicalize(); }
    Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) { canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { canonicalize(); }

    // gmpxx expression templates (a*b - c, ...) resolve here
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& n) : v_(mpz_class(n)) {}  // NOLINT
    template <class U1, class U2>
    Rational(const __gmp_expr<mpz_t, U1>& n, const __gmp_expr<mpz_t, U2>& d)
        : v_(mpz_class(n), mpz_class(d)) {
        canonicalize();
    }

    // Parses "n" or "n/d" in base 10.
    static Rational parse(const std::string& s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class floor() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    mpz_class ceil() const {
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // "n/d", or plain "n" for integers.
    std::string str() const { return v_.get_str(); }

    // Nearest double (GMP rounding).
    double to_double() const { return v_.get_d(); }

    // Decimal rendering with `sig` significant digits, round-half-up.
    std::string decimal(int sig = 30) const;

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}

    void canonicalize() {
        if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    mpq_class v_;
};

Rational abs(const Rational& x);

// Fractional part <x> = x - floor(x), in [0, 1).
Rational frac(const Rational& x);

// Covariance kernel of the variance functional: min(x,y) - x*y on [0,1)^2.
// Rejects arguments outside [0,1); the result lies in [0, 1/4].
Rational cov_kernel(const Rational& x, const Rational& y);

// Its diagonal through the fractional part: <x>(1 - <x>). Total on rationals.
Rational cov_kernel_diag(const Rational& x);

}  // namespace lilsigma
