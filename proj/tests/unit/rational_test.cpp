#include <random>

#include "doctest.h"
#include "lilsigma/rational.hpp"

using namespace lilsigma;

namespace {

Rational rand_rational(std::mt19937_64& rng, long max_den = 1000) {
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> num(-3 * max_den, 3 * max_den);
    return Rational(num(rng), d);
}

Rational rand_unit(std::mt19937_64& rng, long max_den = 1000) {
    std::uniform_int_distribution<long> den(2, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> num(0, d - 1);
    return Rational(num(rng), d);
}

}  // namespace

TEST_CASE("canonical form and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(1, 3) * Rational(3, 5)) == Rational(1, 5));
    CHECK((Rational(7, 2) / Rational(7, 4)) == Rational(2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(7, 3).ceil() == 3);
    CHECK(Rational(6, 3).ceil() == 2);
}

TEST_CASE("parse and serialize") {
    CHECK(Rational::parse("948/3773") == Rational(948, 3773));
    CHECK(Rational::parse("-1/3") == Rational(-1, 3));
    CHECK(Rational::parse("42") == Rational(42));
    CHECK(Rational::parse("10/4").str() == "5/2");
    CHECK_THROWS(Rational::parse(""));
    CHECK_THROWS(Rational::parse("a/b"));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("1 2"));    // gmp would read this as 12
    CHECK_THROWS(Rational::parse(" 1/2"));
    CHECK_THROWS(Rational::parse("1/2 "));
    CHECK_THROWS(Rational::parse("1/-2"));
    CHECK_THROWS(Rational::parse("+1/2"));
    CHECK_THROWS(Rational::parse("1/2/3"));
    CHECK_THROWS(Rational::parse("0x10"));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational r = rand_rational(rng);
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("decimal rendering") {
    CHECK(Rational(0).decimal() == "0");
    CHECK(Rational(1, 3).decimal(5) == "0.33333");
    CHECK(Rational(2, 3).decimal(4) == "0.6667");
    CHECK(Rational(-2, 3).decimal(4) == "-0.6667");
    CHECK(Rational(999999, 1000).decimal(4) == "1000");
    CHECK(Rational(948, 3773).decimal(12) == "0.251258945136");
    CHECK(Rational(1, 100000).decimal(3) == "0.0000100");
    CHECK(Rational(1, 10000000).decimal(3) == "1.00e-7");
    CHECK(Rational(mpz_class("1000000000000000000000000000000000000000000")).decimal(3) ==
          "1.00e+42");
    CHECK(Rational(5).decimal(3) == "5.00");
}

TEST_CASE("frac matches the defining identity") {
    Rational c(8717, 18335);
    CHECK(frac(c) == c);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(frac(Rational(12) * c) == Rational(12929, 18335));
    CHECK(frac(Rational(5)) == Rational(0));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> ks(-50, 50);
    for (int i = 0; i < 200; ++i) {
        Rational x = rand_rational(rng);
        Rational f = frac(x);
        CHECK(f >= Rational(0));
        CHECK(f < Rational(1));
        CHECK(x - f == Rational(x.floor()));
        CHECK(frac(x + Rational(ks(rng))) == f);
    }
}

TEST_CASE("covariance kernel examples") {
    CHECK(cov_kernel(Rational(3, 7), Rational(3, 7)) == Rational(12, 49));
    CHECK(cov_kernel(Rational(0), Rational(5, 9)) == Rational(0));
    CHECK(cov_kernel(Rational(1, 2), Rational(1, 2)) == Rational(1, 4));
    CHECK_THROWS_AS(cov_kernel(Rational(1), Rational(1, 2)), std::domain_error);
    CHECK_THROWS_AS(cov_kernel(Rational(-1, 5), Rational(1, 2)), std::domain_error);
}

TEST_CASE("diagonal kernel examples") {
    CHECK(cov_kernel_diag(Rational(3, 7)) == Rational(12, 49));
    CHECK(cov_kernel_diag(Rational(7, 2)) == Rational(1, 4));
    CHECK(cov_kernel_diag(Rational(5)) == Rational(0));
    CHECK(cov_kernel_diag(Rational(-1, 3)) == cov_kernel_diag(Rational(2, 3)));
}

TEST_CASE("kernel identities") {
    std::mt19937_64 rng(13);
    const Rational one(1), quarter(1, 4);
    for (int i = 0; i < 500; ++i) {
        Rational x = rand_unit(rng), y = rand_unit(rng);
        Rational V = cov_kernel(x, y);
        CHECK(V == cov_kernel(y, x));
        CHECK(V >= Rational(0));
        CHECK(V <= quarter);
        if (x.sign() > 0 && y.sign() > 0)
            CHECK(cov_kernel(one - x, one - y) == V);
        CHECK(cov_kernel_diag(x) == cov_kernel(x, x));
    }
}
