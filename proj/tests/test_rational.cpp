#include <doctest.h>

#include <stdexcept>

#include "manna/rational.hpp"

using manna::Rational;

TEST_CASE("canonical spellings parse") {
    CHECK(Rational::parse("3/4")->str() == "3/4");
    CHECK(Rational::parse("-7")->str() == "-7");
    CHECK(Rational::parse("0")->is_zero());
    CHECK(Rational::parse("-1/3") == Rational(-1, 3));
}

TEST_CASE("non-canonical spellings are rejected strictly") {
    for (const char* bad : {"2/4", "3/1", "+1", "-0", "01", "1/0", "", "1/", "/2", "1.5", "1/-2", "a", " 1", "0/5"})
        CHECK_MESSAGE(!Rational::parse(bad), bad);
}

TEST_CASE("lenient parse canonicalizes") {
    CHECK(Rational::parse_lenient("2/4") == Rational(1, 2));
    CHECK(Rational::parse_lenient("3/1") == Rational(3));
    CHECK(!Rational::parse_lenient("1/0"));
}

TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(3, -9) == Rational(-1, 3));
    CHECK(Rational(-5, 2).abs() == Rational(5, 2));
    CHECK(Rational(-5, 2).reciprocal() == Rational(-2, 5));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("str round-trips through parse") {
    for (long p = -12; p <= 12; ++p)
        for (long q = 1; q <= 12; ++q) {
            const Rational r(p, q);
            const auto back = Rational::parse(r.str());
            REQUIRE(back);
            CHECK(*back == r);
        }
}
