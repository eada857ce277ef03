#include <catch_amalgamated.hpp>

#include <sstream>

#include "haarcp/rational.hpp"

using haarcp::BigInt;
using haarcp::ErrorKind;
using haarcp::Rational;

TEST_CASE("rationals are stored reduced with positive denominator", "[rational]") {
  Rational r(BigInt(6), BigInt(-8));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 4);
  CHECK(r.str() == "-3/4");

  Rational z(BigInt(0), BigInt(-17));
  CHECK(z.numerator() == 0);
  CHECK(z.denominator() == 1);
  CHECK(z.str() == "0");
}

TEST_CASE("integers print without a denominator", "[rational]") {
  CHECK(Rational(1).str() == "1");
  CHECK(Rational(BigInt(12), BigInt(4)).str() == "3");
  std::ostringstream os;
  os << Rational(5, 8);
  CHECK(os.str() == "5/8");
}

TEST_CASE("arithmetic is exact", "[rational]") {
  Rational a(1, 12), b(3, 40);
  CHECK(a + b == Rational(19, 120));
  CHECK(a - b == Rational(1, 120));
  CHECK(a * b == Rational(1, 160));
  CHECK(a / b == Rational(10, 9));
  CHECK(-a == Rational(-1, 12));
  CHECK(Rational(5, 8) * Rational(1, 16) == Rational(5, 128));
}

TEST_CASE("ordering compares exact values", "[rational]") {
  CHECK(Rational(3, 40) < Rational(1, 12));
  CHECK(Rational(1, 4) < Rational(5, 8));
  CHECK_FALSE(Rational(9, 120) > Rational(3, 40));
  CHECK(Rational(9, 120) == Rational(3, 40));
  CHECK(Rational(-1, 2) < 0);
}

TEST_CASE("large values do not overflow", "[rational]") {
  BigInt big = BigInt(1) << 200;
  Rational r(big + 1, big);
  Rational s = r * r - r;
  CHECK(s == Rational(big + 1, big * big));
  CHECK(r.to_double() == Catch::Approx(1.0));
}

TEST_CASE("parse accepts integers and fractions", "[rational]") {
  CHECK(Rational::parse("3/40") == Rational(3, 40));
  CHECK(Rational::parse("6/80") == Rational(3, 40));
  CHECK(Rational::parse("-2/4") == Rational(-1, 2));
  CHECK(Rational::parse("7") == 7);
}

TEST_CASE("parse rejects decimals and junk", "[rational]") {
  for (const char *bad : {"0.075", "", "/", "3/", "/4", "1/0", "abc", "1/2/3", "1e3", " 1/2"}) {
    INFO(bad);
    try {
      Rational::parse(bad);
      FAIL("accepted");
    } catch (const haarcp::Error &e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
}

TEST_CASE("division by zero is reported", "[rational]") {
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
