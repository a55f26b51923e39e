#include <doctest.h>

#include "qhring/rational.hpp"

using namespace qh;

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK((-a) == Rational(-1, 2));
  CHECK(Rational(0, 5) == Rational(0));
}

TEST_CASE("rational comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 3) > Rational(2));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(2, 4) >= Rational(1, 2));
}

TEST_CASE("rational parse and render round-trip") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("-9/6") == Rational(-3, 2));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  // parse failures are always invalid_argument, including numeric overflow
  // and zero denominators
  CHECK_THROWS_AS(Rational::parse("99999999999999999999999"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/-0"), std::invalid_argument);
}

TEST_CASE("extended rationals order infinity last") {
  ExtRat inf = ExtRat::infinity();
  ExtRat two(Rational(2));
  CHECK(two < inf);
  CHECK(ExtRat::min(inf, two) == two);
  CHECK((inf + Rational(5)).isInf());
  CHECK((two + Rational(1, 2)) == ExtRat(Rational(5, 2)));
  CHECK(inf == ExtRat::infinity());
  CHECK(inf.str() == "inf");
}
