#include <doctest.h>

#include "dal/errors.hpp"
#include "dal/quadratic_surd.hpp"

using namespace dal;

TEST_CASE("normalization extracts squares and common factors") {
  const QuadraticSurd a(mpz_class(2), mpz_class(2), mpz_class(20), mpz_class(4));  // (2 + 2 sqrt 20)/4
  CHECK(a.str() == "(1 + 2*sqrt(5))/2");
  CHECK(QuadraticSurd(mpz_class(1), mpz_class(1), mpz_class(9), mpz_class(2)).str() == "2");
  CHECK(QuadraticSurd(mpz_class(-1), mpz_class(0), mpz_class(5), mpz_class(-3)).str() == "1/3");
}

TEST_CASE("arithmetic stays exact") {
  const QuadraticSurd r5 = QuadraticSurd::sqrt(mpq_class(5));
  const QuadraticSurd phi = (QuadraticSurd(mpq_class(1)) + r5) / QuadraticSurd(mpq_class(2));
  CHECK(phi * phi == phi + QuadraticSurd(mpq_class(1)));
  CHECK((phi * phi.conjugate()).str() == "-1");
  CHECK(phi.enclosure().contains(1.6180339887498949));
  CHECK_THROWS_AS(r5 + QuadraticSurd::sqrt(mpq_class(2)), DomainError);
  CHECK(QuadraticSurd::sqrt(mpq_class(9, 4)).str() == "3/2");
}

TEST_CASE("comparison across radicands is exact") {
  const QuadraticSurd r2 = QuadraticSurd::sqrt(mpq_class(2));
  const QuadraticSurd r3 = QuadraticSurd::sqrt(mpq_class(3));
  CHECK(r2 < r3);
  CHECK(compare(r3, r2) > 0);
  CHECK(QuadraticSurd(mpq_class(141421, 100000)) < r2);
  CHECK(QuadraticSurd(mpq_class(141422, 100000)) > r2);
  CHECK((r2 - r2).sign() == 0);
  CHECK(r2 - QuadraticSurd(mpq_class(2)) < QuadraticSurd(mpq_class(0)));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == mpq_class(3, 4));
  CHECK(parse_rational("0.75") == mpq_class(3, 4));
  CHECK(parse_rational("-2") == mpq_class(-2));
  CHECK(parse_rational("6/8") == mpq_class(3, 4));
  CHECK(parse_rational("010") == mpq_class(10));
  CHECK(parse_rational("010/07") == mpq_class(10, 7));
  CHECK(parse_rational("0.0625") == mpq_class(1, 16));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}
