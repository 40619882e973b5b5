#include <random>

#include <doctest.h>

#include "dal/cf_core.hpp"
#include "dal/errors.hpp"
#include "dal/exact.hpp"
#include "oracles.hpp"

using namespace dal;

TEST_CASE("digit streams index from one and respect their horizon") {
  const auto t = PartialQuotients::terminating({3, 7, 15});
  CHECK(t[1] == 3);
  CHECK(t[3] == 15);
  CHECK_THROWS_AS(t[4], NeedsMoreDigits);
  CHECK(t.label() == "[0;3,7,15]");

  const auto p = PartialQuotients::periodic({3, 1}, {4, 5});
  CHECK(p.label() == "periodic:3,1|4,5");
  CHECK(p.take(7) == std::vector<Digit>{3, 1, 4, 5, 4, 5, 4});
  CHECK(p.is_infinite());

  const auto g = PartialQuotients::generated([](std::size_t nu) { return Digit(nu); }, "increasing");
  CHECK(g[1000] == 1000);
  const auto bad = PartialQuotients::generated([](std::size_t nu) { return Digit(nu % 2); }, "bad");
  CHECK_THROWS_AS(bad[2], InvalidDigit);
  CHECK_THROWS_AS(PartialQuotients::terminating({1, 0, 2}), InvalidDigit);
  CHECK(PartialQuotients::golden().format(3) == "1,1,1,…");
}

TEST_CASE("convergents of the fractional part of pi") {
  const auto pairs = convergents(PartialQuotients::terminating({7, 15, 1, 292}), 4);
  REQUIRE(pairs.size() == 6);
  CHECK(pairs[0].nu == -1);
  CHECK(pairs[5].p == 4687);
  CHECK(pairs[5].q == 33102);
  const mpq_class value = oracle::fold({7, 15, 1, 292});
  CHECK(mpq_class(pairs[5].p, pairs[5].q) == value);
}

TEST_CASE("determinant identity, growth bound and reversed tails on random streams") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto digits = oracle::random_digits(rng, 200);
    const auto pq = PartialQuotients::prefix(digits);
    const auto pairs = convergents(pq, digits.size());
    const auto q = oracle::denominators(digits);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      const long nu = pairs[i].nu;
      const mpz_class det = pairs[i - 1].p * pairs[i].q - pairs[i].p * pairs[i - 1].q;
      CHECK(det == (nu % 2 == 0 ? 1 : -1));
      if (nu >= 0) {
        CHECK(pairs[i].q == q[nu]);
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, nu >= 1 ? nu - 1 : 0);
        CHECK(pairs[i].q * pairs[i].q * (nu == 0 ? 2 : 1) >= two_pow);
      }
    }
    for (std::size_t nu : {std::size_t{1}, std::size_t{2}, std::size_t{57}, std::size_t{200}}) {
      CHECK(reversed_tail(pq, nu).value == mpq_class(q[nu - 1], q[nu]));
    }
  }
}

TEST_CASE("forward tails bracket the true remainder") {
  const std::vector<Digit> digits{2, 1, 5, 3, 9, 1, 1, 4, 2, 6};
  const auto t = PartialQuotients::terminating(digits);
  for (std::size_t nu = 1; nu <= digits.size(); ++nu) {
    const std::vector<Digit> rest(digits.begin() + static_cast<long>(nu), digits.end());
    const mpq_class truth = mpq_class(mpz_class(static_cast<unsigned long>(digits[nu - 1]))) + oracle::fold(rest);
    const auto exact_tail = tail_enclosure(t, nu, 20);
    CHECK(exact_tail.exact());
    CHECK(exact_tail.lo == truth);
    const auto partial = tail_enclosure(t, nu, 2);
    CHECK(partial.contains(truth));
    CHECK(encloses(reciprocal_tail(t, nu, 3), 1 / truth));
  }
  CHECK(reciprocal_tail(t, digits.size() + 1, 5).lo == 0.0);
  CHECK(reciprocal_tail(t, digits.size() + 1, 5).hi == 0.0);
  const auto p = PartialQuotients::prefix(digits);
  CHECK(reciprocal_tail(p, digits.size() + 1, 5).hi == 1.0);
  const auto depth0 = tail_enclosure(PartialQuotients::golden(), 1, 0);
  CHECK(depth0.lo == 1);
  CHECK(depth0.hi == 2);
}

TEST_CASE("rational digits invert the fold") {
  CHECK(rational_digits(mpq_class(0)).empty());
  CHECK(rational_digits(mpq_class(1, 2)) == std::vector<Digit>{2});
  const std::vector<Digit> d{3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(rational_digits(oracle::fold(d)) == d);
}

TEST_CASE("certified extraction keeps only digits shared by the whole bit interval") {
  const auto e = extract_digits(2000, 11);
  REQUIRE(e.certified_count > 100);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 2000);
  const auto lo = rational_digits(mpq_class(e.numerator, scale));
  const auto hi = rational_digits(mpq_class(e.numerator + 1, scale));
  const auto digits = e.digits.take(e.certified_count);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    CHECK(lo[i] == digits[i]);
    CHECK(hi[i] == digits[i]);
  }
  CHECK_THROWS_AS(e.digits[e.certified_count + 1], NeedsMoreDigits);
  CHECK(extract_digits(2000, 11).digits.take(50) == e.digits.take(50));
  CHECK(extract_digits(2000, 12).digits.take(50) != e.digits.take(50));
  CHECK(extract_digits(2000, 11, 10).certified_count == 10);
  CHECK(e.digits.label() == "random:11");
}
