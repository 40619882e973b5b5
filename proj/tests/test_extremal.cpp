#include <cmath>

#include <doctest.h>

#include "dal/errors.hpp"
#include "dal/extremal.hpp"
#include "dal/measure_fn.hpp"
#include "oracles.hpp"

using namespace dal;

TEST_CASE("S(z) closed form against the long double oracle") {
  CHECK(S_closed(mpq_class(2)).str() == "1/2");
  CHECK(S_closed(mpq_class(1)).str() == "(5 - sqrt(5))/10");
  for (int z = 1; z <= 30; ++z) {
    const Interval e = S_closed(mpq_class(z)).enclosure();
    const double truth = static_cast<double>(oracle::constant_stream_limit(z));
    CHECK(e.lo <= truth + 1e-15);
    CHECK(e.hi >= truth - 1e-15);
    CHECK(S_closed(Interval(z)).overlaps(e));
  }
  CHECK(S_closed(Interval(rounding::kInf)).contains(1.0));
  CHECK(constant_tail_value(mpq_class(1)).enclosure().contains(0.6180339887498949));
}

TEST_CASE("S is increasing in z") {
  for (int z = 1; z < 50; ++z) CHECK(S_closed(mpq_class(z)) < S_closed(mpq_class(z + 1)));
}

TEST_CASE("constant streams stay within 4 of n S(z)") {
  for (Digit z : {1, 2, 3, 5, 10}) {
    const BoundCheck c = check_constant_stream(z, 2000);
    CHECK(c.holds);
    CHECK(c.observed <= 4.0);
  }
}

TEST_CASE("prefix and substitution bounds") {
  const auto x = PartialQuotients::periodic({4, 1, 7}, {1});
  const auto y = PartialQuotients::periodic({4, 1, 7}, {50});
  CHECK(check_prefix_insensitivity(x, y, 2).holds);
  CHECK_THROWS_AS(check_prefix_insensitivity(x, y, 3), PatternError);
  const auto a = PartialQuotients::periodic({1}, {2, 3});
  const auto b = PartialQuotients::periodic({900}, {2, 3});
  const BoundCheck first = check_prefix_insensitivity(a, b, 100);
  CHECK(first.name == "first_digit");
  CHECK(first.observed < 8.0);
  CHECK_THROWS_AS(check_prefix_insensitivity(a, PartialQuotients::periodic({2}, {3, 3}), 10), PatternError);
  CHECK(check_append(PartialQuotients::golden(), Interval(1.0), Interval(rounding::kInf), 20).holds);
  CHECK(check_single_substitution(1, 7, 500, 2).holds);
}

TEST_CASE("all-ones minimality and the ratio band") {
  CHECK(check_all_ones_minimal(PartialQuotients::periodic({}, {1, 2}), 300).holds);
  CHECK(check_all_ones_minimal(PartialQuotients::golden(), 300).holds);
  CHECK(check_ratio_band(PartialQuotients::periodic({3}, {1, 4, 1, 5}), 1, 500).holds);
}

TEST_CASE("G_n grows with each digit") {
  const auto x = PartialQuotients::periodic({}, {2, 5, 1});
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto r = check_monotonicity(x, k, 30, Interval(2.0), 1.0);
    CHECK(r.sign != 0);
  }
  CHECK_THROWS_AS(check_monotonicity(x, 40, 30, Interval(2.0), 1.0), DomainError);
}

TEST_CASE("constructed digits hit the prescribed average") {
  const auto c = construct_alpha(QuadraticSurd(mpq_class(3, 10)), 20000);
  CHECK(c.mode == ConstructedAlpha::Mode::blocks);
  CHECK(c.spec.a == 1);
  CHECK(c.spec.b == 2);
  const double g = partial_sum_G(c.digits, 20000).value / 20000;
  CHECK(std::abs(g - 0.3) <= c.envelope(20000));

  const auto half = construct_alpha(QuadraticSurd(mpq_class(1, 2)), 100);
  CHECK(half.mode == ConstructedAlpha::Mode::constant);
  CHECK(half.digits[77] == 2);
  CHECK(construct_alpha(S_closed(mpq_class(1)), 10).digits[5] == 1);
  CHECK(construct_alpha(QuadraticSurd(mpq_class(1)), 10).mode == ConstructedAlpha::Mode::increasing);
  CHECK_THROWS_AS(construct_alpha(QuadraticSurd(mpq_class(1, 5)), 10), DomainError);
  CHECK_THROWS_AS(construct_alpha(QuadraticSurd(mpq_class(11, 10)), 10), DomainError);
}
