#include <cmath>

#include <doctest.h>

#include "dal/dynamics.hpp"
#include "dal/errors.hpp"
#include "dal/exact.hpp"
#include "dal/measure_fn.hpp"

using namespace dal;

TEST_CASE("Gauss map on rationals and single-cylinder intervals") {
  CHECK(gauss_step(mpq_class(3, 10)) == mpq_class(1, 3));
  CHECK(gauss_step(mpq_class(0)) == 0);
  const RationalInterval x{mpq_class(3, 10), mpq_class(31, 100)};
  const RationalInterval y = gauss_step(x);
  CHECK(y.lo == mpq_class(7, 31));
  CHECK(y.hi == mpq_class(1, 3));
  CHECK_THROWS_AS(gauss_step(RationalInterval{mpq_class(1, 3), mpq_class(2, 3)}), InsufficientPrecision);
}

TEST_CASE("natural extension tracks q_{nu-1}/q_nu") {
  const auto pq = PartialQuotients::periodic({5, 2}, {1, 3});
  const auto orbit = orbit_via_convergents(pq, mpq_class(0), 30, 80);
  const auto pairs = convergents(pq, 30);
  for (std::size_t nu = 0; nu <= 30; ++nu) {
    CHECK(orbit[nu].y == mpq_class(pairs[nu].q, pairs[nu + 1].q));
  }
  OrbitPoint p = orbit_via_convergents(pq, mpq_class(0), 0, 120).front();
  for (std::size_t nu = 1; nu <= 30; ++nu) {
    p = natural_extension_step(p);
    CHECK(p.x.overlaps(orbit[nu].x));
    CHECK(p.y == orbit[nu].y);
  }
}

TEST_CASE("rational points reach 0 and stay there") {
  OrbitPoint p{0, RationalInterval{mpq_class(2, 7), mpq_class(2, 7)}, mpq_class(1, 2)};
  for (int i = 0; i < 3; ++i) p = natural_extension_step(p);  // 2/7 -> 1/2 -> 0
  CHECK(p.x.lo == 0);
  const mpq_class y = p.y;
  p = natural_extension_step(p);
  CHECK(p.y == y);
}

TEST_CASE("Birkhoff sum from y = 0 reproduces G_n") {
  const auto pq = PartialQuotients::periodic({}, {1, 2, 7});
  const auto acc = birkhoff_mean_f(pq, mpq_class(0), 500);
  const Interval g = sum_summands(summand_trace(pq, 500, 40), 500);
  CHECK(acc.sum_enclosure.overlaps(g));
  CHECK(acc.sum.value == doctest::Approx(g.mid()).epsilon(1e-12));
}

TEST_CASE("changing y0 moves the Birkhoff sum by less than 4") {
  const auto pq = PartialQuotients::periodic({}, {1, 2, 7});
  for (const char* y0 : {"1/2", "1", "1/1000"}) {
    const Interval d = shift_deviation(pq, mpq_class(y0), 500);
    CHECK(d.hi < 4.0);
  }
}

TEST_CASE("f observable") {
  CHECK(f_observable(Interval(0.5), Interval(0.0)).contains(1.0));
  CHECK(f_observable(Interval(0.5), Interval(1.0)).contains(0.0));
}

TEST_CASE("quadrature brackets the invariant-density integrals") {
  const DensityIntegrals r = gauss_density_integrals(256);
  const Interval half_ln2 = constants::ln2() / Interval(2.0);
  CHECK(r.f_moment.contains(half_ln2));
  CHECK(r.normalization.contains(1.0));
  CHECK(r.f_moment.width() < 1e-4);
  CHECK_THROWS_AS(gauss_density_integrals(300), DomainError);
}

TEST_CASE("Levy ratio of the golden ratio is ln phi") {
  const MeasuredValue v = levy_ratio(PartialQuotients::golden(), 5000);
  CHECK(v.value == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-3));
}
