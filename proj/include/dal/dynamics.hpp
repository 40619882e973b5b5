#pragma once

// Gauss map T x = {1/x}, its natural extension T^(x, y) = ({1/x}, 1/([1/x] + y)),
// Birkhoff sums of f(x, y) = (1 - y)/(1 + x y) and the related quadratures.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dal/cf_core.hpp"
#include "dal/interval.hpp"

namespace dal {

/// Closed interval with exact rational endpoints.
struct RationalInterval {
  mpq_class lo;
  mpq_class hi;

  RationalInterval() = default;
  RationalInterval(const mpq_class& x) : lo(x), hi(x) {}  // NOLINT(google-explicit-constructor)
  RationalInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {}

  bool is_point() const { return lo == hi; }
  bool overlaps(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  Interval enclosure() const;
};

// {1/x} for x in [0,1); 0 maps to 0.
mpq_class gauss_step(const mpq_class& x);
// Image of an interval lying in one cylinder (1/(k+1), 1/k]. Throws InsufficientPrecision
// when the interval straddles a boundary 1/k or touches 0 without being {0}.
RationalInterval gauss_step(const RationalInterval& x);

struct OrbitPoint {
  std::size_t nu = 0;
  RationalInterval x;
  mpq_class y;
};

OrbitPoint natural_extension_step(const OrbitPoint& p);

// (T^nu x, (q_{nu-1} + y0 p_{nu-1}) / (q_nu + y0 p_nu)) for nu = 0..n, with T^nu x
// enclosed through tail_enclosure(nu + 1, depth).
std::vector<OrbitPoint> orbit_via_convergents(const PartialQuotients& pq, const mpq_class& y0, std::size_t n,
                                              std::size_t depth = 40);

// f(x, y) = (1 - y)/(1 + x y) evaluated in plain interval arithmetic.
Interval f_observable(const Interval& x, const Interval& y);

struct BirkhoffAccumulator {
  std::size_t n = 0;
  Interval sum_enclosure;
  MeasuredValue sum;
  MeasuredValue mean;
};

// Sum over nu = 1..n of f(T^nu(x, y0)).
BirkhoffAccumulator birkhoff_mean_f(const PartialQuotients& pq, const mpq_class& y0, std::size_t n,
                                    std::size_t depth = 40);

// Sum over nu = 1..n of |f(T^nu(x, y0)) - f(T^nu(x, 0))|.
Interval shift_deviation(const PartialQuotients& pq, const mpq_class& y0, std::size_t n, std::size_t depth = 40);

struct DensityIntegrals {
  Interval f_moment;       // int int (1 - y)/(1 + x y)^3 dx dy
  Interval normalization;  // int int dx dy / (ln 2 (1 + x y)^2)
  std::size_t resolution = 0;
};

// Both integrands are convex in each variable separately, so the tensor midpoint
// rule is a lower bound and the tensor trapezoid rule an upper bound.
DensityIntegrals gauss_density_integrals(std::size_t resolution = 4096);

// ln q_n / n.
MeasuredValue levy_ratio(const PartialQuotients& pq, std::size_t n);

// Header: nu,x_lo,x_hi,y_num,y_den,f_lo,f_hi.
void write_orbit(std::ostream& os, const std::vector<OrbitPoint>& orbit);

}  // namespace dal
