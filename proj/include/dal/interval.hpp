#pragma once

// Closed intervals of doubles with outward rounding.
//
// Every operation returns an interval that contains the exact real result for
// every choice of operands inside the input intervals. Directed rounding is
// obtained from error-free transforms (TwoSum, FMA residuals) under the default
// round-to-nearest mode, so no rounding-mode switches are needed and exact
// operations stay exact (1/(1+0) is the point interval [1,1]).

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dal {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude FMA residuals may be inexact; fall back to a plain nudge.
inline constexpr double kTiny = 0x1p-960;

inline double prev(double x) { return std::nextafter(x, -kInf); }
inline double next(double x) { return std::nextafter(x, kInf); }

inline double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? prev(s) : s;
}

inline double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::fabs(p) < kTiny) return prev(p);
  return std::fma(a, b, -p) < 0 ? prev(p) : p;
}

inline double mul_up(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::fabs(p) < kTiny) return next(p);
  return std::fma(a, b, -p) > 0 ? next(p) : p;
}

// Sign of (a/b - fl(a/b)), i.e. which side of the rounded quotient the exact one lies.
inline int quotient_residual_sign(double a, double b, double q) {
  const double r = std::fma(-q, b, a);
  if (r == 0) return 0;
  return ((r < 0) == (b < 0)) ? 1 : -1;
}

inline double div_down(double a, double b) {
  const double q = a / b;
  if (a == 0 || std::isinf(b) || !std::isfinite(q)) return q;
  if (q == 0) return ((a < 0) != (b < 0)) ? -std::numeric_limits<double>::denorm_min() : 0.0;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return prev(q);
  return quotient_residual_sign(a, b, q) < 0 ? prev(q) : q;
}

inline double div_up(double a, double b) {
  const double q = a / b;
  if (a == 0 || std::isinf(b) || !std::isfinite(q)) return q;
  if (q == 0) return ((a < 0) != (b < 0)) ? 0.0 : std::numeric_limits<double>::denorm_min();
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next(q);
  return quotient_residual_sign(a, b, q) > 0 ? next(q) : q;
}

inline double sqrt_down(double a) {
  const double s = std::sqrt(a);
  if (s == 0 || !std::isfinite(s)) return s;
  return std::fma(s, s, -a) > 0 ? prev(s) : s;
}

inline double sqrt_up(double a) {
  const double s = std::sqrt(a);
  if (s == 0 || !std::isfinite(s)) return s;
  return std::fma(s, s, -a) < 0 ? next(s) : s;
}

}  // namespace rounding

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT(google-explicit-constructor)
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  static constexpr Interval unit() { return {0.0, 1.0}; }

  double width() const { return rounding::sub_up(hi, lo); }
  double mid() const { return lo + (hi - lo) / 2; }
  // Largest |x| over the interval.
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  // Smallest |x| over the interval.
  double mig() const {
    if (lo <= 0 && hi >= 0) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }
  bool is_point() const { return lo == hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) throw std::domain_error("empty interval intersection");
  return r;
}

// Clamp to a range that is known a priori to contain the exact value.
inline Interval clamp_to(const Interval& a, double lo, double hi) {
  return {std::clamp(a.lo, lo, hi), std::clamp(a.hi, lo, hi)};
}

// Certified comparisons: true only when every point of a relates to every point of b.
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool certainly_greater(const Interval& a, const Interval& b) { return a.lo > b.hi; }

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
  return {rounding::add_down(a.lo, b.lo), rounding::add_up(a.hi, b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return {rounding::sub_down(a.lo, b.hi), rounding::sub_up(a.hi, b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (a.lo >= 0 && b.lo >= 0) return {mul_down(a.lo, b.lo), mul_up(a.hi, b.hi)};
  const double c[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : c) {
    lo = std::min(lo, mul_down(p[0], p[1]));
    hi = std::max(hi, mul_up(p[0], p[1]));
  }
  return {lo, hi};
}

inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  if (a.lo >= 0 && b.lo > 0) return {div_down(a.lo, b.hi), div_up(a.hi, b.lo)};
  const double c[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : c) {
    lo = std::min(lo, div_down(p[0], p[1]));
    hi = std::max(hi, div_up(p[0], p[1]));
  }
  return {lo, hi};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }
inline Interval& operator/=(Interval& a, const Interval& b) { return a = a / b; }

inline Interval reciprocal(const Interval& a) { return Interval(1.0) / a; }

inline Interval sqrt(const Interval& a) {
  if (a.lo < 0) throw std::domain_error("sqrt of an interval with negative part");
  return {rounding::sqrt_down(a.lo), rounding::sqrt_up(a.hi)};
}

inline Interval abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}

// glibc's log is accurate to well under one ulp; two ulps of slack on each side
// keep the enclosure valid without relying on correct rounding.
inline Interval log(const Interval& a) {
  if (a.lo <= 0) throw std::domain_error("log of an interval touching zero");
  using rounding::next;
  using rounding::prev;
  return {prev(prev(std::log(a.lo))), next(next(std::log(a.hi)))};
}

namespace constants {
// The literals are the correctly rounded doubles; one ulp either side encloses the real.
inline Interval ln2() { return {rounding::prev(0x1.62e42fefa39efp-1), rounding::next(0x1.62e42fefa39efp-1)}; }
inline Interval pi() { return {rounding::prev(0x1.921fb54442d18p+1), rounding::next(0x1.921fb54442d18p+1)}; }
}  // namespace constants

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
  return os << '[' << a.lo << ", " << a.hi << ']';
}

/// A number together with a rigorous absolute error bound: the true value lies
/// in [value - err, value + err].
struct MeasuredValue {
  double value = 0.0;
  double err = 0.0;

  static MeasuredValue from(const Interval& a) {
    if (a.is_point()) return {a.lo, 0.0};
    const double v = a.mid();
    return {v, std::max(rounding::sub_up(a.hi, v), rounding::sub_up(v, a.lo))};
  }

  Interval enclosure() const { return {rounding::sub_down(value, err), rounding::add_up(value, err)}; }
  bool contains(double x) const { return enclosure().contains(x); }
};

inline std::ostream& operator<<(std::ostream& os, const MeasuredValue& m) {
  return os << m.value << " +/- " << m.err;
}

}  // namespace dal
