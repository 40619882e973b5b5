#include "dal/exact.hpp"

#include <limits>

namespace dal {

ScaledEnclosure scaled_enclosure(const mpz_class& z) {
  if (sgn(z) < 0) throw std::domain_error("scaled_enclosure expects a nonnegative integer");
  if (sgn(z) == 0) return {Interval(0.0), 0};
  long exp = 0;
  // mpz_get_d_2exp truncates, so the true mantissa is in [d, d + 2^-53).
  const double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53) return {Interval(d), exp};
  return {Interval(d, rounding::next(d)), exp};
}

namespace {

double scale_down(double m, long e) {
  if (e > std::numeric_limits<int>::max()) return std::numeric_limits<double>::max();
  if (e < std::numeric_limits<int>::min()) return 0.0;
  const double r = std::ldexp(m, static_cast<int>(e));
  if (std::isinf(r)) return std::numeric_limits<double>::max();
  // ldexp is exact unless the result is subnormal; step down once to stay safe.
  if (r != 0 && std::fabs(r) < std::numeric_limits<double>::min()) return rounding::prev(r);
  return r;
}

double scale_up(double m, long e) {
  if (e > std::numeric_limits<int>::max()) return rounding::kInf;
  if (e < std::numeric_limits<int>::min()) return m > 0 ? std::numeric_limits<double>::denorm_min() : 0.0;
  const double r = std::ldexp(m, static_cast<int>(e));
  if (r == 0 && m > 0) return std::numeric_limits<double>::denorm_min();
  if (r != 0 && std::fabs(r) < std::numeric_limits<double>::min()) return rounding::next(r);
  return r;
}

Interval scale(const Interval& m, long e) { return {scale_down(m.lo, e), scale_up(m.hi, e)}; }

}  // namespace

Interval enclose(const mpz_class& z) {
  if (sgn(z) < 0) return -enclose(mpz_class(-z));
  const auto s = scaled_enclosure(z);
  return scale(s.mantissa, s.exponent);
}

Interval enclose_ratio(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw std::domain_error("enclose_ratio: zero denominator");
  if (sgn(den) < 0) return enclose_ratio(mpz_class(-num), mpz_class(-den));
  if (sgn(num) < 0) return -enclose_ratio(mpz_class(-num), den);
  if (sgn(num) == 0) return Interval(0.0);
  const auto n = scaled_enclosure(num);
  const auto d = scaled_enclosure(den);
  return scale(n.mantissa / d.mantissa, n.exponent - d.exponent);
}

Interval enclose(const mpq_class& q) {
  return enclose_ratio(q.get_num(), q.get_den());
}

Interval enclose_log(const mpz_class& z) {
  if (sgn(z) <= 0) throw std::domain_error("enclose_log expects a positive integer");
  if (z == 1) return Interval(0.0);
  const auto s = scaled_enclosure(z);
  return log(s.mantissa) + Interval(static_cast<double>(s.exponent)) * constants::ln2();
}

mpq_class exact(double x) { return mpq_class(x); }

bool encloses(const Interval& a, const mpq_class& q) {
  if (std::isfinite(a.lo) && exact(a.lo) > q) return false;
  if (std::isfinite(a.hi) && exact(a.hi) < q) return false;
  if (a.lo == rounding::kInf || a.hi == -rounding::kInf) return false;
  return true;
}

std::string to_string(const mpz_class& z) { return z.get_str(); }
std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace dal
