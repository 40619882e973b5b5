#include "dal/dynamics.hpp"

#include <cstdio>
#include <ostream>

#include "dal/errors.hpp"
#include "dal/exact.hpp"

namespace dal {

namespace {

// floor(1/x) for rational x > 0.
mpz_class reciprocal_floor(const mpq_class& x) {
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), x.get_den().get_mpz_t(), x.get_num().get_mpz_t());
  return k;
}

mpq_class fractional_reciprocal(const mpq_class& x, const mpz_class& k) {
  mpq_class r(x.get_den() - k * x.get_num(), x.get_num());
  r.canonicalize();
  return r;
}

// Enclosure of T^nu x = 1 / alpha_{nu+1}.
RationalInterval shifted_point(const PartialQuotients& pq, std::size_t nu, std::size_t depth) {
  if (pq.horizon() <= nu) {
    if (pq.terminates()) return mpq_class(0);
    return {mpq_class(0), mpq_class(1)};
  }
  const TailEnclosure t = tail_enclosure(pq, nu + 1, depth);
  return {1 / t.hi, 1 / t.lo};
}

mpq_class orbit_y(const ContinuantRecurrence& rec, const mpq_class& y0) {
  const mpz_class& a = y0.get_num();
  const mpz_class& b = y0.get_den();
  mpq_class y(b * rec.q_prev() + a * rec.p_prev(), b * rec.q() + a * rec.p());
  y.canonicalize();
  return y;
}

void require_unit(const mpq_class& y0) {
  if (sgn(y0) < 0 || y0 > 1) throw DomainError("y0 must lie in [0,1]");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Interval RationalInterval::enclosure() const { return {enclose(lo).lo, enclose(hi).hi}; }

mpq_class gauss_step(const mpq_class& x) {
  if (sgn(x) < 0 || x >= 1) throw DomainError("Gauss map is defined on [0,1)");
  if (sgn(x) == 0) return mpq_class(0);
  return fractional_reciprocal(x, reciprocal_floor(x));
}

RationalInterval gauss_step(const RationalInterval& x) {
  if (sgn(x.lo) < 0 || x.hi > 1 || x.lo > x.hi) throw DomainError("Gauss map enclosure must lie in [0,1]");
  if (x.is_point()) {
    if (x.lo == 1) throw DomainError("Gauss map is defined on [0,1)");
    return gauss_step(x.lo);
  }
  if (sgn(x.lo) == 0) throw InsufficientPrecision("enclosure touches 0; the next digit is unbounded");
  const mpz_class k = reciprocal_floor(x.hi);
  if (reciprocal_floor(x.lo) != k) {
    throw InsufficientPrecision("enclosure straddles a cylinder boundary 1/k; retry with more bits");
  }
  // On (1/(k+1), 1/k] the map is decreasing.
  return {fractional_reciprocal(x.hi, k), fractional_reciprocal(x.lo, k)};
}

OrbitPoint natural_extension_step(const OrbitPoint& p) {
  OrbitPoint out;
  out.nu = p.nu + 1;
  if (p.x.is_point() && sgn(p.x.lo) == 0) {
    out.x = p.x;
    out.y = p.y;
    return out;
  }
  if (sgn(p.x.lo) <= 0) throw InsufficientPrecision("enclosure touches 0; the next digit is unbounded");
  const mpz_class k = reciprocal_floor(p.x.hi);
  out.x = gauss_step(p.x);
  out.y = 1 / (mpq_class(k) + p.y);
  return out;
}

std::vector<OrbitPoint> orbit_via_convergents(const PartialQuotients& pq, const mpq_class& y0, std::size_t n,
                                              std::size_t depth) {
  require_unit(y0);
  std::vector<OrbitPoint> out;
  out.reserve(n + 1);
  ContinuantRecurrence rec;
  out.push_back({0, shifted_point(pq, 0, depth), y0});
  for (std::size_t nu = 1; nu <= n; ++nu) {
    rec.push(pq[nu]);
    out.push_back({nu, shifted_point(pq, nu, depth), orbit_y(rec, y0)});
  }
  return out;
}

Interval f_observable(const Interval& x, const Interval& y) {
  return (Interval(1.0) - y) / (Interval(1.0) + x * y);
}

BirkhoffAccumulator birkhoff_mean_f(const PartialQuotients& pq, const mpq_class& y0, std::size_t n,
                                    std::size_t depth) {
  if (n == 0) throw DomainError("Birkhoff mean needs n >= 1");
  require_unit(y0);
  ContinuantRecurrence rec;
  Interval sum(0.0);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    rec.push(pq[nu]);
    const Interval x = shifted_point(pq, nu, depth).enclosure();
    const Interval y = enclose(orbit_y(rec, y0));
    sum += clamp_to(f_observable(x, y), 0.0, 1.0);
  }
  BirkhoffAccumulator acc;
  acc.n = n;
  acc.sum_enclosure = sum;
  acc.sum = MeasuredValue::from(sum);
  acc.mean = MeasuredValue::from(sum / Interval(static_cast<double>(n)));
  return acc;
}

Interval shift_deviation(const PartialQuotients& pq, const mpq_class& y0, std::size_t n, std::size_t depth) {
  require_unit(y0);
  ContinuantRecurrence rec;
  Interval sum(0.0);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    rec.push(pq[nu]);
    const Interval x = shifted_point(pq, nu, depth).enclosure();
    const Interval shifted = f_observable(x, enclose(orbit_y(rec, y0)));
    const Interval base = f_observable(x, enclose_ratio(rec.q_prev(), rec.q()));
    sum += abs(shifted - base);
  }
  return sum;
}

namespace {

Interval moment_integrand(double x, double y) {
  const Interval d = Interval(1.0) + Interval(x) * Interval(y);
  return (Interval(1.0) - Interval(y)) / (d * d * d);
}

Interval density_integrand(double x, double y) {
  const Interval d = Interval(1.0) + Interval(x) * Interval(y);
  return reciprocal(d * d);
}

// Lower bound: tensor midpoint. Upper bound: tensor trapezoid.
template <class F>
Interval convex_bracket(F f, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);  // exact: n is a power of two
  Interval lower(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h;
    Interval row(0.0);
    for (std::size_t j = 0; j < n; ++j) row += f(x, (static_cast<double>(j) + 0.5) * h);
    lower += row;
  }
  Interval upper(0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) * h;
    const double wx = (i == 0 || i == n) ? 0.5 : 1.0;
    Interval row(0.0);
    for (std::size_t j = 0; j <= n; ++j) {
      const double wy = (j == 0 || j == n) ? 0.5 : 1.0;
      row += Interval(wy) * f(x, static_cast<double>(j) * h);
    }
    upper += Interval(wx) * row;
  }
  const Interval cell = Interval(h) * Interval(h);
  return {(lower * cell).lo, (upper * cell).hi};
}

}  // namespace

DensityIntegrals gauss_density_integrals(std::size_t resolution) {
  if (resolution < 2) throw DomainError("quadrature resolution must be >= 2");
  if ((resolution & (resolution - 1)) != 0) throw DomainError("quadrature resolution must be a power of two");
  DensityIntegrals out;
  out.resolution = resolution;
  out.f_moment = convex_bracket(moment_integrand, resolution);
  out.normalization = convex_bracket(density_integrand, resolution) / constants::ln2();
  return out;
}

MeasuredValue levy_ratio(const PartialQuotients& pq, std::size_t n) {
  if (n == 0) throw DomainError("Levy ratio needs n >= 1");
  ContinuantRecurrence rec;
  for (std::size_t nu = 1; nu <= n; ++nu) rec.push(pq[nu]);
  return MeasuredValue::from(enclose_log(rec.q()) / Interval(static_cast<double>(n)));
}

void write_orbit(std::ostream& os, const std::vector<OrbitPoint>& orbit) {
  os << "nu,x_lo,x_hi,y_num,y_den,f_lo,f_hi\n";
  for (const auto& p : orbit) {
    const Interval x = p.x.enclosure();
    const Interval f = clamp_to(f_observable(x, enclose(p.y)), 0.0, 1.0);
    os << p.nu << ',' << num(x.lo) << ',' << num(x.hi) << ',' << p.y.get_num().get_str() << ','
       << p.y.get_den().get_str() << ',' << num(f.lo) << ',' << num(f.hi) << '\n';
  }
}

}  // namespace dal
