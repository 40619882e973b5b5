#include "dal/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dal/errors.hpp"
#include "dal/measure_fn.hpp"

namespace dal {

namespace {

Interval digit_box(Digit a) {
  const auto d = static_cast<double>(a);
  if (a <= (Digit{1} << 53)) return Interval(d);
  return {rounding::prev(d), rounding::next(d)};
}

std::vector<Interval> digit_boxes(const PartialQuotients& pq, std::size_t n) {
  std::vector<Interval> out;
  out.reserve(n);
  for (std::size_t nu = 1; nu <= n; ++nu) out.push_back(digit_box(pq[nu]));
  return out;
}

Interval tail_reciprocal(const Interval& tail) {
  if (tail.lo < 1) throw DomainError("a tail alpha_k must be >= 1");
  return clamp_to(reciprocal(tail), 0.0, 1.0);
}

// Readable digits used to pin down G_n: n+1 shared ones plus a tail window.
std::size_t window_end(const PartialQuotients& pq, std::size_t n) {
  const std::size_t want = n + 1 + default_tail_depth();
  return std::min(want, pq.horizon());
}

double s_point_lo(double z) {
  const Interval zi(z);
  return (Interval(0.5) + (zi - Interval(2.0)) / (Interval(2.0) * sqrt(zi * zi + Interval(4.0)))).lo;
}

double s_point_hi(double z) {
  const Interval zi(z);
  return (Interval(0.5) + (zi - Interval(2.0)) / (Interval(2.0) * sqrt(zi * zi + Interval(4.0)))).hi;
}

double s_double(double z) { return 0.5 + (z - 2) / (2 * std::sqrt(z * z + 4)); }

std::string describe(const PartialQuotients& pq) { return pq.label() + " [" + pq.format(12) + "]"; }

}  // namespace

QuadraticSurd constant_tail_value(const mpq_class& z) {
  if (sgn(z) <= 0) throw DomainError("constant digit must be positive");
  const mpz_class& p = z.get_num();
  const mpz_class& q = z.get_den();
  return {-p, 1, p * p + 4 * q * q, 2 * q};
}

QuadraticSurd S_closed(const mpq_class& z) {
  if (z < 1) throw DomainError("S(z) needs z >= 1");
  const QuadraticSurd alpha = constant_tail_value(z);
  const QuadraticSurd zs(z);
  const QuadraticSurd one(mpq_class(1));
  return (one - alpha) * (zs + alpha) / (zs + alpha + alpha);
}

Interval S_closed(const Interval& z) {
  if (!(z.lo >= 1)) throw DomainError("S(z) needs z >= 1");
  const double lo = std::isinf(z.lo) ? 1.0 : s_point_lo(z.lo);
  const double hi = std::isinf(z.hi) ? 1.0 : s_point_hi(z.hi);
  return {lo, std::min(hi, 1.0)};
}

BoundCheck check_constant_stream(Digit z, std::size_t n) {
  if (z < 1) throw InvalidDigit("constant digit must be >= 1");
  const std::vector<Interval> digits(n, digit_box(z));
  const SummandTrace tr = summand_trace_real(digits, constant_tail_value(mpq_class(z)).enclosure());
  const Interval sz = S_closed(mpq_class(z)).enclosure();
  BoundCheck out{"constant_stream", 0.0, 4.0, false, true, ""};
  Interval g(0.0);
  std::size_t worst = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    g += tr.S[m];
    const double dev = abs(g - sz * Interval(static_cast<double>(m))).hi;
    if (dev > out.observed) {
      out.observed = dev;
      worst = m;
    }
  }
  out.holds = out.observed <= out.bound;
  out.witness = "z=" + std::to_string(z) + " n=" + std::to_string(n) + " m=" + std::to_string(worst);
  return out;
}

BoundCheck check_prefix_insensitivity(const PartialQuotients& x, const PartialQuotients& y, std::size_t n) {
  bool shared_prefix = true;
  for (std::size_t nu = 1; nu <= n + 1 && shared_prefix; ++nu) {
    shared_prefix = x.readable(nu) && y.readable(nu) && x[nu] == y[nu];
  }
  bool shared_rest = false;
  if (!shared_prefix) {
    shared_rest = x.horizon() == y.horizon();
    const std::size_t last = std::min(n + 1 + default_tail_depth(), x.horizon());
    for (std::size_t nu = 2; nu <= last && shared_rest; ++nu) shared_rest = x[nu] == y[nu];
  }
  if (!shared_prefix && !shared_rest) {
    throw PatternError("streams " + describe(x) + " and " + describe(y) +
                       " neither share their first n+1 digits nor differ only in the first digit");
  }
  const Interval gx = sum_summands(summand_trace(x, n), n);
  const Interval gy = sum_summands(summand_trace(y, n), n);
  BoundCheck out{shared_prefix ? "shared_prefix" : "first_digit", abs(gx - gy).hi, shared_prefix ? 1.0 : 8.0, true, true, ""};
  out.holds = out.observed < out.bound;
  out.witness = "x=" + describe(x) + " y=" + describe(y) + " n=" + std::to_string(n);
  return out;
}

BoundCheck check_append(const PartialQuotients& alpha, const Interval& x, const Interval& y, std::size_t n) {
  if (n == 0) throw DomainError("check_append needs n >= 1");
  std::vector<Interval> digits = digit_boxes(alpha, n);
  const Interval g_n = sum_summands(summand_trace_real(digits, tail_reciprocal(y)), n);
  digits.pop_back();
  const Interval g_prev = sum_summands(summand_trace_real(digits, tail_reciprocal(x)), n - 1);
  BoundCheck out{"append_digit", abs(g_prev - g_n).hi, 3.0, true, true, ""};
  out.holds = out.observed < out.bound;
  std::ostringstream w;
  w << "alpha=" << describe(alpha) << " x=" << x << " y=" << y << " n=" << n;
  out.witness = w.str();
  return out;
}

BoundCheck check_single_substitution(Digit x1, Digit z, std::size_t n, Digit w) {
  std::vector<Digit> preamble(n + 1, z);
  preamble[0] = x1;
  const auto pq = PartialQuotients::periodic(std::move(preamble), {w});
  const SummandTrace tr = summand_trace(pq, n);
  const Interval sz = S_closed(mpq_class(z)).enclosure();
  BoundCheck out{"single_substitution", 0.0, 13.0, true, true, ""};
  Interval g(0.0);
  for (std::size_t m = 1; m <= n; ++m) {
    g += tr.S[m];
    out.observed = std::max(out.observed, abs(g - sz * Interval(static_cast<double>(m))).hi);
  }
  out.holds = out.observed < out.bound;
  out.witness = "x1=" + std::to_string(x1) + " z=" + std::to_string(z) + " n=" + std::to_string(n) +
                " w=" + std::to_string(w);
  return out;
}

BoundCheck check_all_ones_minimal(const PartialQuotients& x, std::size_t n) {
  const std::size_t k = window_end(x, n);
  if (k < n + 1) (void)x[n + 1];  // throws NeedsMoreDigits
  std::vector<Interval> digits = digit_boxes(x, k);
  const Interval tail = reciprocal_tail(x, k + 1, default_tail_depth());
  const Interval gx = sum_summands(summand_trace_real(digits, tail), n);
  std::fill(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n + 1), Interval(1.0));
  const Interval g1 = sum_summands(summand_trace_real(digits, tail), n);
  BoundCheck out{"all_ones_minimal", (g1 - gx).lo, 0.0, false, true, ""};
  out.holds = out.observed <= out.bound;
  out.witness = "x=" + describe(x) + " n=" + std::to_string(n);
  return out;
}

BoundCheck check_ratio_band(const PartialQuotients& x, std::size_t n0, std::size_t n1) {
  const SummandTrace tr = summand_trace(x, n1);
  const Interval s1 = S_closed(mpq_class(1)).enclosure();
  BoundCheck out{"ratio_band", -std::numeric_limits<double>::infinity(), 5.0, true, true, ""};
  bool below_one = true;
  Interval g(0.0);
  std::size_t worst = 0;
  for (std::size_t n = 1; n <= n1; ++n) {
    g += tr.S[n];
    if (n < std::max<std::size_t>(n0, 1)) continue;
    const Interval nn(static_cast<double>(n));
    const double gap = (s1 * nn - g).hi;
    if (gap > out.observed) {
      out.observed = gap;
      worst = n;
    }
    if (!(g.hi < nn.lo)) below_one = false;
  }
  out.holds = out.observed < out.bound && below_one;
  out.witness = "x=" + describe(x) + " n=" + std::to_string(worst) + (below_one ? "" : " (G_n/n >= 1 seen)");
  return out;
}

MonotonicityResult check_monotonicity(const PartialQuotients& x, std::size_t k, std::size_t n, const Interval& v,
                                      const Interval& delta) {
  if (k == 0 || k > n + 1) {
    throw DomainError("coordinate k=" + std::to_string(k) + " is outside 1..n+1 with n=" + std::to_string(n));
  }
  if (!(delta.lo > 0)) throw DomainError("delta must be positive");
  if (v.lo < 1) throw DomainError("a partial quotient must be >= 1");
  const std::size_t last = window_end(x, n);
  if (last < n + 1) (void)x[n + 1];
  std::vector<Interval> digits = digit_boxes(x, last);
  const Interval tail = reciprocal_tail(x, last + 1, default_tail_depth());
  digits[k - 1] = v;
  const Interval before = sum_summands(summand_trace_real(digits, tail), n);
  digits[k - 1] = v + delta;
  const Interval after = sum_summands(summand_trace_real(digits, tail), n);
  MonotonicityResult out{0, after - before};
  if (out.difference.lo > 0) {
    out.sign = 1;
  } else if (out.difference.hi < 0) {
    out.sign = -1;
  } else {
    std::ostringstream msg;
    msg << "difference " << out.difference << " not resolved; increase delta or precision";
    throw InsufficientPrecision(msg.str());
  }
  return out;
}

double ConstructedAlpha::envelope(std::size_t n) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (mode) {
    case Mode::constant:
      return n ? 4.0 / static_cast<double>(n) : inf;
    case Mode::increasing:
      return inf;
    case Mode::blocks:
      break;
  }
  if (n <= spec.M) return inf;
  return static_cast<double>(spec.M + 3) / static_cast<double>(n - spec.M);
}

ConstructedAlpha construct_alpha(const QuadraticSurd& d, std::size_t n_digits) {
  const QuadraticSurd s1 = S_closed(mpq_class(1));
  const QuadraticSurd one(mpq_class(1));
  if (d < s1 || d > one) {
    throw DomainError("d = " + d.str() + " is outside [S(1), 1] = [" + s1.str() + ", 1]");
  }
  ConstructedAlpha out;
  out.d = d;
  const std::string label = "construct:" + d.str();
  if (d == one) {
    out.mode = ConstructedAlpha::Mode::increasing;
    out.digits = PartialQuotients::generated([](std::size_t nu) { return static_cast<Digit>(nu); }, label);
    return out;
  }
  if (d == s1) {
    out.mode = ConstructedAlpha::Mode::constant;
    out.spec.a = out.spec.b = 1;
    out.digits = PartialQuotients::periodic({}, {1});
    return out;
  }

  // Largest a with S(a) < d: double search, then exact correction.
  const double dd = d.to_double();
  double hi = 2;
  while (s_double(hi) < dd && hi < 0x1p62) hi *= 2;
  double lo = 1;
  while (hi - lo > 1) {
    const double mid = std::floor((lo + hi) / 2);
    (s_double(mid) < dd ? lo : hi) = mid;
  }
  auto a = static_cast<Digit>(lo);
  while (a > 1 && S_closed(mpq_class(mpz_class(a))) >= d) --a;
  while (S_closed(mpq_class(mpz_class(a + 1))) < d) ++a;
  if (S_closed(mpq_class(mpz_class(a + 1))) == d) {
    out.mode = ConstructedAlpha::Mode::constant;
    out.spec.a = out.spec.b = a + 1;
    out.digits = PartialQuotients::periodic({}, {a + 1});
    return out;
  }
  const Digit b = a + 1;
  out.spec.a = a;
  out.spec.b = b;

  // Extend each block until G_n(alpha, x) / n is on the far side of d for every
  // continuation x. S_nu for nu <= n - window is settled once the backward sweep
  // from an unknown tail has contracted to rounding level.
  constexpr std::size_t window = 64;
  const Interval d_box = d.enclosure();
  const std::size_t target = n_digits + window;
  std::vector<Digit> digits;
  std::vector<Interval> alpha_star{Interval(0.0)};
  digits.reserve(target);
  alpha_star.reserve(target + 1);
  Interval settled(0.0);
  std::size_t settled_count = 0;
  Digit current = a;
  std::size_t run = 0;
  for (std::size_t n = 1; n <= target; ++n) {
    digits.push_back(current);
    alpha_star.push_back(clamp_to(reciprocal(digit_box(current) + alpha_star.back()), 0.0, 1.0));
    ++run;
    Interval r = Interval::unit();
    Interval open_sum(0.0);
    Interval oldest(0.0);
    for (std::size_t nu = n; nu > settled_count; --nu) {
      oldest = summand_enclosure(r, alpha_star[nu]);
      open_sum += oldest;
      r = clamp_to(reciprocal(digit_box(digits[nu - 1]) + r), 0.0, 1.0);
    }
    const Interval hull = settled + open_sum;
    if (n - settled_count > window) {
      settled += oldest;
      ++settled_count;
    }
    const Interval dn = d_box * Interval(static_cast<double>(n));
    const bool crossed = current == a ? certainly_less(hull, dn) : certainly_greater(hull, dn);
    if (crossed) {
      out.spec.block_lengths.push_back(run);
      out.spec.W.push_back(n);
      out.spec.M = std::max(out.spec.M, run);
      run = 0;
      current = current == a ? b : a;
    }
  }
  out.spec.M = std::max(out.spec.M, run);
  out.digits = PartialQuotients::prefix(std::move(digits), label);
  return out;
}

std::string to_json(const BlockSpec& spec) {
  nlohmann::json j;
  j["a"] = spec.a;
  j["b"] = spec.b;
  j["block_lengths"] = spec.block_lengths;
  j["W"] = spec.W;
  j["M"] = spec.M;
  return j.dump();
}

}  // namespace dal
