#include "dal/measure_fn.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "dal/exact.hpp"

namespace dal {

namespace {

Interval digit_box(Digit a) {
  const auto d = static_cast<double>(a);
  if (a <= (Digit{1} << 53)) return Interval(d);
  return {rounding::prev(d), rounding::next(d)};
}

bool at_most(const mpz_class& q, const mpq_class& t) {
  return mpz_class(q * t.get_den()) <= t.get_num();
}

struct Segment {
  std::size_t N = 0;
  mpz_class q;       // q_N
  mpz_class q_prev;  // q_{N-1}
};

Segment locate(const PartialQuotients& pq, const mpq_class& t) {
  if (t < 1) throw DomainError("t must be >= 1");
  ContinuantRecurrence rec;
  Segment seg{0, mpz_class(1), mpz_class(0)};
  for (std::size_t nu = 1;; ++nu) {
    if (!pq.readable(nu)) {
      if (pq.terminates()) return seg;
      throw NeedsMoreDigits("q_" + std::to_string(nu - 1) + " <= t and digit a_" + std::to_string(nu) +
                            " is past the certified horizon");
    }
    rec.push(pq[nu]);
    if (!at_most(rec.q(), t)) return seg;
    seg.N = nu;
    seg.q = rec.q();
    seg.q_prev = rec.q_prev();
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::size_t default_tail_depth() {
  if (const char* env = std::getenv("DAL_PRECISION_BITS")) {
    char* end = nullptr;
    const unsigned long bits = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && bits > 0) return bits + 2;
  }
  return 40;
}

std::size_t segment_index(const PartialQuotients& pq, const mpq_class& t) { return locate(pq, t).N; }

Interval summand_enclosure(const Interval& r, const Interval& a) {
  using namespace rounding;
  const double lo = div_down(sub_down(1.0, a.hi), add_up(1.0, mul_up(r.hi, a.hi)));
  const double hi = div_up(sub_up(1.0, a.lo), add_down(1.0, mul_down(r.lo, a.lo)));
  return {std::max(lo, 0.0), std::min(hi, 1.0)};
}

Interval scaled_psi_enclosure(const Interval& r, const Interval& a) {
  using namespace rounding;
  const double lo = div_down(r.lo, add_up(1.0, mul_up(r.lo, a.hi)));
  const double hi = div_up(r.hi, add_down(1.0, mul_down(r.hi, a.lo)));
  return {std::max(lo, 0.0), std::min(hi, 1.0)};
}

PsiValue psi_at(const PartialQuotients& pq, const mpq_class& t, std::size_t tail_depth) {
  const Segment seg = locate(pq, t);
  PsiValue out;
  out.nu = seg.N;
  out.q_nu = seg.q;
  const Interval r = reciprocal_tail(pq, seg.N + 1, tail_depth);
  const Interval a = clamp_to(enclose_ratio(seg.q_prev, seg.q), 0.0, 1.0);
  out.scaled = scaled_psi_enclosure(r, a);
  out.value = out.scaled / enclose(seg.q);
  return out;
}

SummandTrace summand_trace_real(const std::vector<Interval>& digits, const Interval& tail_recip) {
  const std::size_t n = digits.size();
  SummandTrace tr;
  tr.alpha_star.resize(n + 1);
  tr.recip.resize(n + 1);
  tr.S.assign(n + 1, Interval(0.0));
  tr.alpha_star[0] = Interval(0.0);
  for (std::size_t nu = 1; nu <= n; ++nu) {
    tr.alpha_star[nu] = clamp_to(reciprocal(digits[nu - 1] + tr.alpha_star[nu - 1]), 0.0, 1.0);
  }
  tr.recip[n] = clamp_to(tail_recip, 0.0, 1.0);
  for (std::size_t nu = n; nu-- > 0;) {
    tr.recip[nu] = clamp_to(reciprocal(digits[nu] + tr.recip[nu + 1]), 0.0, 1.0);
  }
  for (std::size_t nu = 1; nu <= n; ++nu) tr.S[nu] = summand_enclosure(tr.recip[nu], tr.alpha_star[nu]);
  return tr;
}

SummandTrace summand_trace(const PartialQuotients& pq, std::size_t n, std::size_t tail_depth) {
  std::vector<Interval> digits;
  digits.reserve(n);
  for (std::size_t nu = 1; nu <= n; ++nu) digits.push_back(digit_box(pq[nu]));
  return summand_trace_real(digits, reciprocal_tail(pq, n + 1, tail_depth));
}

Interval sum_summands(const SummandTrace& trace, std::size_t n) {
  Interval g(0.0);
  for (std::size_t nu = 1; nu <= n; ++nu) g += trace.S[nu];
  return g;
}

std::vector<Interval> partial_sum_trace(const SummandTrace& trace) {
  std::vector<Interval> g(trace.S.size(), Interval(0.0));
  for (std::size_t nu = 1; nu < trace.S.size(); ++nu) g[nu] = g[nu - 1] + trace.S[nu];
  return g;
}

MeasuredValue summand_S(const PartialQuotients& pq, std::size_t nu, std::size_t tail_depth) {
  if (nu == 0) throw DomainError("summand index starts at 1");
  ContinuantRecurrence rec;
  for (std::size_t k = 1; k <= nu; ++k) rec.push(pq[k]);
  const Interval a = clamp_to(enclose_ratio(rec.q_prev(), rec.q()), 0.0, 1.0);
  const Interval r = reciprocal_tail(pq, nu + 1, tail_depth);
  return MeasuredValue::from(summand_enclosure(r, a));
}

MeasuredValue partial_sum_G(const PartialQuotients& pq, std::size_t n, std::size_t tail_depth) {
  if (n == 0) return {0.0, 0.0};
  return MeasuredValue::from(sum_summands(summand_trace(pq, n, tail_depth), n));
}

IntegralBreakdown integral_I(const PartialQuotients& pq, const mpq_class& t, std::size_t tail_depth) {
  const Segment seg = locate(pq, t);
  const SummandTrace tr = summand_trace(pq, seg.N, tail_depth);
  IntegralBreakdown out;
  out.N = seg.N;
  out.G_enclosure = sum_summands(tr, seg.N);
  const mpq_class frac = (t - mpq_class(seg.q)) / mpq_class(seg.q);
  out.A_enclosure = enclose(frac) * scaled_psi_enclosure(tr.recip[seg.N], tr.alpha_star[seg.N]);
  out.total_enclosure = out.G_enclosure + out.A_enclosure;
  out.G_N = MeasuredValue::from(out.G_enclosure);
  out.A = MeasuredValue::from(out.A_enclosure);
  out.total = MeasuredValue::from(out.total_enclosure);
  return out;
}

void write_integral_trace(std::ostream& os, const PartialQuotients& pq, std::size_t n, std::size_t tail_depth) {
  const SummandTrace tr = summand_trace(pq, n, tail_depth);
  const auto g = partial_sum_trace(tr);
  os << "nu,q_nu,S_nu_lo,S_nu_hi,G_nu_lo,G_nu_hi\n";
  ContinuantRecurrence rec;
  for (std::size_t nu = 1; nu <= n; ++nu) {
    rec.push(pq[nu]);
    os << nu << ',' << rec.q().get_str() << ',' << num(tr.S[nu].lo) << ',' << num(tr.S[nu].hi) << ','
       << num(g[nu].lo) << ',' << num(g[nu].hi) << '\n';
  }
}

void write_psi_trace(std::ostream& os, const PartialQuotients& pq, const mpq_class& t_max, std::size_t tail_depth) {
  if (t_max < 1) throw DomainError("t must be >= 1");
  os << "nu,t_start,t_end,psi_lo,psi_hi\n";
  const std::size_t first = segment_index(pq, mpq_class(1));
  const std::size_t last = segment_index(pq, t_max);
  const double t_end_max = t_max.get_d();
  ContinuantRecurrence rec;
  for (std::size_t k = 1; k <= first; ++k) rec.push(pq[k]);
  for (std::size_t nu = first; nu <= last; ++nu) {
    if (nu > first) rec.push(pq[nu]);
    const mpz_class q = rec.q();
    if (nu > first && !(mpq_class(q) < t_max)) break;
    double t_end = t_end_max;
    if (pq.readable(nu + 1)) {
      const mpz_class q_next = pq[nu + 1] * q + rec.q_prev();
      if (mpq_class(q_next) < t_max) t_end = q_next.get_d();
    }
    const Interval r = reciprocal_tail(pq, nu + 1, tail_depth);
    const Interval a = clamp_to(enclose_ratio(rec.q_prev(), q), 0.0, 1.0);
    const Interval psi = scaled_psi_enclosure(r, a) / enclose(q);
    os << nu << ',' << num(q.get_d()) << ',' << num(t_end) << ',' << num(psi.lo) << ',' << num(psi.hi) << '\n';
  }
}

}  // namespace dal
