#pragma once

// psi_alpha(t), the segment summands S_nu, partial sums G_N and the integral
// I_alpha(t) = G_N + A_{N+1}, all as certified enclosures.
//
// Notation: r_nu = 1/alpha_{nu+1} in [0,1] and alpha*_nu = q_{nu-1}/q_nu. Then
//   S_nu        = (1 - alpha*_nu) / (1 + r_nu alpha*_nu)
//   q_nu psi    = r_nu / (1 + r_nu alpha*_nu)
// and both are monotone in each argument, which gives tight interval bounds.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dal/cf_core.hpp"
#include "dal/interval.hpp"

namespace dal {

// 40 unless DAL_PRECISION_BITS is set, in which case bits + 2.
std::size_t default_tail_depth();

// Largest N with q_N <= t. For a terminating stream N stops at the last digit.
std::size_t segment_index(const PartialQuotients& pq, const mpq_class& t);

struct PsiValue {
  std::size_t nu = 0;
  mpz_class q_nu;
  Interval scaled;  // q_nu * psi
  Interval value;   // psi = ||q_nu alpha||
};

PsiValue psi_at(const PartialQuotients& pq, const mpq_class& t, std::size_t tail_depth = default_tail_depth());

// (1 - a) / (1 + r a) over r in [0,1], a in [0,1].
Interval summand_enclosure(const Interval& r, const Interval& alpha_star);
// r / (1 + r a) over the same box.
Interval scaled_psi_enclosure(const Interval& r, const Interval& alpha_star);

/// Per-index data for nu = 0..n: alpha_star[nu], recip[nu] = 1/alpha_{nu+1}, and
/// S[nu] for nu >= 1 (S[0] is unused and set to 0).
struct SummandTrace {
  std::vector<Interval> alpha_star;
  std::vector<Interval> recip;
  std::vector<Interval> S;

  std::size_t n() const { return S.empty() ? 0 : S.size() - 1; }
};

SummandTrace summand_trace(const PartialQuotients& pq, std::size_t n, std::size_t tail_depth = default_tail_depth());

// Same quantities for real partial quotients x_1..x_n (each >= 1) followed by a
// remainder with 1/alpha_{n+1} in tail_recip. This is G_n(alpha, x) with x = 1/tail_recip.
SummandTrace summand_trace_real(const std::vector<Interval>& digits, const Interval& tail_recip);

// Sum of S_1..S_n from a trace (n <= trace.n()).
Interval sum_summands(const SummandTrace& trace, std::size_t n);

MeasuredValue summand_S(const PartialQuotients& pq, std::size_t nu, std::size_t tail_depth = default_tail_depth());
MeasuredValue partial_sum_G(const PartialQuotients& pq, std::size_t n, std::size_t tail_depth = default_tail_depth());

// Running sums G_0..G_n.
std::vector<Interval> partial_sum_trace(const SummandTrace& trace);

struct IntegralBreakdown {
  std::size_t N = 0;
  MeasuredValue G_N;
  MeasuredValue A;
  MeasuredValue total;
  Interval G_enclosure;
  Interval A_enclosure;
  Interval total_enclosure;
};

IntegralBreakdown integral_I(const PartialQuotients& pq, const mpq_class& t,
                             std::size_t tail_depth = default_tail_depth());

// Header: nu,q_nu,S_nu_lo,S_nu_hi,G_nu_lo,G_nu_hi (rows nu = 1..n).
void write_integral_trace(std::ostream& os, const PartialQuotients& pq, std::size_t n,
                          std::size_t tail_depth = default_tail_depth());

// Header: nu,t_start,t_end,psi_lo,psi_hi. One row per constant piece of psi on [1, t_max].
void write_psi_trace(std::ostream& os, const PartialQuotients& pq, const mpq_class& t_max,
                     std::size_t tail_depth = default_tail_depth());

}  // namespace dal
