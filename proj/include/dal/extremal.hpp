#pragma once

// S(z), checkers for the G_n bounds and the constructor of numbers with a
// prescribed limit of G_n/n.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "dal/cf_core.hpp"
#include "dal/interval.hpp"
#include "dal/quadratic_surd.hpp"

namespace dal {

// alpha(z, z, ...) = (sqrt(z^2 + 4) - z) / 2.
QuadraticSurd constant_tail_value(const mpq_class& z);

// S(z) = (1 - alpha)(z + alpha) / (z + 2 alpha) with alpha = alpha(z, z, ...). Throws for z < 1.
QuadraticSurd S_closed(const mpq_class& z);
// Same for a real z >= 1 given as an enclosure; z.hi may be +inf (S(+inf) = 1).
Interval S_closed(const Interval& z);

/// One bound check. `observed` is a certified upper bound for the quantity the
/// bound applies to (or a lower bound, for checks phrased as "at least").
struct BoundCheck {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool strict = true;
  bool holds = true;
  std::string witness;  // input that produced the worst observed value
};

// max_{m <= n} |G_m(z, z, ...) - S(z) m| against 4.
BoundCheck check_constant_stream(Digit z, std::size_t n);

// |G_n(x) - G_n(y)|. Streams sharing their first n+1 digits are checked against 1,
// streams differing only in the first digit against 8; anything else is a PatternError.
BoundCheck check_prefix_insensitivity(const PartialQuotients& x, const PartialQuotients& y, std::size_t n);

// |G_{n-1}(alpha, x) - G_n(alpha, y)| < 3 for tails x, y >= 1 (y.hi may be +inf).
BoundCheck check_append(const PartialQuotients& alpha, const Interval& x, const Interval& y, std::size_t n);

// max_{m <= n} |G_m - S(z) m| < 13 for the stream (x1, z * n, w, w, ...).
BoundCheck check_single_substitution(Digit x1, Digit z, std::size_t n, Digit w);

// G_n(x) >= G_n(1, ..., 1 (n+1 times), x_{n+2}, ...). observed = lower bound of the
// difference G_n(ones) - G_n(x), which must not be positive.
BoundCheck check_all_ones_minimal(const PartialQuotients& x, std::size_t n);

// S(1) - 5/n <= G_n/n < 1 for n in [n0, n1]. observed = max of S(1) n - G_n.
BoundCheck check_ratio_band(const PartialQuotients& x, std::size_t n0, std::size_t n1);

struct MonotonicityResult {
  int sign = 0;            // +1 increasing, -1 decreasing
  Interval difference;     // G_n(x_k = v + delta) - G_n(x_k = v)
};

// Replaces digit k by the real values v and v + delta. Requires k <= n + 1;
// throws InsufficientPrecision when the difference is not resolved.
MonotonicityResult check_monotonicity(const PartialQuotients& x, std::size_t k, std::size_t n, const Interval& v,
                                      const Interval& delta);

struct BlockSpec {
  Digit a = 0;
  Digit b = 0;
  std::vector<std::size_t> block_lengths;  // alternating a-runs and b-runs, starting with a
  std::vector<std::size_t> W;              // partial sums of block_lengths
  std::size_t M = 0;                       // longest block, counting an unfinished last one
};

struct ConstructedAlpha {
  enum class Mode { blocks, constant, increasing };
  Mode mode = Mode::blocks;
  QuadraticSurd d;
  PartialQuotients digits = PartialQuotients::golden();
  BlockSpec spec;

  // Bound on |G_n/n - d| for n > M: (M + 3)/(n - M), or 4/n for a constant stream.
  double envelope(std::size_t n) const;
};

// Builds at least n_digits digits of a number with lim G_n/n = d. Throws DomainError
// for d outside [S(1), 1].
ConstructedAlpha construct_alpha(const QuadraticSurd& d, std::size_t n_digits);

std::string to_json(const BlockSpec& spec);

}  // namespace dal
