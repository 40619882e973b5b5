#pragma once

// Exact continued-fraction arithmetic for numbers in (0,1):
// digit streams, continuants, convergents, forward/reversed tails and
// certified digit extraction from random bits.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dal/errors.hpp"
#include "dal/interval.hpp"

namespace dal {

using Digit = std::uint64_t;

/// The partial quotients a_1, a_2, ... of alpha = [0; a_1, a_2, ...].
///
/// Four sources are supported. A terminating list is an exact rational (the tail
/// after the last digit is infinite). A prefix is a certified beginning of an
/// unknown real (tails past the horizon are only known to be >= 1). Periodic and
/// rule-generated streams are infinite. Indexing is 1-based and a pure function of
/// the index; copies share immutable state.
class PartialQuotients {
 public:
  enum class Kind { terminating, prefix, periodic, generated };

  using Rule = std::function<Digit(std::size_t)>;

  static PartialQuotients terminating(std::vector<Digit> digits);
  static PartialQuotients prefix(std::vector<Digit> digits, std::string label = "prefix");
  // Label defaults to "periodic:pre|rep".
  static PartialQuotients periodic(std::vector<Digit> preamble, std::vector<Digit> block, std::string label = "");
  static PartialQuotients generated(Rule rule, std::string label);
  static PartialQuotients golden();  // [0; 1, 1, 1, ...] = (sqrt(5) - 1) / 2

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::periodic || kind_ == Kind::generated; }
  bool terminates() const { return kind_ == Kind::terminating; }

  // Number of readable digits; SIZE_MAX for infinite streams.
  std::size_t horizon() const { return horizon_; }
  bool readable(std::size_t nu) const { return nu >= 1 && nu <= horizon_; }

  // Digit a_nu. Throws NeedsMoreDigits past the horizon and InvalidDigit if a rule yields 0.
  Digit operator[](std::size_t nu) const {
    if (nu >= 1 && nu <= head_.size()) return head_[nu - 1];
    return slow_at(nu);
  }
  Digit at(std::size_t nu) const { return (*this)[nu]; }

  // a_1..a_n as a vector (n must be readable).
  std::vector<Digit> take(std::size_t n) const;

  const std::string& label() const { return label_; }

  // Comma-separated digits, at most max_shown of them, with a trailing "…" when more exist.
  std::string format(std::size_t max_shown = 32) const;

 private:
  PartialQuotients() = default;
  Digit slow_at(std::size_t nu) const;

  Kind kind_ = Kind::terminating;
  std::vector<Digit> head_;
  std::vector<Digit> block_;
  std::shared_ptr<const Rule> rule_;
  std::size_t horizon_ = 0;
  std::string label_;
};

struct ConvergentPair {
  long nu = 0;
  mpz_class p;
  mpz_class q;
};

/// Rolling continuant state (p_{nu-1}, q_{nu-1}), (p_nu, q_nu), starting at nu = 0.
class ContinuantRecurrence {
 public:
  ContinuantRecurrence() : p_prev_(1), q_prev_(0), p_(0), q_(1) {}

  void push(Digit a) {
    if (a < 1) throw InvalidDigit("partial quotient must be >= 1");
    mpz_addmul_ui(p_prev_.get_mpz_t(), p_.get_mpz_t(), a);
    mpz_addmul_ui(q_prev_.get_mpz_t(), q_.get_mpz_t(), a);
    mpz_swap(p_prev_.get_mpz_t(), p_.get_mpz_t());
    mpz_swap(q_prev_.get_mpz_t(), q_.get_mpz_t());
    ++nu_;
  }

  long nu() const { return nu_; }
  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& p_prev() const { return p_prev_; }
  const mpz_class& q_prev() const { return q_prev_; }

 private:
  long nu_ = 0;
  mpz_class p_prev_, q_prev_, p_, q_;
};

// Pairs for nu = -1 .. n (n + 2 entries).
std::vector<ConvergentPair> convergents(const PartialQuotients& pq, std::size_t n);

struct ReversedTail {
  std::size_t nu = 0;
  mpq_class value;  // q_{nu-1} / q_nu = [0; a_nu, ..., a_1]
};

ReversedTail reversed_tail(const PartialQuotients& pq, std::size_t nu);

/// Certified bracket lo <= alpha_nu <= hi for alpha_nu = [a_nu; a_{nu+1}, ...].
struct TailEnclosure {
  std::size_t nu = 0;
  mpq_class lo;
  mpq_class hi;
  std::size_t digits_used = 0;  // a_nu .. a_{nu + digits_used - 1}

  bool exact() const { return lo == hi; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
  mpq_class width() const { return hi - lo; }
};

// Bracket from digits a_nu .. a_{nu+depth}; the unknown remainder ranges over [1, inf].
// For a terminating stream reaching its last digit the bracket is exact.
TailEnclosure tail_enclosure(const PartialQuotients& pq, std::size_t nu, std::size_t depth);

// Enclosure of 1/alpha_nu in [0,1] from the same digits, in double arithmetic.
// Past the end of a terminating stream this is exactly 0; past a prefix horizon it is [0,1].
Interval reciprocal_tail(const PartialQuotients& pq, std::size_t nu, std::size_t depth);

// Euclid on a rational x in [0,1): its canonical digits a_1..a_m (empty for x = 0).
std::vector<Digit> rational_digits(const mpq_class& x);

struct ExtractedDigits {
  PartialQuotients digits;      // prefix kind, horizon == certified_count
  std::size_t certified_count = 0;
  std::size_t bits = 0;
  std::uint64_t seed = 0;
  mpz_class numerator;          // alpha lies in [numerator, numerator + 1] / 2^bits
};

// Draws x = m / 2^bits with m uniform on [0, 2^bits) from a seeded mt19937_64 stream
// and keeps the digits shared by every point of [x, x + 2^-bits]. max_digits = 0 means
// no cap. Throws InsufficientPrecision if no digit can be certified.
ExtractedDigits extract_digits(std::size_t bits, std::uint64_t seed, std::size_t max_digits = 0);

}  // namespace dal
