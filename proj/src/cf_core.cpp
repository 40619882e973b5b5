#include "dal/cf_core.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "dal/exact.hpp"

namespace dal {

namespace {

void require_digits(const std::vector<Digit>& digits) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 1) {
      throw InvalidDigit("partial quotient a_" + std::to_string(i + 1) + " must be >= 1");
    }
  }
}

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return (a > kUnbounded - b) ? kUnbounded : a + b;
}

Interval digit_interval(Digit a) {
  const auto d = static_cast<double>(a);
  if (a <= (Digit{1} << 53)) return Interval(d);
  return {rounding::prev(d), rounding::next(d)};
}

}  // namespace

PartialQuotients PartialQuotients::terminating(std::vector<Digit> digits) {
  require_digits(digits);
  PartialQuotients pq;
  pq.kind_ = Kind::terminating;
  pq.horizon_ = digits.size();
  pq.head_ = std::move(digits);
  pq.label_ = "[0;" + pq.format(8) + "]";
  return pq;
}

PartialQuotients PartialQuotients::prefix(std::vector<Digit> digits, std::string label) {
  require_digits(digits);
  PartialQuotients pq;
  pq.kind_ = Kind::prefix;
  pq.horizon_ = digits.size();
  pq.head_ = std::move(digits);
  pq.label_ = std::move(label);
  return pq;
}

PartialQuotients PartialQuotients::periodic(std::vector<Digit> preamble, std::vector<Digit> block, std::string label_text) {
  if (block.empty()) throw DomainError("periodic digit stream needs a nonempty repeating block");
  require_digits(preamble);
  require_digits(block);
  PartialQuotients pq;
  pq.kind_ = Kind::periodic;
  pq.horizon_ = kUnbounded;
  std::ostringstream label;
  label << "periodic:";
  for (std::size_t i = 0; i < preamble.size(); ++i) label << (i ? "," : "") << preamble[i];
  label << '|';
  for (std::size_t i = 0; i < block.size(); ++i) label << (i ? "," : "") << block[i];
  pq.label_ = label_text.empty() ? label.str() : std::move(label_text);
  pq.head_ = std::move(preamble);
  pq.block_ = std::move(block);
  return pq;
}

PartialQuotients PartialQuotients::generated(Rule rule, std::string label) {
  PartialQuotients pq;
  pq.kind_ = Kind::generated;
  pq.horizon_ = kUnbounded;
  pq.rule_ = std::make_shared<const Rule>(std::move(rule));
  pq.label_ = std::move(label);
  return pq;
}

PartialQuotients PartialQuotients::golden() {
  auto pq = periodic({}, {1});
  pq.label_ = "golden";
  return pq;
}

Digit PartialQuotients::slow_at(std::size_t nu) const {
  if (nu == 0) throw DomainError("digit index starts at 1");
  switch (kind_) {
    case Kind::terminating:
      throw NeedsMoreDigits("digit a_" + std::to_string(nu) + " requested but the expansion terminates after " +
                            std::to_string(horizon_) + " digits");
    case Kind::prefix:
      throw NeedsMoreDigits("digit a_" + std::to_string(nu) + " lies past the certified horizon of " +
                            std::to_string(horizon_) + " digits");
    case Kind::periodic:
      return block_[(nu - head_.size() - 1) % block_.size()];
    case Kind::generated: {
      const Digit a = (*rule_)(nu);
      if (a < 1) throw InvalidDigit("partial quotient a_" + std::to_string(nu) + " must be >= 1");
      return a;
    }
  }
  return 0;
}

std::vector<Digit> PartialQuotients::take(std::size_t n) const {
  std::vector<Digit> out;
  out.reserve(n);
  for (std::size_t nu = 1; nu <= n; ++nu) out.push_back((*this)[nu]);
  return out;
}

std::string PartialQuotients::format(std::size_t max_shown) const {
  std::ostringstream os;
  const std::size_t shown = std::min(max_shown, horizon_);
  for (std::size_t nu = 1; nu <= shown; ++nu) {
    if (nu > 1) os << ',';
    os << (*this)[nu];
  }
  if (horizon_ > shown) os << (shown ? ",…" : "…");
  return os.str();
}

std::vector<ConvergentPair> convergents(const PartialQuotients& pq, std::size_t n) {
  std::vector<ConvergentPair> out;
  out.reserve(n + 2);
  out.push_back({-1, mpz_class(1), mpz_class(0)});
  out.push_back({0, mpz_class(0), mpz_class(1)});
  ContinuantRecurrence rec;
  for (std::size_t nu = 1; nu <= n; ++nu) {
    rec.push(pq[nu]);
    out.push_back({rec.nu(), rec.p(), rec.q()});
  }
  return out;
}

ReversedTail reversed_tail(const PartialQuotients& pq, std::size_t nu) {
  ContinuantRecurrence rec;
  for (std::size_t k = 1; k <= nu; ++k) rec.push(pq[k]);
  ReversedTail out;
  out.nu = nu;
  // q_{nu-1} and q_nu are coprime, so this is already in lowest terms.
  mpz_set(mpq_numref(out.value.get_mpq_t()), rec.q_prev().get_mpz_t());
  mpz_set(mpq_denref(out.value.get_mpq_t()), rec.q().get_mpz_t());
  return out;
}

TailEnclosure tail_enclosure(const PartialQuotients& pq, std::size_t nu, std::size_t depth) {
  if (nu == 0) throw DomainError("tail index starts at 1");
  if (!pq.readable(nu)) {
    if (pq.terminates() && nu == pq.horizon() + 1) {
      throw DomainError("tail alpha_" + std::to_string(nu) + " is infinite for a terminating expansion");
    }
    (void)pq[nu];  // throws NeedsMoreDigits
  }
  const std::size_t last = std::min(saturating_add(nu, depth), pq.horizon());
  const bool exact_end = pq.terminates() && last == pq.horizon();

  // Convergents of [a_nu; a_{nu+1}, ..., a_last].
  mpz_class h(1), h_prev(0), k(0), k_prev(1);
  for (std::size_t j = nu; j <= last; ++j) {
    const Digit b = pq[j];
    mpz_addmul_ui(h_prev.get_mpz_t(), h.get_mpz_t(), b);
    mpz_addmul_ui(k_prev.get_mpz_t(), k.get_mpz_t(), b);
    mpz_swap(h.get_mpz_t(), h_prev.get_mpz_t());
    mpz_swap(k.get_mpz_t(), k_prev.get_mpz_t());
  }

  TailEnclosure out;
  out.nu = nu;
  out.digits_used = last - nu + 1;
  // Remainder infinite: h/k. Remainder 1: (h + h_prev)/(k + k_prev). Both are in lowest terms.
  mpq_class at_inf;
  mpz_set(mpq_numref(at_inf.get_mpq_t()), h.get_mpz_t());
  mpz_set(mpq_denref(at_inf.get_mpq_t()), k.get_mpz_t());
  if (exact_end) {
    out.lo = at_inf;
    out.hi = at_inf;
    return out;
  }
  mpq_class at_one;
  mpz_class num = h + h_prev;
  mpz_class den = k + k_prev;
  mpz_set(mpq_numref(at_one.get_mpq_t()), num.get_mpz_t());
  mpz_set(mpq_denref(at_one.get_mpq_t()), den.get_mpz_t());
  if (at_inf < at_one) {
    out.lo = std::move(at_inf);
    out.hi = std::move(at_one);
  } else {
    out.lo = std::move(at_one);
    out.hi = std::move(at_inf);
  }
  return out;
}

Interval reciprocal_tail(const PartialQuotients& pq, std::size_t nu, std::size_t depth) {
  if (nu == 0) throw DomainError("tail index starts at 1");
  const std::size_t horizon = pq.horizon();
  if (nu > horizon) return pq.terminates() ? Interval(0.0) : Interval::unit();
  const std::size_t last = std::min(saturating_add(nu, depth), horizon);
  Interval r = (pq.terminates() && last == horizon) ? Interval(0.0) : Interval::unit();
  for (std::size_t j = last + 1; j-- > nu;) {
    r = reciprocal(digit_interval(pq[j]) + r);
  }
  return clamp_to(r, 0.0, 1.0);
}

std::vector<Digit> rational_digits(const mpq_class& x) {
  if (sgn(x) < 0 || x >= 1) throw DomainError("rational_digits expects x in [0,1)");
  std::vector<Digit> out;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class a, r;
  while (sgn(num) != 0) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    if (!a.fits_ulong_p()) throw DomainError("partial quotient does not fit in 64 bits");
    out.push_back(a.get_ui());
    den.swap(num);
    num.swap(r);
  }
  return out;
}

ExtractedDigits extract_digits(std::size_t bits, std::uint64_t seed, std::size_t max_digits) {
  if (bits < 64) throw DomainError("extract_digits needs at least 64 random bits");
  std::mt19937_64 gen(seed);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = gen();
  mpz_class m;
  mpz_import(m.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  mpz_fdiv_r_2exp(m.get_mpz_t(), m.get_mpz_t(), bits);

  ExtractedDigits out{PartialQuotients::prefix({}), 0, bits, seed, m};

  // Euclid on both endpoints of [m, m+1] / 2^bits in lockstep.
  mpz_class n1 = m, n2 = m + 1;
  mpz_class d1, d2;
  mpz_ui_pow_ui(d1.get_mpz_t(), 2, bits);
  d2 = d1;
  mpz_class a1, a2, r1, r2;
  std::vector<Digit> digits;
  while (sgn(n1) != 0 && sgn(n2) != 0 && (max_digits == 0 || digits.size() < max_digits)) {
    mpz_fdiv_qr(a1.get_mpz_t(), r1.get_mpz_t(), d1.get_mpz_t(), n1.get_mpz_t());
    mpz_fdiv_qr(a2.get_mpz_t(), r2.get_mpz_t(), d2.get_mpz_t(), n2.get_mpz_t());
    if (a1 != a2 || !a1.fits_ulong_p()) break;
    // A digit is trusted only if neither endpoint's expansion stops at it.
    if (sgn(r1) == 0 || sgn(r2) == 0) break;
    digits.push_back(a1.get_ui());
    d1.swap(n1);
    n1.swap(r1);
    d2.swap(n2);
    n2.swap(r2);
  }
  if (digits.empty()) {
    throw InsufficientPrecision("no partial quotient is certified by " + std::to_string(bits) +
                                " random bits; retry with more bits");
  }
  out.certified_count = digits.size();
  out.digits = PartialQuotients::prefix(std::move(digits), "random:" + std::to_string(seed));
  return out;
}

}  // namespace dal
