#include "dal/quadratic_surd.hpp"

#include <cctype>

#include "dal/errors.hpp"
#include "dal/exact.hpp"

namespace dal {

QuadraticSurd::QuadraticSurd(const mpq_class& q) : u_(q.get_num()), v_(0), w_(q.get_den()), d_(0) {}

QuadraticSurd::QuadraticSurd(mpz_class u, mpz_class v, mpz_class d, mpz_class w)
    : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)), d_(std::move(d)) {
  normalize();
}

QuadraticSurd QuadraticSurd::sqrt(const mpq_class& q) {
  if (sgn(q) < 0) throw DomainError("square root of a negative rational");
  return {0, 1, q.get_num() * q.get_den(), q.get_den()};
}

void QuadraticSurd::normalize() {
  if (sgn(w_) == 0) throw DomainError("quadratic surd with zero denominator");
  if (sgn(w_) < 0) {
    u_ = -u_;
    v_ = -v_;
    w_ = -w_;
  }
  if (sgn(d_) < 0) throw DomainError("quadratic surd with negative radicand");
  if (sgn(v_) == 0 || sgn(d_) == 0) {
    v_ = 0;
    d_ = 0;
  } else {
    // Pull square factors out of the radicand. Trial division is capped, so a huge
    // radicand may stay non-squarefree; comparisons remain exact regardless.
    for (unsigned long p = 2; p <= (1ul << 20); ++p) {
      const mpz_class sq = mpz_class(p) * p;
      if (sq > d_) break;
      while (mpz_divisible_p(d_.get_mpz_t(), sq.get_mpz_t())) {
        mpz_divexact(d_.get_mpz_t(), d_.get_mpz_t(), sq.get_mpz_t());
        v_ *= p;
      }
    }
    if (mpz_perfect_square_p(d_.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), d_.get_mpz_t());
      u_ += v_ * root;
      v_ = 0;
      d_ = 0;
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), u_.get_mpz_t(), v_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(u_.get_mpz_t(), u_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(v_.get_mpz_t(), v_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(w_.get_mpz_t(), w_.get_mpz_t(), g.get_mpz_t());
  }
}

mpq_class QuadraticSurd::rational() const {
  if (!is_rational()) throw DomainError("quadratic surd " + str() + " is irrational");
  mpq_class q(u_, w_);
  q.canonicalize();
  return q;
}

int QuadraticSurd::sign() const {
  const int su = sgn(u_);
  const int sv = sgn(v_);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  const mpz_class lhs = u_ * u_;
  const mpz_class rhs = v_ * v_ * d_;
  return lhs > rhs ? su : sv;
}

QuadraticSurd QuadraticSurd::conjugate() const { return {u_, -v_, d_, w_}; }

QuadraticSurd QuadraticSurd::operator-() const { return {-u_, -v_, d_, w_}; }

namespace {

const mpz_class& common_radicand(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.is_rational()) return b.radicand();
  if (b.is_rational() || a.radicand() == b.radicand()) return a.radicand();
  throw DomainError("arithmetic on surds with different radicands " + a.str() + " and " + b.str());
}

}  // namespace

QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
  const mpz_class& d = common_radicand(a, b);
  return {a.u_ * b.w_ + b.u_ * a.w_, a.v_ * b.w_ + b.v_ * a.w_, d, a.w_ * b.w_};
}

QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }

QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
  const mpz_class& d = common_radicand(a, b);
  return {a.u_ * b.u_ + a.v_ * b.v_ * d, a.u_ * b.v_ + a.v_ * b.u_, d, a.w_ * b.w_};
}

QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) {
  const mpz_class norm = b.u_ * b.u_ - b.v_ * b.v_ * b.d_;
  if (sgn(norm) == 0) throw DomainError("division by zero surd");
  return a * QuadraticSurd(b.w_ * b.u_, -b.w_ * b.v_, b.d_, norm);
}

bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
  return a.u_ == b.u_ && a.v_ == b.v_ && a.w_ == b.w_ && a.d_ == b.d_;
}

int compare(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.is_rational() || b.is_rational() || a.d_ == b.d_) return (a - b).sign();
  // a - b = L - R with L = a - u_b/w_b (radicand of a) and R = (v_b/w_b) sqrt(d_b).
  const QuadraticSurd left = a - QuadraticSurd(mpq_class(b.u_, b.w_));
  const int sl = left.sign();
  const int sr = sgn(b.v_);
  if (sl != sr) return sl > sr ? 1 : -1;
  if (sl == 0) return 0;
  const QuadraticSurd rhs_sq(mpq_class(b.v_ * b.v_ * b.d_, b.w_ * b.w_));
  const int s = (left * left - rhs_sq).sign();
  return sl > 0 ? s : -s;
}

Interval QuadraticSurd::enclosure() const {
  const Interval rational_part = enclose_ratio(u_, w_);
  if (is_rational()) return rational_part;
  return rational_part + enclose_ratio(v_, w_) * dal::sqrt(enclose(d_));
}

std::string QuadraticSurd::str() const {
  if (is_rational()) return rational().get_str();
  const mpz_class mag = abs(v_);
  std::string root = "sqrt(" + d_.get_str() + ")";
  if (mag != 1) root = mag.get_str() + "*" + root;
  std::string num;
  if (sgn(u_) != 0) {
    num = u_.get_str() + (sgn(v_) < 0 ? " - " : " + ") + root;
  } else {
    num = (sgn(v_) < 0 ? "-" : "") + root;
  }
  if (w_ == 1) return num;
  return "(" + num + ")/" + w_.get_str();
}

mpq_class parse_rational(const std::string& text) {
  auto bad = [&]() { return DomainError("not a rational literal: '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (i == 0 && (c == '-' || c == '+')))) {
        throw bad();
      }
    }
    try {
      mpq_class q(text[0] == '+' ? text.substr(1) : text, 10);
      if (sgn(q.get_den()) == 0) throw bad();
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw bad();
    }
  }
  std::string digits;
  bool negative = false;
  std::size_t start = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    start = 1;
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (i == dot) continue;
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
    digits += text[i];
  }
  if (digits.empty()) throw bad();
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
  mpq_class q(mpz_class(digits, 10), den);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace dal
