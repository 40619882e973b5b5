#pragma once

// Exact numbers of the form (u + v*sqrt(D)) / w.

#include <gmpxx.h>

#include <string>

#include "dal/interval.hpp"

namespace dal {

class QuadraticSurd {
 public:
  QuadraticSurd() : u_(0), v_(0), w_(1), d_(0) {}
  QuadraticSurd(const mpq_class& q);  // NOLINT(google-explicit-constructor)
  QuadraticSurd(mpz_class u, mpz_class v, mpz_class d, mpz_class w);

  static QuadraticSurd sqrt(const mpq_class& q);

  const mpz_class& u() const { return u_; }
  const mpz_class& v() const { return v_; }
  const mpz_class& w() const { return w_; }
  // Radicand; 0 when the value is rational.
  const mpz_class& radicand() const { return d_; }

  bool is_rational() const { return sgn(v_) == 0; }
  mpq_class rational() const;  // throws DomainError if irrational

  int sign() const;
  QuadraticSurd conjugate() const;
  Interval enclosure() const;
  double to_double() const { return enclosure().mid(); }
  std::string str() const;

  friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b);
  friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b);
  QuadraticSurd operator-() const;

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b);
  // Exact three-way comparison, also across different radicands.
  friend int compare(const QuadraticSurd& a, const QuadraticSurd& b);

 private:
  void normalize();

  mpz_class u_, v_, w_, d_;
};

inline bool operator!=(const QuadraticSurd& a, const QuadraticSurd& b) { return !(a == b); }
inline bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) < 0; }
inline bool operator>(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) > 0; }
inline bool operator<=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) <= 0; }
inline bool operator>=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) >= 0; }

// Parses "p/q", a decimal such as "0.4" (promoted exactly) or an integer.
mpq_class parse_rational(const std::string& text);

}  // namespace dal
