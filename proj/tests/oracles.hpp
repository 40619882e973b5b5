#pragma once

// Reference computations used only by the tests. They work from definitions
// (brute-force minima, exact rationals, long double closed forms) and share no
// code with the library beyond the digit containers.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline mpq_class frac(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - f;
}

// Distance to the nearest integer.
inline mpq_class dist(const mpq_class& x) {
  const mpq_class f = frac(x);
  return f <= mpq_class(1, 2) ? f : mpq_class(1) - f;
}

// min over 1 <= k <= K of ||k alpha||, for K = 1..k_max (index 0 unused).
inline std::vector<mpq_class> running_minima(const mpq_class& alpha, std::size_t k_max) {
  std::vector<mpq_class> m(k_max + 1);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const mpq_class d = dist(alpha * static_cast<unsigned long>(k));
    m[k] = (k == 1 || d < m[k - 1]) ? d : m[k - 1];
  }
  return m;
}

// Integral over [1, t] of min_{1 <= k <= s} ||k alpha|| ds, by summing unit steps.
inline mpq_class brute_force_integral(const mpq_class& alpha, const mpq_class& t) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  const std::size_t K = fl.get_ui();
  const auto m = running_minima(alpha, K);
  mpq_class sum = 0;
  for (std::size_t k = 1; k < K; ++k) sum += m[k];
  sum += (t - mpq_class(fl)) * m[K];
  return sum;
}

// Value of [0; a_1, ..., a_n] by folding from the back.
inline mpq_class fold(const std::vector<std::uint64_t>& a) {
  mpq_class x = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    x = 1 / (mpq_class(mpz_class(static_cast<unsigned long>(*it))) + x);
  }
  return x;
}

// q_0..q_n by q_nu = a_nu q_{nu-1} + q_{nu-2}.
inline std::vector<mpz_class> denominators(const std::vector<std::uint64_t>& a) {
  std::vector<mpz_class> q{1};
  mpz_class prev = 0;
  for (auto d : a) {
    mpz_class next = q.back() * static_cast<unsigned long>(d) + prev;
    prev = q.back();
    q.push_back(next);
  }
  return q;
}

// G_n = sum_{nu=1..n} (q_nu - q_{nu-1}) ||q_{nu-1} alpha||, evaluated exactly at the
// rational alpha given by its digits (which must extend past n).
inline mpq_class segment_sum(const std::vector<std::uint64_t>& digits, std::size_t n) {
  const mpq_class alpha = fold(digits);
  const auto q = denominators(digits);
  mpq_class g = 0;
  for (std::size_t nu = 1; nu <= n; ++nu) g += mpq_class(q[nu] - q[nu - 1]) * dist(alpha * q[nu - 1]);
  return g;
}

// Per-digit limit for the constant stream (z, z, ...): 1/2 + (z - 2) / (2 sqrt(z^2 + 4)).
inline long double constant_stream_limit(long double z) {
  return 0.5L + (z - 2.0L) / (2.0L * std::sqrt(z * z + 4.0L));
}

// Digits with P(a = k) roughly following Gauss-Kuzmin, plus occasional large values.
inline std::vector<std::uint64_t> random_digits(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::uint64_t> a(n);
  for (auto& d : a) {
    const double x = u(rng);
    if (x < 0.01) {
      d = 1 + (rng() % 1000000);
    } else {
      // Inverse of the Gauss measure: a = floor(1/T) for T Gauss distributed.
      const double y = std::pow(2.0, u(rng)) - 1.0;
      d = static_cast<std::uint64_t>(std::floor(1.0 / std::max(y, 1e-12)));
      if (d == 0) d = 1;
    }
  }
  return a;
}

}  // namespace oracle
