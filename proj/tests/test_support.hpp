#pragma once

#include <random>

#include "diracflow/diracflow.hpp"

namespace diracflow::testing {

inline OperatorExpr b() { return OperatorExpr::beta(); }
inline OperatorExpr O() { return OperatorExpr::generator(Generator::O); }
inline OperatorExpr E() { return OperatorExpr::generator(Generator::E); }
inline OperatorExpr F() { return OperatorExpr::generator(Generator::F); }

inline OperatorExpr pow(const OperatorExpr& x, int n) {
  OperatorExpr r = OperatorExpr::one();
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

/// Random canonical expression: a handful of short random words with small
/// random exponential-polynomial coefficients.
inline OperatorExpr random_expr(std::mt19937_64& rng, int max_terms = 4,
                                int max_word_length = 3, bool allow_f = false) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> word_length(0, max_word_length);
  std::uniform_int_distribution<int> gen_pick(0, allow_f ? 2 : 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> small(-4, 4);
  std::uniform_int_distribution<int> denom(1, 4);
  std::uniform_int_distribution<int> decay(0, 2);
  std::uniform_int_distribution<int> power(0, 2);

  OperatorExpr e;
  const int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<OperatorExpr::RawFactor> raw;
    if (coin(rng)) raw.push_back({true, Generator::O, 1});
    const int length = word_length(rng);
    for (int i = 0; i < length; ++i)
      raw.push_back({false, static_cast<Generator>(gen_pick(rng)), 1});
    ExpPoly coeff;
    const int pieces = 1 + coin(rng);
    for (int p = 0; p < pieces; ++p) {
      const int num = small(rng);
      if (num == 0) continue;
      coeff += ExpPoly::monomial(Rational(num, denom(rng)), power(rng), decay(rng));
    }
    if (coeff.is_zero()) coeff = ExpPoly::constant(1);
    e += OperatorExpr::from_raw(coeff, raw);
  }
  return e;
}

/// Random odd anti-self-adjoint expression (x - x^dag restricted to odd words).
inline OperatorExpr random_odd_antihermitian(std::mt19937_64& rng) {
  const OperatorExpr x = random_expr(rng, 4, 3).odd_part();
  return x - x.dagger();
}

/// Bernoulli numbers B_0..B_max by the defining recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1.
inline std::vector<Rational> bernoulli_numbers(int max_index) {
  std::vector<Rational> bernoulli(static_cast<std::size_t>(max_index) + 1, Rational(0));
  bernoulli[0] = Rational(1);
  for (int m = 1; m <= max_index; ++m) {
    Rational acc(0);
    for (int j = 0; j < m; ++j) {
      const Rational binom = Rational::factorial(m + 1) /
                             (Rational::factorial(j) * Rational::factorial(m + 1 - j));
      acc += binom * bernoulli[static_cast<std::size_t>(j)];
    }
    bernoulli[static_cast<std::size_t>(m)] = -acc / Rational(m + 1);
  }
  return bernoulli;
}

/// Independent oracle for the 2z/sinh(2z) coefficients:
/// c_{2n} = (2 - 2^(2n)) B_{2n} 4^n / (2n)!.
inline std::vector<Rational> kernel_coefficients_bernoulli(int max_power) {
  const std::vector<Rational> bernoulli = bernoulli_numbers(2 * max_power);
  std::vector<Rational> c;
  Rational four_pow(1);
  Rational two_pow(1);  // 2^(2n)
  for (int n = 0; n <= max_power; ++n) {
    c.push_back((Rational(2) - two_pow) * bernoulli[static_cast<std::size_t>(2 * n)] *
                four_pow / Rational::factorial(2 * n));
    four_pow *= Rational(4);
    two_pow *= Rational(4);
  }
  return c;
}

}  // namespace diracflow::testing
