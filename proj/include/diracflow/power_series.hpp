#pragma once

#include <vector>

#include "diracflow/rational.hpp"

namespace diracflow {

/// Dense exact power series 'sum_m c[m] x^m' truncated at a fixed length.
/// Just enough arithmetic to divide the few hyperbolic series the flow
/// recursions need.
struct PowerSeries {
  std::vector<Rational> c;

  static PowerSeries zeros(std::size_t n) { return {std::vector<Rational>(n, Rational(0))}; }

  /// Multiplicative inverse, valid when c[0] != 0.
  PowerSeries inverse() const {
    PowerSeries r = zeros(c.size());
    r.c[0] = Rational(1) / c[0];
    for (std::size_t m = 1; m < c.size(); ++m) {
      Rational acc(0);
      for (std::size_t j = 1; j <= m; ++j) acc += c[j] * r.c[m - j];
      r.c[m] = -acc / c[0];
    }
    return r;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r = zeros(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; i + j < r.c.size() && j < b.c.size(); ++j)
        r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
};

/// Coefficients of 2z/sinh(2z) in z^2: entry m multiplies z^(2m).
/// First four are 1, -2/3, 14/45, -124/945.
inline std::vector<Rational> kernel_coefficients(int max_power) {
  // sinh(2z)/(2z) = sum_m 4^m z^(2m) / (2m+1)!
  PowerSeries d = PowerSeries::zeros(static_cast<std::size_t>(max_power) + 1);
  Rational four_pow(1);
  for (int m = 0; m <= max_power; ++m) {
    d.c[static_cast<std::size_t>(m)] = four_pow / Rational::factorial(2 * m + 1);
    four_pow *= Rational(4);
  }
  return d.inverse().c;
}

/// Odd coefficients of tanh(z): entry m multiplies z^(2m+1).
/// First three are 1, -1/3, 2/15.
inline std::vector<Rational> tanh_coefficients(int max_odd_power) {
  const auto n = static_cast<std::size_t>(max_odd_power) + 1;
  PowerSeries sinh_even = PowerSeries::zeros(n);  // sinh(z)/z in z^2
  PowerSeries cosh_even = PowerSeries::zeros(n);  // cosh(z)   in z^2
  for (std::size_t m = 0; m < n; ++m) {
    sinh_even.c[m] = Rational(1) / Rational::factorial(static_cast<int>(2 * m + 1));
    cosh_even.c[m] = Rational(1) / Rational::factorial(static_cast<int>(2 * m));
  }
  return (sinh_even * cosh_even.inverse()).c;
}

}  // namespace diracflow
