#pragma once

#include <map>
#include <vector>

#include "diracflow/algebra.hpp"
#include "diracflow/power_series.hpp"

namespace diracflow {

/// Map from kappa-order to the operator at that order.
struct SeriesTable {
  std::map<int, OperatorExpr> by_order;
  int max_order = 0;

  OperatorExpr at(int n) const {
    auto it = by_order.find(n);
    return it == by_order.end() ? OperatorExpr::zero() : it->second;
  }

  void set(int n, OperatorExpr e) {
    if (!e.is_zero()) by_order[n] = std::move(e);
    if (n > max_order) max_order = n;
  }

  /// Sum of all stored orders (the kappa-weight lives in the words).
  OperatorExpr total() const {
    OperatorExpr t;
    for (const auto& [n, e] : by_order) t += e;
    return t;
  }
};

inline SeriesTable slice_by_order(const OperatorExpr& e, int max_order) {
  SeriesTable t;
  t.max_order = max_order;
  for (int n = 0; n <= max_order; ++n) t.set(n, e.kappa_slice(n));
  t.max_order = max_order;
  return t;
}

/// Inhomogeneous term of the squared Hamiltonian:
/// H^2 = 1 + R(2) + R(3) + R(4) with R(2)=2*b*field+O^2, R(3)={field,O},
/// R(4)=field^2 and R(n)=0 otherwise. `field` is E for static problems and
/// F for the time-dependent variant.
inline SeriesTable r_table(Generator field = Generator::E) {
  const OperatorExpr o = OperatorExpr::generator(Generator::O);
  const OperatorExpr f = OperatorExpr::generator(field);
  const OperatorExpr b = OperatorExpr::beta();
  SeriesTable t;
  t.set(2, Rational(2) * (b * f) + o * o);
  t.set(3, f * o + o * f);
  t.set(4, f * f);
  t.max_order = 4;
  return t;
}

/// Q-series of the beta-flow: Q(1)(s) = e^(-4s)*b*O and for n >= 2
///   Q(n)(s) = e^(-4s) Q(n)(0) + 2 int_0^s e^(-4(s-s')) (R(n) - sum_j Q(j)Q(n-j))
/// with Q(2)(0) = b*field and Q(n)(0) = 0 for n > 2.
inline SeriesTable q_series(int max_order, Generator field = Generator::E) {
  const ExpPoly decay = ExpPoly::monomial(1, 0, 1);  // e^(-4s)
  const SeriesTable r = r_table(field);
  SeriesTable q;
  q.set(1, decay * (OperatorExpr::beta() * OperatorExpr::generator(Generator::O)));
  for (int n = 2; n <= max_order; ++n) {
    OperatorExpr rhs = r.at(n);
    for (int j = 1; j <= n - 1; ++j)
      rhs -= OperatorExpr::product(q.at(j), q.at(n - j), max_order);
    OperatorExpr qn = Rational(2) * rhs.convolve_decay4();
    if (n == 2) qn += decay * (OperatorExpr::beta() * OperatorExpr::generator(field));
    q.set(n, std::move(qn));
  }
  q.max_order = max_order;
  return q;
}

/// Generator of the beta-flow, order by order: omega(n) = Q(n)^dag - Q(n).
inline SeriesTable omega_series(int max_order, Generator field = Generator::E) {
  const SeriesTable q = q_series(max_order, field);
  SeriesTable w;
  for (int n = 1; n <= max_order; ++n) {
    OperatorExpr qn = q.at(n);
    w.set(n, qn.dagger() - qn);
  }
  w.max_order = max_order;
  return w;
}

namespace detail {

/// sum_m coeff[m] (ad_x)^(step*m + offset) applied to f, kappa-capped.
inline OperatorExpr ad_power_sum(const std::vector<Rational>& coeff, int step, int offset,
                                 const OperatorExpr& x, const OperatorExpr& f,
                                 int kappa_cap) {
  OperatorExpr nested = f;
  for (int i = 0; i < offset; ++i) nested = commutator(x, nested, kappa_cap);
  OperatorExpr acc;
  for (std::size_t m = 0; m < coeff.size(); ++m) {
    if (nested.is_zero()) break;
    acc += coeff[m] * nested;
    for (int i = 0; i < step; ++i) nested = commutator(x, nested, kappa_cap);
  }
  return acc;
}

}  // namespace detail

/// Magnus-type odd generator Omega_u(s) by Picard iteration of
///   Omega(s) = int_0^s (2 ad_Omega / sinh(2 ad_Omega)) o omega_u(s') ds'.
/// Each nested ad raises the kappa-order, so ceil(max_order/2) sweeps
/// stabilize every retained order; one extra sweep asserts that.
inline SeriesTable omega_u_series(int max_order, Generator field = Generator::E) {
  const OperatorExpr omega_u = omega_series(max_order, field).total().odd_part();
  const std::vector<Rational> kernel = kernel_coefficients((max_order - 1) / 2);

  auto sweep = [&](const OperatorExpr& current) {
    return detail::ad_power_sum(kernel, 2, 0, current, omega_u, max_order).integrate_s();
  };

  OperatorExpr omega;
  const int iterations = (max_order + 1) / 2;
  for (int i = 0; i < iterations; ++i) omega = sweep(omega);
  if (sweep(omega) != omega)
    throw ConsistencyError("Picard iteration for Omega_u did not stabilize at order " +
                           std::to_string(max_order));
  return slice_by_order(omega, max_order);
}

/// Manifestly even Newton-Wigner series from a given Omega_u(infinity):
///   cosh(ad_Omega) o (beta + field) - sinh(ad_Omega) o O,
/// truncated so that every retained kappa-order <= max_order is exact.
inline SeriesTable hnw_from_omega(int max_order, Generator field,
                                  const OperatorExpr& omega_inf) {
  std::vector<Rational> cosh_coeff, sinh_coeff;
  for (int j = 0; 2 * j <= max_order; ++j)
    cosh_coeff.push_back(Rational(1) / Rational::factorial(2 * j));
  for (int j = 0; 2 * j + 1 <= max_order; ++j)
    sinh_coeff.push_back(Rational(1) / Rational::factorial(2 * j + 1));

  const OperatorExpr even_seed = OperatorExpr::beta() + OperatorExpr::generator(field);
  const OperatorExpr odd_seed = OperatorExpr::generator(Generator::O);
  OperatorExpr h =
      detail::ad_power_sum(cosh_coeff, 2, 0, omega_inf, even_seed, max_order) -
      detail::ad_power_sum(sinh_coeff, 2, 1, omega_inf, odd_seed, max_order);
  return slice_by_order(h, max_order);
}

/// Newton-Wigner series h(2), h(4), ..., h(max_order); h(0) = beta.
inline SeriesTable hnw_series(int max_order, Generator field = Generator::E) {
  const OperatorExpr omega_inf =
      omega_u_series(max_order - 1, field).total().limit_s_infinity();
  return hnw_from_omega(max_order, field, omega_inf);
}

/// Time-dependent Hamiltonian-flow recursion in generators {beta, O, F}:
///   K(2n)(s)   = K(2n)(0) + 4 b sum_j int_0^s K(2j+1) K(2n-2j-1)
///   K(2n+1)(s) = e^(-4s) K(2n+1)(0)
///                + 2 b sum_j int_0^s e^(-4(s-s')) [K(2j+1), K(2n-2j)]
/// with K(1)(0) = O, K(2)(0) = F, K(j)(0) = 0 for j >= 3. Returns the
/// even-order limits K(2j)(infinity); the odd orders vanish there.
inline SeriesTable bp_flow_series(int max_order) {
  const OperatorExpr b = OperatorExpr::beta();
  SeriesTable k;
  k.set(1, ExpPoly::monomial(1, 0, 1) * OperatorExpr::generator(Generator::O));
  for (int j = 2; j <= max_order; ++j) {
    if (j % 2 == 0) {
      const int n = j / 2;
      OperatorExpr acc;
      for (int i = 0; i < n; ++i)
        acc += OperatorExpr::product(k.at(2 * i + 1), k.at(2 * n - 2 * i - 1), max_order)
                   .integrate_s();
      OperatorExpr kj = Rational(4) * OperatorExpr::product(b, acc, max_order);
      if (j == 2) kj += OperatorExpr::generator(Generator::F);
      k.set(j, std::move(kj));
    } else {
      const int n = (j - 1) / 2;
      OperatorExpr acc;
      for (int i = 0; i < n; ++i)
        acc += commutator(k.at(2 * i + 1), k.at(2 * n - 2 * i), max_order).convolve_decay4();
      k.set(j, Rational(2) * OperatorExpr::product(b, acc, max_order));
    }
  }
  SeriesTable result;
  for (int j = 2; j <= max_order; j += 2) result.set(j, k.at(j).limit_s_infinity());
  for (int j = 1; j <= max_order; j += 2)
    if (!k.at(j).limit_s_infinity().is_zero())
      throw ConsistencyError("odd-order K(" + std::to_string(j) +
                             ") has a nonzero s->infinity limit");
  result.max_order = max_order;
  return result;
}

/// Time-dependent Newton-Wigner series: the static result with E renamed to
/// F, cross-checked against an independent rerun of the recursions over F.
inline SeriesTable hnw_time_dependent(int max_order) {
  const SeriesTable via_substitution = [&] {
    SeriesTable t;
    for (const auto& [n, e] : hnw_series(max_order, Generator::E).by_order)
      t.set(n, e.substitute_generator(Generator::E, Generator::F));
    t.max_order = max_order;
    return t;
  }();
  const SeriesTable direct = hnw_series(max_order, Generator::F);
  if (via_substitution.by_order != direct.by_order)
    throw ConsistencyError("E->F substitution disagrees with the direct F-run");
  return direct;
}

}  // namespace diracflow
