#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "diracflow/errors.hpp"
#include "diracflow/rational.hpp"

namespace diracflow {

/// Exact coefficient ring element: sum over decay indices k >= 0 of
/// e^(-4ks) * P_k(s) with rational polynomials P_k. Closed under addition,
/// multiplication, d/ds, the integral from 0 to s and the e^(-4(s-s'))
/// convolution, which is all the recursions need.
class ExpPoly {
 public:
  using Poly = std::vector<Rational>;  // coefficients by ascending power of s

  ExpPoly() = default;

  static ExpPoly zero() { return ExpPoly(); }

  static ExpPoly constant(Rational c) {
    ExpPoly p;
    if (!c.is_zero()) p.parts_[0] = {std::move(c)};
    return p;
  }

  /// c * s^power * e^(-4*decay*s)
  static ExpPoly monomial(Rational c, int power, int decay) {
    ExpPoly p;
    if (c.is_zero()) return p;
    Poly poly(static_cast<std::size_t>(power) + 1, Rational(0));
    poly[static_cast<std::size_t>(power)] = std::move(c);
    p.parts_[decay] = std::move(poly);
    return p;
  }

  const std::map<int, Poly>& parts() const { return parts_; }

  bool is_zero() const { return parts_.empty(); }

  bool is_one() const {
    return parts_.size() == 1 && parts_.begin()->first == 0 &&
           parts_.begin()->second.size() == 1 && parts_.begin()->second[0].is_one();
  }

  bool is_constant() const {
    return is_zero() || (parts_.size() == 1 && parts_.begin()->first == 0 &&
                         parts_.begin()->second.size() == 1);
  }

  ExpPoly operator-() const {
    ExpPoly r;
    for (const auto& [k, poly] : parts_) {
      Poly q;
      q.reserve(poly.size());
      for (const auto& c : poly) q.push_back(-c);
      r.parts_[k] = std::move(q);
    }
    return r;
  }

  ExpPoly& operator+=(const ExpPoly& o) {
    for (const auto& [k, poly] : o.parts_) add_poly(k, poly);
    return *this;
  }

  ExpPoly& operator-=(const ExpPoly& o) { return *this += -o; }

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }

  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [ka, pa] : a.parts_)
      for (const auto& [kb, pb] : b.parts_) {
        Poly prod(pa.size() + pb.size() - 1, Rational(0));
        for (std::size_t i = 0; i < pa.size(); ++i)
          for (std::size_t j = 0; j < pb.size(); ++j) prod[i + j] += pa[i] * pb[j];
        r.add_poly(ka + kb, prod);
      }
    return r;
  }

  friend ExpPoly operator*(const Rational& c, const ExpPoly& p) {
    if (c.is_zero()) return ExpPoly();
    ExpPoly r;
    for (const auto& [k, poly] : p.parts_) {
      Poly q;
      q.reserve(poly.size());
      for (const auto& x : poly) q.push_back(c * x);
      r.parts_[k] = std::move(q);
    }
    return r;
  }

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

  /// Value at s = 0 (sum of all constant terms).
  Rational at_zero() const {
    Rational v(0);
    for (const auto& [k, poly] : parts_) v += poly[0];
    return v;
  }

  double evaluate(double s) const {
    double total = 0.0;
    for (const auto& [k, poly] : parts_) {
      double horner = 0.0;
      for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        horner = horner * s + it->to_double();
      total += std::exp(-4.0 * k * s) * horner;
    }
    return total;
  }

  /// Limit for s -> infinity. Exists iff the k = 0 part is constant.
  Rational limit_s_infinity() const {
    auto it = parts_.find(0);
    if (it == parts_.end()) return Rational(0);
    if (it->second.size() > 1)
      throw NonConvergent("secular term: k=0 polynomial has degree " +
                          std::to_string(it->second.size() - 1));
    return it->second[0];
  }

  bool has_limit() const {
    auto it = parts_.find(0);
    return it == parts_.end() || it->second.size() == 1;
  }

  ExpPoly derivative() const {
    ExpPoly r;
    for (const auto& [k, poly] : parts_) {
      Poly d(poly.size(), Rational(0));  // -4k * poly, same degree
      for (std::size_t i = 0; i < poly.size(); ++i) d[i] = Rational(-4 * k) * poly[i];
      r.add_poly(k, d);
      if (poly.size() > 1) {
        Poly shift(poly.size() - 1, Rational(0));
        for (std::size_t i = 1; i < poly.size(); ++i)
          shift[i - 1] = Rational(static_cast<std::int64_t>(i)) * poly[i];
        r.add_poly(k, shift);
      }
    }
    return r;
  }

  /// Integral from 0 to s, exactly. For k > 0 uses
  /// int_0^s e^{a t} t^p dt = e^{as} sum_j (-1)^j p!/(p-j)! s^{p-j}/a^{j+1}
  ///                          - (-1)^p p!/a^{p+1},   a = -4k.
  ExpPoly integrate_from_zero() const {
    ExpPoly r;
    for (const auto& [k, poly] : parts_) {
      if (k == 0) {
        Poly q(poly.size() + 1, Rational(0));
        for (std::size_t p = 0; p < poly.size(); ++p)
          q[p + 1] = poly[p] / Rational(static_cast<std::int64_t>(p + 1));
        r.add_poly(0, q);
        continue;
      }
      for (std::size_t p = 0; p < poly.size(); ++p)
        accumulate_exp_integral(r, poly[p], static_cast<int>(p), Rational(-4 * k), k, 0);
    }
    return r;
  }

  /// int_0^s e^{-4(s-s')} f(s') ds', exactly. The k = 1 part is resonant and
  /// gains one power of s; every other part splits between its own decay
  /// index and k = 1.
  ExpPoly convolve_decay4() const {
    ExpPoly r;
    for (const auto& [k, poly] : parts_) {
      if (k == 1) {
        Poly q(poly.size() + 1, Rational(0));
        for (std::size_t p = 0; p < poly.size(); ++p)
          q[p + 1] = poly[p] / Rational(static_cast<std::int64_t>(p + 1));
        r.add_poly(1, q);
        continue;
      }
      for (std::size_t p = 0; p < poly.size(); ++p)
        accumulate_exp_integral(r, poly[p], static_cast<int>(p), Rational(4 - 4 * k), k, 1);
    }
    return r;
  }

 private:
  // Adds c * [ e^{as} sum_j ... - (-1)^p p!/a^{p+1} ] with the exponential
  // landing at decay index k_exp and the constant at index k_const.
  static void accumulate_exp_integral(ExpPoly& out, const Rational& c, int p,
                                      const Rational& a, int k_exp, int k_const) {
    Rational a_pow = a;  // a^{j+1}
    Rational fall(1);    // p!/(p-j)!
    Poly q(static_cast<std::size_t>(p) + 1, Rational(0));
    for (int j = 0; j <= p; ++j) {
      Rational term = c * fall / a_pow;
      if (j % 2 != 0) term = -term;
      q[static_cast<std::size_t>(p - j)] = term;
      fall *= Rational(p - j);
      a_pow *= a;
    }
    out.add_poly(k_exp, q);
    Rational constant = -(c * Rational::factorial(p) / pow_rational(a, p + 1));
    if (p % 2 != 0) constant = -constant;
    out.add_poly(k_const, Poly{constant});
  }

  static Rational pow_rational(const Rational& a, int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r *= a;
    return r;
  }

  void add_poly(int k, const Poly& poly) {
    auto& dst = parts_[k];
    if (dst.size() < poly.size()) dst.resize(poly.size(), Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) dst[i] += poly[i];
    while (!dst.empty() && dst.back().is_zero()) dst.pop_back();
    if (dst.empty()) parts_.erase(k);
  }

  std::map<int, Poly> parts_;
};

}  // namespace diracflow
