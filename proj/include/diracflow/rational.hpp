#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace diracflow {

/// Exact rational scalar. Stored reduced with positive denominator;
/// arithmetic never leaves the rationals (no floating point).
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t n) : v_(n) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : Rational(Integer(n), Integer(d)) {}
  explicit Rational(Backend v) : v_(std::move(v)) {}
  Rational(Integer n, Integer d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    v_ = Backend(std::move(n), std::move(d));
  }

  Integer num() const { return boost::multiprecision::numerator(v_); }
  Integer den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return den() == 1; }
  bool negative() const { return v_ < 0; }

  Rational operator-() const { return Rational(Backend(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return negative() ? -*this : *this; }

  double to_double() const { return v_.convert_to<double>(); }

  std::string to_string() const {
    std::string s = num().str();
    if (den() != 1) s += "/" + den().str();
    return s;
  }

  /// Parses "n" or "n/d" (optional leading '-'). Throws std::invalid_argument
  /// on malformed input or zero denominator.
  static Rational from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(Backend(Integer(text)));
      Integer n(text.substr(0, slash));
      Integer d(text.substr(slash + 1));
      if (d == 0) throw std::invalid_argument("zero denominator");
      return Rational(std::move(n), std::move(d));
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument("bad rational '" + text + "': " + e.what());
    }
  }

  static Rational factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(Backend(f));
  }

 private:
  Backend v_;
};

}  // namespace diracflow
