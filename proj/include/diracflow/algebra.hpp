#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "diracflow/errors.hpp"
#include "diracflow/exp_poly.hpp"

namespace diracflow {

/// Free generators of the graded algebra. O is odd with kappa-weight 1,
/// E and F are even with kappa-weight 2. All are self-adjoint.
enum class Generator : unsigned char { O = 0, E = 1, F = 2 };

constexpr bool is_odd(Generator g) { return g == Generator::O; }
constexpr int kappa_weight(Generator g) { return g == Generator::O ? 1 : 2; }
constexpr char generator_name(Generator g) {
  switch (g) {
    case Generator::O: return 'O';
    case Generator::E: return 'E';
    default: return 'F';
  }
}

constexpr int no_kappa_cap = std::numeric_limits<int>::max();

/// Normal-form monomial: beta (at most once, leftmost) followed by a free
/// word in the generators. beta^2 = 1 and the beta/generator commutation
/// signs are handled when words are combined, so a stored Word never needs
/// rewriting.
struct Word {
  bool beta = false;
  std::vector<Generator> factors;

  int kappa() const {
    int w = 0;
    for (Generator g : factors) w += kappa_weight(g);
    return w;
  }

  int o_count() const {
    return static_cast<int>(std::count(factors.begin(), factors.end(), Generator::O));
  }

  bool odd() const { return o_count() % 2 != 0; }

  bool empty() const { return !beta && factors.empty(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.beta == b.beta && a.factors == b.factors;
  }

  // Canonical order: beta power, then length, then lexicographic on tags.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.beta != b.beta) return a.beta ? std::strong_ordering::greater
                                        : std::strong_ordering::less;
    if (a.factors.size() != b.factors.size())
      return a.factors.size() <=> b.factors.size();
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
      auto ra = static_cast<unsigned>(a.factors[i]);
      auto rb = static_cast<unsigned>(b.factors[i]);
      if (ra != rb) return ra <=> rb;
    }
    return std::strong_ordering::equal;
  }
};

/// Exact element of the beta-graded free algebra with ExpPoly coefficients.
/// Canonical form: a term map keyed by Word; no zero coefficients stored.
class OperatorExpr {
 public:
  OperatorExpr() = default;

  static OperatorExpr zero() { return OperatorExpr(); }

  static OperatorExpr scalar(ExpPoly c) {
    OperatorExpr e;
    e.add_term(Word{}, std::move(c));
    return e;
  }

  static OperatorExpr one() { return scalar(ExpPoly::constant(1)); }

  static OperatorExpr beta() {
    OperatorExpr e;
    e.add_term(Word{true, {}}, ExpPoly::constant(1));
    return e;
  }

  static OperatorExpr generator(Generator g) {
    OperatorExpr e;
    e.add_term(Word{false, {g}}, ExpPoly::constant(1));
    return e;
  }

  /// One raw term: coefficient times a product of symbols, each symbol either
  /// beta (gen ignored) or a generator, with a non-negative power. The
  /// rewrite rules beta^2 = 1 and O beta = -beta O are applied here.
  struct RawFactor {
    bool is_beta;
    Generator gen;
    int power = 1;
  };

  static OperatorExpr from_raw(const ExpPoly& coeff, const std::vector<RawFactor>& raw) {
    bool beta = false;
    std::vector<Generator> factors;
    int sign = 1;
    for (const RawFactor& f : raw) {
      for (int i = 0; i < f.power; ++i) {
        if (f.is_beta) {
          if (std::count(factors.begin(), factors.end(), Generator::O) % 2 != 0)
            sign = -sign;
          beta = !beta;
        } else {
          factors.push_back(f.gen);
        }
      }
    }
    OperatorExpr e;
    ExpPoly c = sign < 0 ? -coeff : coeff;
    e.add_term(Word{beta, std::move(factors)}, std::move(c));
    return e;
  }

  const std::map<Word, ExpPoly>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  ExpPoly coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ExpPoly::zero() : it->second;
  }

  OperatorExpr operator-() const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }

  OperatorExpr& operator+=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }

  OperatorExpr& operator-=(const OperatorExpr& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }

  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    return product(a, b, no_kappa_cap);
  }

  friend OperatorExpr operator*(const ExpPoly& c, const OperatorExpr& e) {
    OperatorExpr r;
    for (const auto& [w, x] : e.terms_) r.add_term(w, c * x);
    return r;
  }

  friend OperatorExpr operator*(const Rational& c, const OperatorExpr& e) {
    return ExpPoly::constant(c) * e;
  }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorExpr& a, const OperatorExpr& b) { return !(a == b); }

  /// Product with words above the kappa cap discarded eagerly.
  static OperatorExpr product(const OperatorExpr& a, const OperatorExpr& b, int kappa_cap) {
    OperatorExpr r;
    for (const auto& [wa, ca] : a.terms_) {
      const int weight_a = wa.kappa();
      if (weight_a > kappa_cap) continue;
      const bool odd_a = wa.odd();
      for (const auto& [wb, cb] : b.terms_) {
        if (weight_a + wb.kappa() > kappa_cap) continue;
        // beta of wb moves left across the factors of wa.
        int sign = (wb.beta && odd_a) ? -1 : 1;
        Word w;
        w.beta = wa.beta != wb.beta;
        w.factors.reserve(wa.factors.size() + wb.factors.size());
        w.factors = wa.factors;
        w.factors.insert(w.factors.end(), wb.factors.begin(), wb.factors.end());
        ExpPoly c = ca * cb;
        r.add_term(std::move(w), sign < 0 ? -c : std::move(c));
      }
    }
    return r;
  }

  /// Adjoint: reverses each word; the coefficients are real and unchanged.
  OperatorExpr dagger() const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) {
      Word rw;
      rw.beta = w.beta;
      rw.factors.assign(w.factors.rbegin(), w.factors.rend());
      int sign = (w.beta && w.odd()) ? -1 : 1;
      r.add_term(std::move(rw), sign < 0 ? -c : c);
    }
    return r;
  }

  /// beta * a * beta: flips the sign of every odd word.
  OperatorExpr beta_conjugate() const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) r.add_term(w, w.odd() ? -c : c);
    return r;
  }

  /// (even, odd) split by O-count parity; the parts recombine to the input.
  std::pair<OperatorExpr, OperatorExpr> parity_split() const {
    OperatorExpr even, odd;
    for (const auto& [w, c] : terms_) (w.odd() ? odd : even).add_term(w, c);
    return {std::move(even), std::move(odd)};
  }

  OperatorExpr even_part() const { return parity_split().first; }
  OperatorExpr odd_part() const { return parity_split().second; }

  /// Sub-sum of terms whose word has kappa-weight exactly n.
  OperatorExpr kappa_slice(int n) const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_)
      if (w.kappa() == n) r.add_term(w, c);
    return r;
  }

  OperatorExpr kappa_truncate(int cap) const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_)
      if (w.kappa() <= cap) r.add_term(w, c);
    return r;
  }

  int max_kappa() const {
    int m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.kappa());
    return m;
  }

  OperatorExpr map_coefficients(auto&& f) const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_) r.add_term(w, f(c));
    return r;
  }

  OperatorExpr integrate_s() const {
    return map_coefficients([](const ExpPoly& c) { return c.integrate_from_zero(); });
  }

  OperatorExpr convolve_decay4() const {
    return map_coefficients([](const ExpPoly& c) { return c.convolve_decay4(); });
  }

  OperatorExpr derivative_s() const {
    return map_coefficients([](const ExpPoly& c) { return c.derivative(); });
  }

  /// Constant part at s -> infinity. Throws NonConvergent on secular terms.
  OperatorExpr limit_s_infinity() const {
    OperatorExpr r;
    for (const auto& [w, c] : terms_)
      r.add_term(w, ExpPoly::constant(c.limit_s_infinity()));
    return r;
  }

  OperatorExpr at_zero() const {
    return map_coefficients([](const ExpPoly& c) { return ExpPoly::constant(c.at_zero()); });
  }

  /// Renames every occurrence of `from` to `to`. Both must have equal parity.
  OperatorExpr substitute_generator(Generator from, Generator to) const {
    if (is_odd(from) != is_odd(to))
      throw ParityMismatch(std::string("cannot substitute ") + generator_name(from) +
                           " -> " + generator_name(to));
    OperatorExpr r;
    for (const auto& [w, c] : terms_) {
      Word nw = w;
      for (Generator& g : nw.factors)
        if (g == from) g = to;
      r.add_term(std::move(nw), c);
    }
    return r;
  }

  bool contains_generator(Generator g) const {
    for (const auto& [w, c] : terms_)
      if (std::find(w.factors.begin(), w.factors.end(), g) != w.factors.end()) return true;
    return false;
  }

  void add_term(Word w, ExpPoly c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(w), std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  std::map<Word, ExpPoly> terms_;
};

inline OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b,
                               int kappa_cap = no_kappa_cap) {
  return OperatorExpr::product(a, b, kappa_cap) - OperatorExpr::product(b, a, kappa_cap);
}

inline OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b,
                                   int kappa_cap = no_kappa_cap) {
  return OperatorExpr::product(a, b, kappa_cap) + OperatorExpr::product(b, a, kappa_cap);
}

}  // namespace diracflow
