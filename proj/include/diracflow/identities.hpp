#pragma once

#include <string>
#include <vector>

#include "diracflow/series.hpp"
#include "diracflow/text_format.hpp"

namespace diracflow {

/// Outcome of an exact identity check. A failing check carries the nonzero
/// residual so the caller can print it.
struct Verdict {
  enum class State { Holds, Fails, NotComputed };

  State state = State::NotComputed;
  std::string name;
  OperatorExpr residual;

  bool holds() const { return state == State::Holds; }

  static Verdict from_residual(std::string name, OperatorExpr residual) {
    Verdict v;
    v.name = std::move(name);
    v.state = residual.is_zero() ? State::Holds : State::Fails;
    v.residual = std::move(residual);
    return v;
  }

  std::string describe() const {
    switch (state) {
      case State::Holds: return name + ": holds";
      case State::Fails: return name + ": FAILS, residual = " + render(residual);
      default: return name + ": not computed";
    }
  }
};

/// The five commutator identities used to reduce the fifth-order generator,
/// e.g. O^2[O,E] + O[O,E]O + [O,E]O^2 = [O^3,E] and
/// O[O,E]O = 1/3[O^3,E] - 1/3[O,[O,[O,E]]].
inline std::vector<Verdict> commutator_identities() {
  const OperatorExpr o = OperatorExpr::generator(Generator::O);
  const OperatorExpr e = OperatorExpr::generator(Generator::E);
  const OperatorExpr o2 = o * o;
  const OperatorExpr o3 = o2 * o;
  const OperatorExpr oe = commutator(o, e);
  const OperatorExpr triple = commutator(o, commutator(o, oe));
  const Rational third(1, 3);

  std::vector<Verdict> out;
  out.push_back(Verdict::from_residual(
      "O^2[O,E]+O[O,E]O+[O,E]O^2 = [O^3,E]",
      o2 * oe + o * oe * o + oe * o2 - commutator(o3, e)));
  out.push_back(Verdict::from_residual(
      "O^2[O,E]+[O,E]O^2 = [O,(EO^2+O^2E)]",
      o2 * oe + oe * o2 - commutator(o, e * o2 + o2 * e)));
  out.push_back(Verdict::from_residual(
      "[O,[O,[O,E]]] = O^2[O,E]+[O,E]O^2-2O[O,E]O",
      triple - (o2 * oe + oe * o2 - Rational(2) * (o * oe * o))));
  out.push_back(Verdict::from_residual(
      "[O,[O,[O,E]]] = [O^3,E]-3O[O,E]O",
      triple - (commutator(o3, e) - Rational(3) * (o * oe * o))));
  out.push_back(Verdict::from_residual(
      "O[O,E]O = 1/3[O^3,E]-1/3[O,[O,[O,E]]]",
      o * oe * o - (third * commutator(o3, e) - third * triple)));
  out.push_back(Verdict::from_residual(
      "O^2[O,E]+[O,E]O^2 = 2/3[O^3,E]+1/3[O,[O,[O,E]]]",
      o2 * oe + oe * o2 -
          (Rational(2, 3) * commutator(o3, e) + third * triple)));
  return out;
}

/// Constraint chain inherited from Q^dag Q = H^2:
///   Q(1)^dag = -Q(1),  and for n >= 2
///   Q(n)^dag + Q(n) = R(n) - sum_{j=1}^{n-1} Q(j)^dag Q(n-j).
inline std::vector<Verdict> q_constraint_chain(int max_order,
                                               Generator field = Generator::E) {
  const SeriesTable q = q_series(max_order, field);
  const SeriesTable r = r_table(field);
  std::vector<Verdict> out;
  out.push_back(
      Verdict::from_residual("Q(1)^dag = -Q(1)", q.at(1).dagger() + q.at(1)));
  for (int n = 2; n <= max_order; ++n) {
    OperatorExpr rhs = r.at(n);
    for (int j = 1; j <= n - 1; ++j) rhs -= q.at(j).dagger() * q.at(n - j);
    out.push_back(Verdict::from_residual(
        "Q(" + std::to_string(n) + ")^dag + Q(" + std::to_string(n) + ") constraint",
        q.at(n).dagger() + q.at(n) - rhs));
  }
  return out;
}

/// 1/2 ad_X1 ad_X b + 1/2 ad_X ad_X1 b = ad_X O with X1 = Omega(1) = -1/2 bO.
/// Holds for every odd X, which is why only Omega(1)..Omega(2n-3) are needed
/// at order 2n.
inline Verdict cancellation_identity(const OperatorExpr& x, const std::string& label) {
  const OperatorExpr b = OperatorExpr::beta();
  const OperatorExpr o = OperatorExpr::generator(Generator::O);
  const OperatorExpr omega1 = Rational(-1, 2) * (b * o);
  const Rational half(1, 2);
  OperatorExpr lhs = half * commutator(omega1, commutator(x, b)) +
                     half * commutator(x, commutator(omega1, b));
  return Verdict::from_residual("cancellation identity (" + label + ")",
                                lhs - commutator(x, o));
}

inline Verdict cancellation_identity(int n, Generator field = Generator::E) {
  const SeriesTable omega_u = omega_u_series(2 * n - 1, field);
  const OperatorExpr x = omega_u.at(2 * n - 1).limit_s_infinity();
  return cancellation_identity(x, "n=" + std::to_string(n));
}

/// kappa^(2n+1) slice of (ad_Omega_u)^(2n) o omega_u vanishes identically in
/// s; the nested-ad terms are actually O(kappa^(2n+3)).
inline Verdict nested_ad_smallness(int n, Generator field = Generator::E) {
  const int order = 2 * n + 1;
  const OperatorExpr omega_u = omega_series(order, field).total().odd_part();
  const OperatorExpr big_omega = omega_u_series(order, field).total();
  OperatorExpr nested = omega_u;
  for (int i = 0; i < 2 * n; ++i) nested = commutator(big_omega, nested, order);
  return Verdict::from_residual("nested-ad smallness n=" + std::to_string(n),
                                nested.kappa_slice(order));
}

/// omega_g(s) = tanh(ad_Omega_u(s)) o omega_u(s), exact through max_order.
inline Verdict magnus_tanh_relation(int max_order, Generator field = Generator::E) {
  const OperatorExpr omega = omega_series(max_order, field).total();
  auto [omega_g, omega_u] = omega.parity_split();
  const OperatorExpr big_omega = omega_u_series(max_order - 1, field).total();
  const OperatorExpr rhs = detail::ad_power_sum(
      tanh_coefficients((max_order - 2) / 2), 2, 1, big_omega, omega_u, max_order);
  return Verdict::from_residual("omega_g = tanh(ad_Omega_u) o omega_u  (kappa^" +
                                    std::to_string(max_order) + ")",
                                omega_g - rhs);
}

/// Components of the sixth-order discrepancy between the Hamiltonian-flow
/// result and the energy-separating series.
struct DiscrepancyReport {
  Verdict first_form;    // hU(6)|F->E - h(6) = -1/32 b[E,[E,O^2]] + 1/64 [O^2,[O^2,E]]
  Verdict second_form;   // the same difference equals 1/32 [b[E,O^2], h(2)]
  Verdict even;          // difference commutes with beta
  Verdict self_adjoint;  // difference is hermitean
  bool nonzero = false;

  bool all_hold() const {
    return first_form.holds() && second_form.holds() && even.holds() &&
           self_adjoint.holds() && nonzero;
  }
};

/// `perturbation` scales the h(6) input and exists so the report provably
/// fails loudly when a coefficient drifts.
inline DiscrepancyReport discrepancy_check(const Rational& perturbation = Rational(1)) {
  const OperatorExpr h6 = perturbation * hnw_series(6, Generator::E).at(6);
  const OperatorExpr h2 = hnw_series(2, Generator::E).at(2);
  const OperatorExpr hu6 =
      bp_flow_series(6).at(6).substitute_generator(Generator::F, Generator::E);

  const OperatorExpr o2 =
      OperatorExpr::generator(Generator::O) * OperatorExpr::generator(Generator::O);
  const OperatorExpr e = OperatorExpr::generator(Generator::E);
  const OperatorExpr b = OperatorExpr::beta();

  const OperatorExpr difference = hu6 - h6;
  const OperatorExpr stated = Rational(-1, 32) * (b * commutator(e, commutator(e, o2))) +
                              Rational(1, 64) * commutator(o2, commutator(o2, e));
  const OperatorExpr bracket = Rational(1, 32) * commutator(b * commutator(e, o2), h2);

  DiscrepancyReport r;
  r.first_form = Verdict::from_residual("hU(6)|F->E - h(6), commutator form",
                                        difference - stated);
  r.second_form = Verdict::from_residual("hU(6)|F->E - h(6) = 1/32 [b[E,O^2], h(2)]",
                                         difference - bracket);
  r.even = Verdict::from_residual("discrepancy is even", difference.odd_part());
  r.self_adjoint =
      Verdict::from_residual("discrepancy is self-adjoint", difference.dagger() - difference);
  r.nonzero = !difference.is_zero();
  return r;
}

/// Weight of b([O,E])^2 inside h(6). The only source of the monomial
/// b*E*O^2*E is that square, so its coefficient measures the weight.
inline ExpPoly beta_commutator_square_weight(const OperatorExpr& h6) {
  Word w;
  w.beta = true;
  w.factors = {Generator::E, Generator::O, Generator::O, Generator::E};
  ExpPoly c = h6.coefficient(w);
  return Rational(-1) * c;
}

/// Fully expanded monomial form of a sixth-order term, split by degree in
/// the even field symbol for comparison with tabulated expansions.
struct MonomialTable {
  OperatorExpr expanded;
  OperatorExpr field_linear;     // terms with exactly one E
  OperatorExpr field_quadratic;  // terms with exactly two E
  OperatorExpr field_free;       // the b O^6 part

  ExpPoly coefficient(bool beta, std::vector<Generator> factors) const {
    Word w;
    w.beta = beta;
    w.factors = std::move(factors);
    return expanded.coefficient(w);
  }
};

inline MonomialTable monomial_table(const OperatorExpr& h6) {
  MonomialTable t;
  t.expanded = h6;  // canonical form is already a sum of monomials
  for (const auto& [word, coeff] : h6.terms()) {
    int field_count = 0;
    for (Generator g : word.factors)
      if (g != Generator::O) ++field_count;
    OperatorExpr* bucket = field_count == 0   ? &t.field_free
                           : field_count == 1 ? &t.field_linear
                                              : &t.field_quadratic;
    bucket->add_term(word, coeff);
  }
  return t;
}

}  // namespace diracflow
