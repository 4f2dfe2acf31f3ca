#pragma once

#include <vector>

#include "diracflow/bracket_flow.hpp"
#include "diracflow/series.hpp"

namespace diracflow {

struct SweepResult {
  std::vector<double> kappas;
  std::vector<double> errors;
  double slope = 0.0;
};

/// Truncation error of the symbolic series against the exact transform:
/// err(kappa) = | H_NW - (beta + sum_{n<=order} eval(h(n))) | over a family
/// of models differing only in kappa. The log-log slope measures the first
/// omitted order (4, 6, 8 for truncations 2, 4, 6).
inline SweepResult convergence_sweep(int dim, std::uint64_t seed,
                                     const std::vector<double>& kappas,
                                     int truncation_order, const SeriesTable& h_series) {
  SweepResult r;
  r.kappas = kappas;
  for (double kappa : kappas) {
    const MatrixModel model = build_model(dim, seed, kappa);
    Matrix approx = model.beta;
    for (int n = 2; n <= truncation_order; n += 2)
      approx += evaluate_symbolic(h_series.at(n), model, SPoint::infinity());
    r.errors.push_back(frobenius(nw_exact(model) - approx));
  }
  r.slope = log_log_slope(r.kappas, r.errors);
  return r;
}

struct UnitaryCheckResult {
  std::vector<double> kappas;
  std::vector<double> off_block;       // |[beta, e^{-Omega} H e^{Omega}]|
  std::vector<double> unitary_defect;  // |e^{Omega} (e^{Omega})^dag - 1|
  double slope = 0.0;
};

/// Exponentiates the evaluated Omega_u(infinity) series (orders 1,3,5) and
/// measures how even the conjugated Hamiltonian is; the residual scales as
/// kappa^7 because Omega(7) is the first omitted order.
inline UnitaryCheckResult omega_u_unitary_check(int dim, std::uint64_t seed,
                                                const std::vector<double>& kappas,
                                                const SeriesTable& omega_u_inf) {
  UnitaryCheckResult r;
  r.kappas = kappas;
  for (double kappa : kappas) {
    const MatrixModel model = build_model(dim, seed, kappa);
    Matrix omega = Matrix::Zero(dim, dim);
    for (const auto& [n, expr] : omega_u_inf.by_order)
      omega += evaluate_symbolic(expr, model, SPoint::infinity());
    const Matrix u = exp_antihermitian(omega);
    const Matrix conjugated = u.adjoint() * model.hamiltonian() * u;
    r.off_block.push_back(frobenius(comm(model.beta, conjugated)));
    r.unitary_defect.push_back(
        frobenius(u * u.adjoint() - Matrix::Identity(dim, dim)));
  }
  if (kappas.size() >= 2) r.slope = log_log_slope(r.kappas, r.off_block);
  return r;
}

}  // namespace diracflow
