#pragma once

#include <cmath>

#include "diracflow/matrix_model.hpp"

namespace diracflow {

/// Energy-sign operator H / sqrt(H^2): the hermitian involution carrying the
/// sign of each eigenvalue.
inline Matrix sign_operator(const Matrix& h, double tolerance = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.eigenvalues().cwiseAbs().minCoeff() < tolerance)
    throw SingularSpectrum("eigenvalue below " + std::to_string(tolerance));
  RealVector d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = d[i] >= 0.0 ? 1.0 : -1.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

/// Exact beta-flow solution Z(s) = W beta W^{-1}, W = cosh(2sH) beta + sinh(2sH).
/// Evaluated in the factored form C (beta + Y) beta (beta + Y)^{-1} C^{-1}
/// with Y = tanh(2sH), which keeps every factor moderately conditioned.
inline Matrix exact_z(const MatrixModel& model, double s) {
  const Matrix h = model.hamiltonian();
  const double norm_h = spectral_norm_hermitian(h);
  if (s < 0.0 || 2.0 * s * norm_h > 40.0)
    throw std::invalid_argument("exact_z requires 0 <= s and 2*s*|H| <= 40");

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix& u = es.eigenvectors();
  const RealVector& lambda = es.eigenvalues();
  const Eigen::Index n = lambda.size();

  RealVector cosh_d(n), tanh_d(n), inv_cosh_d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cosh_d[i] = std::cosh(2.0 * s * lambda[i]);
    tanh_d[i] = std::tanh(2.0 * s * lambda[i]);
    inv_cosh_d[i] = 1.0 / cosh_d[i];
  }
  const Matrix c = u * cosh_d.asDiagonal() * u.adjoint();
  const Matrix c_inv = u * inv_cosh_d.asDiagonal() * u.adjoint();
  const Matrix y = u * tanh_d.asDiagonal() * u.adjoint();

  const Matrix beta_plus_y = model.beta + y;
  const Matrix inner = beta_plus_y * model.beta *
                       beta_plus_y.partialPivLu().inverse();
  const Matrix z = c * inner * c_inv;

  const Matrix w = c * beta_plus_y;  // = cosh(2sH) beta + sinh(2sH)
  const double residual = frobenius(z * w - w * model.beta) / frobenius(w);
  if (!(residual <= 1e-8))
    throw IllConditioned("W-solve residual " + std::to_string(residual));
  return z;
}

/// | centered-difference(Z,s,h)/2 - (H - Z H Z) |, expected O(h^2).
inline double riccati_residual(const MatrixModel& model, double s, double h) {
  if (!(h > 0.0) || h >= 1.0)
    throw std::invalid_argument("riccati_residual requires 0 < h << 1");
  const Matrix hm = model.hamiltonian();
  const Matrix z = exact_z(model, s);
  const Matrix dz = (exact_z(model, s + h) - exact_z(model, s - h)) / (2.0 * h);
  return frobenius(0.5 * dz - (hm - z * hm * z));
}

/// Flow unitary V(s) = (beta + Z)/sqrt((beta + Z)^2) * beta, V(0) = 1.
inline Matrix flow_v(const MatrixModel& model, const Matrix& z) {
  const Matrix bz = model.beta + z;
  const Matrix inv_root = hermitian_function(
      bz * bz, [](double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); });
  return inv_root * bz * model.beta;
}

struct EriksenResult {
  Matrix t;    // beta (beta + Lambda)/sqrt((beta + Lambda)^2)
  Matrix u_e;  // sqrt(beta Lambda), principal branch
  Matrix lambda;
};

/// Energy-separating unitary from the flow limit, together with Eriksen's
/// closed form; the two must agree to 1e-10.
inline EriksenResult eriksen_t(const MatrixModel& model) {
  const Matrix h = model.hamiltonian();
  const Matrix lambda = sign_operator(h);
  const Matrix beta_lambda = model.beta * lambda;

  Eigen::ComplexEigenSolver<Matrix> es(beta_lambda);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i] + 1.0) < 1e-8)
      throw EigenvalueMinusOne("beta*Lambda has an eigenvalue at -1");

  const Matrix bl = model.beta + lambda;
  const Matrix inv_root = hermitian_function(
      bl * bl, [](double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); });
  EriksenResult r;
  r.lambda = lambda;
  r.t = model.beta * bl * inv_root;
  r.u_e = normal_function(beta_lambda, [](Complex z) { return std::sqrt(z); });
  const double gap = frobenius(r.t - r.u_e);
  if (!(gap <= 1e-10))
    throw ConsistencyError("flow-limit transform and Eriksen form differ by " +
                           std::to_string(gap));
  return r;
}

/// Newton-Wigner Hamiltonian T H T^dag; even and energy-separating.
inline Matrix nw_exact(const MatrixModel& model) {
  const Matrix h = model.hamiltonian();
  const EriksenResult er = eriksen_t(model);
  const Matrix h_nw = er.t * h * er.t.adjoint();
  if (!(frobenius(comm(model.beta, h_nw)) <= 1e-10))
    throw ConsistencyError("transformed Hamiltonian is not even");
  const Matrix separated = model.beta * hermitian_sqrt(h_nw * h_nw);
  if (!(frobenius(h_nw - separated) <= 1e-10))
    throw ConsistencyError("transformed Hamiltonian is not energy-separating");
  return h_nw;
}

/// Special-class closed form Z_0(s) = tanh(2s sqrt(H^2) + artanh(beta Lambda)) Lambda,
/// valid when the model was built with e_mat = 0. Cross-checked against
/// exact_z to 1e-8.
inline Matrix special_class_z0(const MatrixModel& model, double s) {
  if (!model.e_mat.isZero(0.0))
    throw std::invalid_argument("special_class_z0 requires a model with e_mat = 0");
  const Matrix h = model.hamiltonian();
  const Matrix lambda = sign_operator(h);
  const Matrix beta_lambda = model.beta * lambda;

  // Principal artanh has branch cuts on the real axis outside (-1,1); report
  // spectrum on the cut instead of picking a branch.
  Eigen::ComplexEigenSolver<Matrix> arg_es(beta_lambda);
  for (Eigen::Index i = 0; i < arg_es.eigenvalues().size(); ++i) {
    const Complex ev = arg_es.eigenvalues()[i];
    if (std::abs(ev.imag()) < 1e-12 && std::abs(ev.real()) >= 1.0 - 1e-12)
      throw BranchFailure("artanh argument has spectrum on the branch cut");
  }
  const Matrix artanh_part = normal_function(beta_lambda, [](Complex z) {
    return 0.5 * (std::log(1.0 + z) - std::log(1.0 - z));
  });

  const Matrix root = hermitian_sqrt(h * h);
  const Matrix arg = 2.0 * s * root + artanh_part;
  const Matrix t0 = normal_function(arg, [](Complex z) { return std::tanh(z); });
  const Matrix z0 = t0 * lambda;

  const double agreement = frobenius(z0 - exact_z(model, s));
  if (!(agreement <= 1e-8))
    throw ConsistencyError("special-class closed form deviates from exact_z by " +
                           std::to_string(agreement));
  return z0;
}

}  // namespace diracflow
