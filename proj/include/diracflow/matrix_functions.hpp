#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "diracflow/errors.hpp"

namespace diracflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline double frobenius(const Matrix& m) { return m.norm(); }

inline double spectral_norm_hermitian(const Matrix& m) {
  if (m.size() == 0 || m.isZero(0.0)) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline Matrix comm(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// f applied to a hermitian matrix through its eigendecomposition.
inline Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f(d[i]);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix hermitian_sqrt(const Matrix& h) {
  return hermitian_function(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

/// f applied to a diagonalizable (here: normal) matrix via ComplexEigenSolver.
inline Matrix normal_function(const Matrix& a, const std::function<Complex(Complex)>& f) {
  Eigen::ComplexEigenSolver<Matrix> es(a);
  Eigen::VectorXcd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f(d[i]);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().inverse();
}

/// Unitary exponential of an anti-hermitian matrix (omega = i * hermitian).
inline Matrix exp_antihermitian(const Matrix& omega) {
  const Matrix h = Complex(0, -1) * omega;  // hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase[i] = std::exp(Complex(0, es.eigenvalues()[i]));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// Least-squares slope of log(y) against log(x).
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace diracflow
