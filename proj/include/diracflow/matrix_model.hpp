#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "diracflow/algebra.hpp"
#include "diracflow/matrix_functions.hpp"

namespace diracflow {

/// Finite-dimensional hermitian realization of the graded algebra:
/// beta = diag(+1 x m, -1 x m), o_mat anticommutes with beta (zero diagonal
/// blocks), e_mat commutes with beta (block diagonal). H = beta + kappa*o_mat
/// + kappa^2*e_mat.
struct MatrixModel {
  int dim = 0;
  std::uint64_t seed = 0;
  double kappa = 0.0;
  Matrix beta;
  Matrix o_mat;
  Matrix e_mat;

  Matrix hamiltonian() const {
    return beta + kappa * o_mat + kappa * kappa * e_mat;
  }
};

namespace detail {

inline double uniform_pm1(std::mt19937_64& rng) {
  // Explicit bit mapping keeps the draw identical across standard libraries.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

inline Matrix random_complex(int rows, int cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = uniform_pm1(rng);
      const double im = uniform_pm1(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

inline void normalize_spectral(Matrix& m) {
  const double norm = spectral_norm_hermitian(m);
  if (norm > 0.0) m /= norm;
}

}  // namespace detail

/// Deterministic random model. Entries are uniform in [-1,1] (real and
/// imaginary), hermitized, then scaled so |o_mat| = |e_mat| = 1 in spectral
/// norm. Redraws up to 8 times if H comes out near-singular, then throws
/// Degenerate. `special_class` zeroes e_mat so that {O-part, E-part} = 0.
inline MatrixModel build_model(int dim, std::uint64_t seed, double kappa,
                               bool special_class = false) {
  if (dim < 4 || dim % 2 != 0)
    throw std::invalid_argument("model dimension must be even and >= 4");
  const int m = dim / 2;

  MatrixModel model;
  model.dim = dim;
  model.seed = seed;
  model.kappa = kappa;
  model.beta = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) model.beta(i, i) = i < m ? 1.0 : -1.0;

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt <= 8; ++attempt) {
    const Matrix off = detail::random_complex(m, m, rng);
    model.o_mat = Matrix::Zero(dim, dim);
    model.o_mat.topRightCorner(m, m) = off;
    model.o_mat.bottomLeftCorner(m, m) = off.adjoint();
    detail::normalize_spectral(model.o_mat);

    model.e_mat = Matrix::Zero(dim, dim);
    if (!special_class) {
      const Matrix upper = detail::random_complex(m, m, rng);
      const Matrix lower = detail::random_complex(m, m, rng);
      model.e_mat.topLeftCorner(m, m) = 0.5 * (upper + upper.adjoint());
      model.e_mat.bottomRightCorner(m, m) = 0.5 * (lower + lower.adjoint());
      detail::normalize_spectral(model.e_mat);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().cwiseAbs().minCoeff() >= 1e-6) return model;
  }
  throw Degenerate("model stayed near-singular after 8 redraws (dim=" +
                   std::to_string(dim) + ", seed=" + std::to_string(seed) + ")");
}

/// Flow-parameter argument: a finite s or the s->infinity limit.
struct SPoint {
  std::optional<double> value;  // nullopt = infinity

  static SPoint at(double s) { return {s}; }
  static SPoint infinity() { return {std::nullopt}; }
};

/// Realizes a symbolic expression on a model: beta -> beta matrix,
/// O -> o_mat, E -> e_mat (unweighted), each word scaled by
/// kappa^kappaWeight(word); coefficients evaluated at s or their limit.
inline Matrix evaluate_symbolic(const OperatorExpr& expr, const MatrixModel& model,
                                const SPoint& s) {
  if (expr.contains_generator(Generator::F))
    throw FGeneratorPresent("expression contains the time-dependent generator F");
  Matrix acc = Matrix::Zero(model.dim, model.dim);
  for (const auto& [word, coeff] : expr.terms()) {
    const double c = s.value ? coeff.evaluate(*s.value)
                             : coeff.limit_s_infinity().to_double();
    if (c == 0.0) continue;
    Matrix factor = Matrix::Identity(model.dim, model.dim);
    if (word.beta) factor = model.beta;
    for (Generator g : word.factors)
      factor *= (g == Generator::O) ? model.o_mat : model.e_mat;
    acc += c * std::pow(model.kappa, word.kappa()) * factor;
  }
  return acc;
}

}  // namespace diracflow
