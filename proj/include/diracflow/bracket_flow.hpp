#pragma once

#include <vector>

#include "diracflow/closed_form.hpp"

namespace diracflow {

/// Sampled numerical solution of dH/ds = [[beta,H],H] with diagnostics.
struct FlowTrajectory {
  struct Sample {
    double s;
    Matrix h;
    double phi;        // 1/2 tr((H - beta)^2)
    double off_block;  // |[beta, H]|
  };

  std::vector<Sample> samples;
  double step = 0.0;

  const Sample& final() const { return samples.back(); }

  /// Sample with s closest to the requested value.
  const Sample& nearest(double s) const {
    const Sample* best = &samples.front();
    for (const Sample& sample : samples)
      if (std::abs(sample.s - s) < std::abs(best->s - s)) best = &sample;
    return *best;
  }
};

namespace detail {

inline double phi_functional(const Matrix& h, const Matrix& beta) {
  const Matrix d = h - beta;
  return 0.5 * (d * d).trace().real();
}

inline Matrix double_bracket_rhs(const Matrix& beta, const Matrix& h) {
  return comm(comm(beta, h), h);
}

inline Matrix rk4_step(const Matrix& beta, const Matrix& h, double step) {
  const Matrix k1 = double_bracket_rhs(beta, h);
  const Matrix k2 = double_bracket_rhs(beta, h + 0.5 * step * k1);
  const Matrix k3 = double_bracket_rhs(beta, h + 0.5 * step * k2);
  const Matrix k4 = double_bracket_rhs(beta, h + step * k3);
  return h + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Fixed-step RK4 trajectory of the double-bracket flow. A step that would
/// increase Phi (beyond rounding) is halved, at most 10 times, after which
/// StepCollapse is thrown. Phi is non-increasing across accepted samples.
inline FlowTrajectory double_bracket_flow(const MatrixModel& model, double s_max,
                                          double step) {
  if (!(step > 0.0) || !(s_max >= 0.0))
    throw std::invalid_argument("double_bracket_flow requires step > 0 and s_max >= 0");
  const Matrix& beta = model.beta;
  FlowTrajectory trajectory;
  trajectory.step = step;

  Matrix h = model.hamiltonian();
  double s = 0.0;
  auto record = [&](double at, const Matrix& value) {
    trajectory.samples.push_back({at, value, detail::phi_functional(value, beta),
                                  frobenius(comm(beta, value))});
  };
  record(s, h);

  const double slack = 1e-12;
  while (s < s_max - 1e-15) {
    double current = std::min(step, s_max - s);
    Matrix next;
    int halvings = 0;
    for (;;) {
      next = detail::rk4_step(beta, h, current);
      if (detail::phi_functional(next, beta) <=
          trajectory.samples.back().phi + slack)
        break;
      if (++halvings > 10)
        throw StepCollapse("step underflow at s = " + std::to_string(s));
      current *= 0.5;
    }
    s += current;
    h = std::move(next);
    record(s, h);
  }
  return trajectory;
}

struct RepresentationCheck {
  double representation_residual;  // |H_flow(s) - V^dag(s) H V(s)|
  double v_square_residual;        // |V(s)V(s) - Z(s) beta|
};

/// Cross-validates the ODE trajectory against the closed-form unitary:
/// H(s) = V^dag(s) H V(s) and V(s)V(s) = Z(s) beta.
inline RepresentationCheck flow_representation_check(const MatrixModel& model, double s,
                                                     double step = 1e-3) {
  const Matrix h = model.hamiltonian();
  const Matrix z = exact_z(model, s);
  const Matrix v = flow_v(model, z);
  const Matrix h_flow = double_bracket_flow(model, s, step).final().h;
  return {frobenius(h_flow - v.adjoint() * h * v),
          frobenius(v * v - z * model.beta)};
}

}  // namespace diracflow
