#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace diracflow;

TEST_CASE("beta is a fixed point of the double-bracket flow") {
  const MatrixModel model = build_model(8, 5, 0.0);
  const FlowTrajectory trajectory = double_bracket_flow(model, 2.0, 1e-2);
  for (const auto& sample : trajectory.samples) {
    CHECK(sample.phi == Catch::Approx(0.0).margin(1e-14));
    CHECK(sample.off_block < 1e-14);
  }
}

TEST_CASE("Phi decreases monotonically and the flow becomes even") {
  const MatrixModel model = build_model(8, 1, 0.2);
  const FlowTrajectory trajectory = double_bracket_flow(model, 6.0, 1e-3);

  double previous = trajectory.samples.front().phi;
  for (const auto& sample : trajectory.samples) {
    CHECK(sample.phi <= previous + 1e-12);
    CHECK(sample.phi >= 0.0);
    previous = sample.phi;
  }
  CHECK(trajectory.final().off_block <= 1e-6);

  // isospectral: eigenvalues preserved along the flow
  Eigen::SelfAdjointEigenSolver<Matrix> a(model.hamiltonian(), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> c(trajectory.final().h, Eigen::EigenvaluesOnly);
  CHECK((a.eigenvalues() - c.eigenvalues()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("flow matches the closed-form unitary representation") {
  MatrixModel model = build_model(8, 1, 0.1);

  // s = 0: both sides are H itself
  const RepresentationCheck at_zero = flow_representation_check(model, 0.0, 1e-3);
  CHECK(at_zero.representation_residual < 1e-12);

  for (double s : {0.5, 1.0, 2.0}) {
    const RepresentationCheck check = flow_representation_check(model, s, 1e-3);
    CHECK(check.representation_residual <= 1e-6);
    CHECK(check.v_square_residual <= 1e-10);
  }
}

TEST_CASE("representation residual floor scales as kappa^6, not with the step") {
  // The unitary (beta+Z)/sqrt((beta+Z)^2) beta matches the Dyson solution of
  // dV/ds = omega V only up to the even-sector (block-diagonal) ambiguity,
  // which first contributes at kappa^6. The residual therefore has a
  // step-independent floor proportional to kappa^6.
  auto residual_at = [](double kappa, double step) {
    const MatrixModel model = build_model(8, 1, kappa);
    return flow_representation_check(model, 2.0, step).representation_residual;
  };
  const double r_02 = residual_at(0.2, 1e-3);
  const double r_01 = residual_at(0.1, 1e-3);
  CHECK(r_02 / r_01 == Catch::Approx(64.0).margin(8.0));
  CHECK(residual_at(0.2, 5e-4) == Catch::Approx(r_02).epsilon(1e-3));
}

TEST_CASE("a hopeless step size collapses") {
  // The horizon must be large enough that ten halvings cannot reach a
  // stable step.
  const MatrixModel model = build_model(8, 1, 0.2);
  CHECK_THROWS_AS(double_bracket_flow(model, 1e5, 1e5), StepCollapse);
}

TEST_CASE("trajectory sampling") {
  const MatrixModel model = build_model(8, 1, 0.2);
  const FlowTrajectory trajectory = double_bracket_flow(model, 1.0, 1e-2);
  CHECK(trajectory.nearest(0.5).s == Catch::Approx(0.5).margin(5e-3));
  CHECK(trajectory.nearest(0.0).s == 0.0);
  CHECK(trajectory.nearest(10.0).s == trajectory.final().s);
}
