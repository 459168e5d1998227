#include <doctest.h>

#include <Eigen/Dense>

#include "blockqn/ad.hpp"
#include "blockqn/problems.hpp"
#include "test_helpers.hpp"

using namespace blockqn;

namespace {

// Central finite difference of the value program.
Eigen::VectorXd fd_gradient(const ObjectiveProgram& prog, const Eigen::VectorXd& x,
                            double step) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += step;
    xm(i) -= step;
    g(i) = (prog.value(xp) - prog.value(xm)) / (2.0 * step);
  }
  return g;
}

// Plain damped Newton descent with the exact (AD) Hessian; locates nearby
// stationary points for the classification study.
Eigen::VectorXd newton_descend(const ObjectiveProgram& prog, Eigen::VectorXd x) {
  const Eigen::Index n = prog.dimension();
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::VectorXd g(n);
    prog.gradient(x, g);
    if (g.norm() <= 1e-12) break;
    const HvpSample full = sample_hvp(prog, x, Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd step = full.Y.ldlt().solve(-g);
    double t = 1.0;
    const double f0 = prog.value(x);
    while (t > 1e-6 && prog.value(x + t * step) > f0) t /= 2.0;
    x += t * step;
  }
  return x;
}

}  // namespace

TEST_CASE("rosenbrock value and gradient at landmark points") {
  for (Eigen::Index n : {2, 5, 100}) {
    RosenbrockProgram prog({n, 100.0});
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    CHECK(prog.value(ones) == 0.0);
    CHECK(prog.gradient(ones).norm() == 0.0);
    CHECK(prog.value(Eigen::VectorXd::Zero(n)) == doctest::Approx(double(n - 1)));
  }
  RosenbrockProgram two({2, 100.0});
  CHECK(two.gradient(Eigen::Vector2d::Zero()).isApprox(Eigen::Vector2d(-2.0, 0.0)));
}

TEST_CASE("rosenbrock gradient matches finite differences of the value") {
  Rng rng(80);
  for (Eigen::Index n : {2, 10, 100}) {
    RosenbrockProgram prog({n, 100.0});
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = uniform_vector(n, -2.0, 2.0, rng);
      const Eigen::VectorXd fd = fd_gradient(prog, x, 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>()));
      const Eigen::VectorXd g = prog.gradient(x);
      CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("rosenbrock Hessian is symmetric and tridiagonal") {
  RosenbrockProgram prog({7, 100.0});
  Rng rng(81);
  const Eigen::VectorXd x = uniform_vector(7, -2.0, 2.0, rng);
  const HvpSample full = sample_hvp(prog, x, Eigen::MatrixXd::Identity(7, 7));
  CHECK((full.Y - full.Y.transpose()).norm() <= 1e-10 * full.Y.norm());
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (std::abs(i - j) > 1) CHECK(full.Y(i, j) == 0.0);
}

TEST_CASE("quadratic program basics") {
  QuadraticSpec spec;
  spec.A = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  spec.c = Eigen::Vector2d::Zero();
  QuadraticProgram prog(spec);
  CHECK(prog.value(Eigen::Vector2d(1.0, 1.0)) == doctest::Approx(1.5));
  CHECK(prog.gradient(Eigen::Vector2d(0.3, -0.7)).isApprox(Eigen::Vector2d(0.3, -1.4)));

  // Identity-Hessian sanity: gradient equals the point itself.
  QuadraticSpec id;
  id.A = Eigen::MatrixXd::Identity(6, 6);
  id.c = Eigen::VectorXd::Zero(6);
  QuadraticProgram idprog(id);
  Rng rng(82);
  const Eigen::VectorXd x = uniform_vector(6, -5.0, 5.0, rng);
  CHECK(idprog.gradient(x).isApprox(x));
}

TEST_CASE("quadratic curvature samples are exact") {
  Rng rng(83);
  QuadraticSpec spec;
  spec.A = blockqn::testing::random_symmetric(8, rng);
  spec.c = standard_normal(8, 1, rng);
  QuadraticProgram prog(spec);
  const Eigen::VectorXd x = uniform_vector(8, -3.0, 3.0, rng);
  const Eigen::MatrixXd s = standard_normal(8, 4, rng);
  const HvpSample out = sample_hvp(prog, x, s);
  CHECK((out.Y - spec.A * s).norm() <= 1e-13 * (spec.A * s).norm());
}

TEST_CASE("make_spd_quadratic spans the requested spectrum deterministically") {
  const QuadraticSpec spec = make_spd_quadratic(12, 1.0, 100.0, 5);
  CHECK(spec.A.isApprox(make_spd_quadratic(12, 1.0, 100.0, 5).A));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.A);
  CHECK(es.eigenvalues()(0) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(11) == doctest::Approx(100.0));
}

TEST_CASE("classification of terminal Rosenbrock iterates") {
  CHECK(classify_rosenbrock_result(Eigen::VectorXd::Ones(10)) == RosenbrockResult::GlobalMin);
  CHECK(classify_rosenbrock_result(Eigen::VectorXd::Zero(10)) == RosenbrockResult::Other);

  Eigen::VectorXd near_ones = Eigen::VectorXd::Ones(10);
  near_ones(3) += 0.05;
  CHECK(classify_rosenbrock_result(near_ones) == RosenbrockResult::GlobalMin);
}

TEST_CASE("the secondary Rosenbrock minimizer is where classification expects it") {
  const Eigen::Index n = 8;
  RosenbrockProgram prog({n, 100.0});
  Eigen::VectorXd start = Eigen::VectorXd::Ones(n);
  start(0) = -1.0;
  const Eigen::VectorXd stat = newton_descend(prog, start);

  REQUIRE(prog.gradient(stat).norm() <= 1e-8);
  // Verify it is a genuine local minimum, not a saddle.
  const HvpSample full = sample_hvp(prog, stat, Eigen::MatrixXd::Identity(n, n));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((full.Y + full.Y.transpose()) / 2.0);
  CHECK(es.eigenvalues()(0) > 0.0);
  CHECK(prog.value(stat) > 0.0);
  CHECK(stat(0) < -0.5);
  CHECK(classify_rosenbrock_result(stat) == RosenbrockResult::SecondaryMin);
}
