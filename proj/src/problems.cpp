#include "blockqn/problems.hpp"

#include "blockqn/errors.hpp"
#include "blockqn/linalg.hpp"
#include "blockqn/rng.hpp"
#include "blockqn/sampling.hpp"

namespace blockqn {

RosenbrockProgram::RosenbrockProgram(RosenbrockSpec spec) : spec_(spec) {
  if (spec_.n < 2) throw InvalidArgumentError("RosenbrockProgram: n must be >= 2");
  if (!(spec_.a > 0.0)) throw InvalidArgumentError("RosenbrockProgram: a must be > 0");
}

QuadraticProgram::QuadraticProgram(QuadraticSpec spec) : spec_(std::move(spec)) {
  if (spec_.A.rows() != spec_.A.cols())
    throw InvalidArgumentError("QuadraticProgram: A must be square");
  if (spec_.c.size() != spec_.A.rows())
    throw InvalidArgumentError("QuadraticProgram: c has wrong dimension");
  if ((spec_.A - spec_.A.transpose()).norm() > 1e-10 * std::max(1.0, spec_.A.norm()))
    throw InvalidArgumentError("QuadraticProgram: A must be symmetric");
}

QuadraticSpec make_spd_quadratic(Eigen::Index n, double eig_lo, double eig_hi,
                                 std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("make_spd_quadratic: n must be >= 1");
  if (!(eig_lo > 0.0) || eig_hi < eig_lo)
    throw InvalidArgumentError("make_spd_quadratic: need 0 < eig_lo <= eig_hi");
  Rng rng(seed);
  Eigen::VectorXd lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    lambda(i) = eig_lo * std::pow(eig_hi / eig_lo, t);
  }
  const Eigen::MatrixXd q = orth_padded(standard_normal(n, n, rng), n, rng);
  QuadraticSpec spec;
  spec.A = q * lambda.asDiagonal() * q.transpose();
  spec.A = ((spec.A + spec.A.transpose()) / 2.0).eval();
  spec.c = Eigen::VectorXd::Zero(n);
  return spec;
}

RosenbrockResult classify_rosenbrock_result(const Eigen::VectorXd& x) {
  if (x.size() < 1) throw InvalidArgumentError("classify_rosenbrock_result: empty point");
  if ((x.array() - 1.0).abs().maxCoeff() < 0.1) return RosenbrockResult::GlobalMin;
  if (x(0) < -0.5) return RosenbrockResult::SecondaryMin;
  return RosenbrockResult::Other;
}

}  // namespace blockqn
