#pragma once

#include <Eigen/Core>

namespace blockqn {

/// Ellipsoid-constrained quadratic subproblem in subspace coordinates:
///   minimize a^T P a / 2 + b^T a  subject to  a^T C a <= delta^2
/// with P possibly indefinite and C positive definite (after the jitter
/// policy applied in assemble()).
struct SubproblemModel {
  Eigen::MatrixXd P;
  Eigen::VectorXd b;
  Eigen::MatrixXd C;
  double delta = 0.0;
};

struct TrsSolution {
  Eigen::VectorXd a;
  double mu = 0.0;           // constraint multiplier, >= 0
  double model_value = 0.0;  // a^T P a / 2 + b^T a at the solution
  bool on_boundary = false;
};

/// Orthonormal basis for the search subspace spanned by
/// [h/|g|, g/|g|, Y]; rank deficiency shrinks the width.
Eigen::MatrixXd build_basis(const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                            const Eigen::MatrixXd& Y);

/// Projects the quadratic model onto the subspace: P = Q^T H Q,
/// b = Q^T H g, C = (H Q)^T (H Q), all explicitly symmetrized, with H Q
/// formed once. Throws NotPositiveDefiniteError when C is numerically
/// indefinite after the jitter policy or its condition estimate exceeds 1e14
/// (both signal H singular on the span of Q).
SubproblemModel assemble(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Q,
                         const Eigen::VectorXd& g, double delta);

/// Global minimizer of the ellipsoid-constrained subproblem. The constraint
/// is reduced to the unit ball by the Cholesky factor of C, the resulting
/// standard trust-region problem is solved through a symmetric
/// eigendecomposition plus a safeguarded Newton iteration on the
/// reciprocal-norm secular equation (hard case handled by a minimal
/// eigenvector correction), and the step is mapped back.
TrsSolution trs_small(const SubproblemModel& model);

/// a^T P a / 2 + b^T a; zero at a = 0, so the predicted decrease of a step is
/// the negated model value.
double model_value(const SubproblemModel& model, const Eigen::VectorXd& a);

}  // namespace blockqn
