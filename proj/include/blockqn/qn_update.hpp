#pragma once

#include <Eigen/Core>

namespace blockqn {

enum class QnUpdateKind { SR1, PSB };

struct QnUpdateResult {
  Eigen::MatrixXd H;
  // True when the pseudo-inverse zeroed part of the secant system, in which
  // case the block inverse secant condition H V = U is only guaranteed on the
  // retained subspace.
  bool thresholded = false;
};

/// Block symmetric-rank-one update: the minimal symmetric correction with
/// H' V = U. With R = U - H V,
///   H' = H + R (R^T V)^+_delta R^T,
/// re-symmetrized. Indefinite inputs and outputs are allowed; no curvature
/// filtering is performed. U = H V yields H' = H exactly.
QnUpdateResult sr1_update(const Eigen::MatrixXd& H, const Eigen::MatrixXd& U,
                          const Eigen::MatrixXd& V, double delta);

/// Block Powell-symmetric-Broyden update: the minimal-Frobenius-norm symmetric
/// correction with H' V = U. With T1 = (V^T V)^+_delta and
/// T2 = V T1 (U - H V)^T,
///   H' = H + T2 + T2^T - T2 V T1 V^T,
/// re-symmetrized.
QnUpdateResult psb_update(const Eigen::MatrixXd& H, const Eigen::MatrixXd& U,
                          const Eigen::MatrixXd& V, double delta);

QnUpdateResult qn_update(QnUpdateKind kind, const Eigen::MatrixXd& H,
                         const Eigen::MatrixXd& U, const Eigen::MatrixXd& V, double delta);

/// Mean eigenvalue of (S^T Y + Y^T S)/2, computed as trace(S^T Y)/m and
/// clamped away from zero (|alpha| >= 1e-8, sign preserved, sign(0) = +).
/// Seeds the initial inverse-curvature scale.
double mean_curvature(const Eigen::MatrixXd& S, const Eigen::MatrixXd& Y);

}  // namespace blockqn
