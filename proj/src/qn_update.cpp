#include "blockqn/qn_update.hpp"

#include "blockqn/errors.hpp"
#include "blockqn/linalg.hpp"

namespace blockqn {

namespace {

void validate_secant_block(const Eigen::MatrixXd& H, const Eigen::MatrixXd& U,
                           const Eigen::MatrixXd& V, double delta) {
  if (H.rows() != H.cols()) throw InvalidArgumentError("qn_update: H must be square");
  if (U.rows() != H.rows() || V.rows() != H.rows() || U.cols() != V.cols() || U.cols() < 1)
    throw InvalidArgumentError("qn_update: U and V must be n x c with c >= 1");
  if (!(delta > 0.0)) throw InvalidArgumentError("qn_update: delta must be > 0");
  // Exact samples make U^T V symmetric to rounding; a large asymmetry is a
  // caller bug, not something to correct silently.
  const Eigen::MatrixXd gram = U.transpose() * V;
  const double asym = (gram - gram.transpose()).norm();
  if (asym > 1e-6 * std::max(gram.norm(), 1e-300))
    throw InvalidArgumentError("qn_update: U^T V is not symmetric (inconsistent secant block)");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return (m + m.transpose()) / 2.0;
}

}  // namespace

QnUpdateResult sr1_update(const Eigen::MatrixXd& H, const Eigen::MatrixXd& U,
                          const Eigen::MatrixXd& V, double delta) {
  validate_secant_block(H, U, V, delta);
  const Eigen::MatrixXd R = U - H * V;
  Eigen::Index dropped = 0;
  const Eigen::MatrixXd T = pinv_delta(R.transpose() * V, delta, &dropped);
  QnUpdateResult out;
  out.H = symmetrized(H + R * T * R.transpose());
  out.thresholded = dropped > 0;
  return out;
}

QnUpdateResult psb_update(const Eigen::MatrixXd& H, const Eigen::MatrixXd& U,
                          const Eigen::MatrixXd& V, double delta) {
  validate_secant_block(H, U, V, delta);
  Eigen::Index dropped = 0;
  const Eigen::MatrixXd T1 = pinv_delta(V.transpose() * V, delta, &dropped);
  const Eigen::MatrixXd T2 = V * T1 * (U - H * V).transpose();
  QnUpdateResult out;
  out.H = symmetrized(H + T2 + T2.transpose() - (T2 * V) * T1 * V.transpose());
  out.thresholded = dropped > 0;
  return out;
}

QnUpdateResult qn_update(QnUpdateKind kind, const Eigen::MatrixXd& H,
                         const Eigen::MatrixXd& U, const Eigen::MatrixXd& V, double delta) {
  return kind == QnUpdateKind::SR1 ? sr1_update(H, U, V, delta)
                                   : psb_update(H, U, V, delta);
}

double mean_curvature(const Eigen::MatrixXd& S, const Eigen::MatrixXd& Y) {
  if (S.rows() != Y.rows() || S.cols() != Y.cols() || S.cols() < 1)
    throw InvalidArgumentError("mean_curvature: S and Y must match with >= 1 column");
  // trace((S^T Y + Y^T S)/2) = trace(S^T Y) = sum of elementwise products.
  double alpha = (S.array() * Y.array()).sum() / static_cast<double>(S.cols());
  if (std::abs(alpha) < 1e-8) alpha = alpha < 0.0 ? -1e-8 : 1e-8;
  return alpha;
}

}  // namespace blockqn
