#include "blockqn/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "blockqn/errors.hpp"

namespace blockqn {

namespace {
constexpr double kOrthDropTol = 1e-12;
}

Eigen::MatrixXd orth(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(kOrthDropTol);
  const Eigen::Index r = qr.rank();
  if (r == 0) return Eigen::MatrixXd(m.rows(), 0);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), r);
}

Eigen::MatrixXd pinv_delta(const Eigen::MatrixXd& m, double delta, Eigen::Index* dropped) {
  if (delta < 0.0) throw InvalidArgumentError("pinv_delta: delta must be >= 0");
  if (m.rows() == 0 || m.cols() == 0) {
    if (dropped) *dropped = 0;
    return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > delta * sigma_max && sigma(i) > 0.0) {
      inv(i) = 1.0 / sigma(i);
      ++kept;
    }
  }
  if (dropped) *dropped = sigma.size() - kept;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

SymEig sym_eig(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgumentError("sym_eig: matrix must be square");
  const double scale = a.norm();
  if ((a - a.transpose()).norm() > 1e-10 * std::max(1.0, scale))
    throw InvalidArgumentError("sym_eig: matrix is not symmetric to 1e-10 relative");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((a + a.transpose()) / 2.0);
  if (es.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigendecomposition did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::MatrixXd spd_factor(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) throw InvalidArgumentError("spd_factor: matrix must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  const double jitter = 1e-12 * c.trace() / static_cast<double>(c.rows());
  Eigen::MatrixXd cj = c;
  cj.diagonal().array() += jitter;
  llt.compute(cj);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  throw NotPositiveDefiniteError("spd_factor: matrix not positive definite after jitter");
}

}  // namespace blockqn
