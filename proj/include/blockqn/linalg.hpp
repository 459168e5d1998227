#pragma once

#include <Eigen/Core>

namespace blockqn {

/// Orthonormal basis for the numerical column space of m, via pivoted QR.
/// Columns whose pivot magnitude falls at or below 1e-12 times the largest
/// pivot are dropped, so the result may have fewer columns than m (zero for an
/// all-zero input). Callers that need a fixed width pad afterwards.
Eigen::MatrixXd orth(const Eigen::MatrixXd& m);

/// SVD pseudo-inverse with singular values at or below delta * sigma_max
/// treated as zero. If dropped is non-null it receives the number of
/// singular values zeroed out.
Eigen::MatrixXd pinv_delta(const Eigen::MatrixXd& m, double delta,
                           Eigen::Index* dropped = nullptr);

struct SymEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

/// Symmetric eigendecomposition. The input must be symmetric to 1e-10
/// relative; it is symmetrized as (A + A^T)/2 before decomposition.
SymEig sym_eig(const Eigen::MatrixXd& a);

/// Lower Cholesky factor of a symmetric positive definite matrix. A failed
/// factorization is retried once with jitter 1e-12 * trace(C)/d added to the
/// diagonal; a second failure throws NotPositiveDefiniteError.
Eigen::MatrixXd spd_factor(const Eigen::MatrixXd& c);

}  // namespace blockqn
