#include "blockqn/trs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "blockqn/errors.hpp"
#include "blockqn/linalg.hpp"

namespace blockqn {

Eigen::MatrixXd build_basis(const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                            const Eigen::MatrixXd& Y) {
  const double gnorm = g.norm();
  if (!(gnorm > 0.0)) throw InvalidArgumentError("build_basis: gradient must be nonzero");
  if (h.size() != g.size() || Y.rows() != g.size())
    throw InvalidArgumentError("build_basis: dimension mismatch");
  Eigen::MatrixXd block(g.size(), 2 + Y.cols());
  block.col(0) = h / gnorm;
  block.col(1) = g / gnorm;
  block.rightCols(Y.cols()) = Y;
  return orth(block);
}

SubproblemModel assemble(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Q,
                         const Eigen::VectorXd& g, double delta) {
  if (!(delta > 0.0)) throw InvalidArgumentError("assemble: delta must be > 0");
  if (H.rows() != H.cols() || Q.rows() != H.rows() || g.size() != H.rows())
    throw InvalidArgumentError("assemble: dimension mismatch");
  const Eigen::Index d = Q.cols();
  if (d < 1) throw InvalidArgumentError("assemble: empty basis");

  const Eigen::MatrixXd HQ = H * Q;
  SubproblemModel model;
  model.P = Q.transpose() * HQ;
  model.P = ((model.P + model.P.transpose()) / 2.0).eval();
  model.b = Q.transpose() * (H * g);
  model.C = HQ.transpose() * HQ;
  model.C = ((model.C + model.C.transpose()) / 2.0).eval();
  model.delta = delta;

  // C = (HQ)^T (HQ) is PSD by construction but goes singular when H is
  // (numerically) rank deficient on span(Q); guard before the solver sees it.
  SymEig eig = sym_eig(model.C);
  double lambda_min = eig.values(0);
  double lambda_max = eig.values(d - 1);
  if (lambda_min <= 0.0) {
    const double jitter = 1e-12 * model.C.trace() / static_cast<double>(d);
    if (!(jitter > 0.0))
      throw NotPositiveDefiniteError("assemble: curvature metric is not positive definite");
    model.C.diagonal().array() += jitter;
    lambda_min += jitter;
    lambda_max += jitter;
    if (lambda_min <= 0.0)
      throw NotPositiveDefiniteError("assemble: curvature metric is not positive definite");
  }
  if (lambda_max / lambda_min > 1e14)
    throw NotPositiveDefiniteError("assemble: curvature metric is too ill-conditioned");
  return model;
}

double model_value(const SubproblemModel& model, const Eigen::VectorXd& a) {
  return 0.5 * a.dot(model.P * a) + model.b.dot(a);
}

namespace {

double weighted_norm(const Eigen::VectorXd& lambda, const Eigen::VectorXd& c, double mu) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double t = c(i) / (lambda(i) + mu);
    sum += t * t;
  }
  return std::sqrt(sum);
}

// Solves sum_i c_i^2 / (lambda_i + mu)^2 = delta^2 for mu in (mu_lo, inf) by a
// safeguarded Newton iteration on phi(mu) = 1/|y(mu)| - 1/delta, which is
// increasing and nearly linear in mu. The bracket [lo, hi] always satisfies
// phi(lo) < 0 <= phi(hi).
double solve_secular(const Eigen::VectorXd& lambda, const Eigen::VectorXd& c, double delta,
                     double mu_lo) {
  double lo = mu_lo;
  double hi = std::max(mu_lo * (1.0 + 1e-12), c.norm() / delta - lambda(0));
  for (int grow = 0; weighted_norm(lambda, c, hi) > delta; ++grow) {
    if (grow > 200) throw NumericalError("trs_small: failed to bracket the secular root");
    hi = 2.0 * hi + 1.0;
  }

  double mu = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double norm = weighted_norm(lambda, c, mu);
    if (std::abs(norm - delta) <= 1e-12 * delta) return mu;
    if (norm > delta) {
      lo = mu;
    } else {
      hi = mu;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, mu)) return mu;

    double slope = 0.0;  // phi'(mu) = sum c_i^2/(lambda_i+mu)^3 / norm^3
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      const double t = lambda(i) + mu;
      slope += c(i) * c(i) / (t * t * t);
    }
    slope /= norm * norm * norm;
    const double phi = 1.0 / norm - 1.0 / delta;
    double next = slope > 0.0 ? mu - phi / slope : mu;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    mu = next;
  }
  std::ostringstream oss;
  oss << "trs_small: secular equation did not converge in 200 iterations (d=" << lambda.size()
      << ", delta=" << delta << ", lambda_min=" << lambda(0) << ")";
  throw NumericalError(oss.str());
}

// Deterministic sign convention: orient so the first component above
// rounding noise is positive.
double orientation_sign(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-14) return v(i) < 0.0 ? -1.0 : 1.0;
  return 1.0;
}

}  // namespace

TrsSolution trs_small(const SubproblemModel& model) {
  const Eigen::Index d = model.P.rows();
  if (d < 1 || model.P.cols() != d || model.C.rows() != d || model.C.cols() != d ||
      model.b.size() != d)
    throw InvalidArgumentError("trs_small: inconsistent model dimensions");
  if (!(model.delta > 0.0)) throw InvalidArgumentError("trs_small: delta must be > 0");
  const double delta = model.delta;

  // Reduce a^T C a <= delta^2 to |y| <= delta via y = L^T a.
  const Eigen::MatrixXd L = spd_factor(model.C);
  const auto lower = L.triangularView<Eigen::Lower>();
  const Eigen::MatrixXd tmp = lower.solve(model.P);
  Eigen::MatrixXd reduced = lower.solve(tmp.transpose()).transpose();
  reduced = ((reduced + reduced.transpose()) / 2.0).eval();
  const Eigen::VectorXd b_reduced = lower.solve(model.b);

  const SymEig eig = sym_eig(reduced);
  const Eigen::VectorXd& lambda = eig.values;
  const Eigen::VectorXd c = eig.vectors.transpose() * b_reduced;
  const double lambda_min = lambda(0);

  Eigen::VectorXd y_eig = Eigen::VectorXd::Zero(d);
  double mu = 0.0;
  bool on_boundary = false;

  if (b_reduced.norm() == 0.0) {
    if (lambda_min < 0.0) {
      // Pure negative-curvature step along the most negative eigenvector.
      const Eigen::VectorXd y =
          delta * orientation_sign(eig.vectors.col(0)) * eig.vectors.col(0);
      TrsSolution sol;
      sol.a = L.transpose().triangularView<Eigen::Upper>().solve(y);
      sol.mu = -lambda_min;
      sol.model_value = model_value(model, sol.a);
      sol.on_boundary = true;
      return sol;
    }
    // Zero gradient, PSD curvature: the origin is optimal.
    TrsSolution sol;
    sol.a = Eigen::VectorXd::Zero(d);
    sol.model_value = 0.0;
    return sol;
  }

  const double interior_norm = lambda_min > 0.0 ? weighted_norm(lambda, c, 0.0)
                                                : std::numeric_limits<double>::infinity();
  if (lambda_min > 0.0 && interior_norm <= delta) {
    for (Eigen::Index i = 0; i < d; ++i) y_eig(i) = -c(i) / lambda(i);
    mu = 0.0;
    on_boundary = false;
  } else {
    const double mu_lo = std::max(0.0, -lambda_min);
    // Split off the eigenspace that becomes singular at mu_lo.
    const double eig_gap_tol = 1e-12 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
    double partial_norm2 = 0.0;
    double c_singular2 = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (lambda(i) + mu_lo <= eig_gap_tol) {
        c_singular2 += c(i) * c(i);
      } else {
        const double t = c(i) / (lambda(i) + mu_lo);
        partial_norm2 += t * t;
      }
    }
    const bool hard_case = c_singular2 <= std::pow(1e-10 * c.norm(), 2) &&
                           partial_norm2 <= delta * delta;
    if (hard_case) {
      // Boundary unreachable through the secular equation: take mu at the
      // singular point and pad with the minimal eigenvector to reach it.
      mu = mu_lo;
      for (Eigen::Index i = 0; i < d; ++i)
        if (lambda(i) + mu_lo > eig_gap_tol) y_eig(i) = -c(i) / (lambda(i) + mu);
      const double tau = std::sqrt(std::max(0.0, delta * delta - partial_norm2));
      y_eig(0) += tau * orientation_sign(eig.vectors.col(0));
      on_boundary = true;
    } else {
      mu = solve_secular(lambda, c, delta, mu_lo);
      for (Eigen::Index i = 0; i < d; ++i) y_eig(i) = -c(i) / (lambda(i) + mu);
      on_boundary = true;
    }
  }

  const Eigen::VectorXd y = eig.vectors * y_eig;
  TrsSolution sol;
  sol.a = L.transpose().triangularView<Eigen::Upper>().solve(y);
  sol.mu = mu;
  sol.model_value = model_value(model, sol.a);
  sol.on_boundary = on_boundary;
  return sol;
}

}  // namespace blockqn
