#include "blockqn/sampling.hpp"

#include "blockqn/errors.hpp"
#include "blockqn/linalg.hpp"

namespace blockqn {

HessianSample sample_hessian(const ObjectiveProgram& prog, const Eigen::VectorXd& x,
                             const Eigen::MatrixXd& S, EvalCounters& counters) {
  const Eigen::Index cols = S.cols();
  if (cols < 1 || cols % 2 == 0)
    throw InvalidArgumentError("sample_hessian: S must have 2w-1 columns, w >= 1");
  const Eigen::Index w = (cols + 1) / 2;

  const HvpSample first = sample_hvp(prog, x, S.leftCols(w));

  Eigen::MatrixXd second_dirs(S.rows(), w);
  second_dirs.leftCols(w - 1) = S.rightCols(w - 1);
  second_dirs.col(w - 1) = first.g;
  const HvpSample second = sample_hvp(prog, x, second_dirs);

  HessianSample out;
  out.g = first.g;
  out.h = second.Y.col(w - 1);
  out.Y.resize(S.rows(), cols);
  out.Y.leftCols(w) = first.Y;
  out.Y.rightCols(w - 1) = second.Y.leftCols(w - 1);
  out.S = S;

  counters.n_ghs += 1;
  counters.n_gad += 2;
  return out;
}

Eigen::MatrixXd orth_padded(const Eigen::MatrixXd& m, Eigen::Index width, Rng& rng) {
  const Eigen::Index n = m.rows();
  if (width > n)
    throw InvalidArgumentError("orth_padded: requested width exceeds the dimension");
  Eigen::MatrixXd q = orth(m);
  if (q.cols() >= width) return q.leftCols(width);

  Eigen::MatrixXd padded(n, width);
  padded.leftCols(q.cols()) = q;
  Eigen::Index have = q.cols();
  int attempts = 0;
  while (have < width) {
    if (++attempts > 100 * static_cast<int>(width))
      throw NumericalError("orth_padded: failed to complete an orthonormal block");
    Eigen::VectorXd v = standard_normal(n, 1, rng);
    auto basis = padded.leftCols(have);
    v -= basis * (basis.transpose() * v);
    v -= basis * (basis.transpose() * v);  // second pass for orthogonality to rounding
    const double norm = v.norm();
    if (norm <= 1e-10) continue;
    padded.col(have++) = v / norm;
  }
  return padded;
}

namespace {

// Appends the normalized step to a block and re-orthonormalizes at full width.
Eigen::MatrixXd with_step_appended(const Eigen::MatrixXd& block, const Eigen::VectorXd& p,
                                   Eigen::Index width, Rng& rng) {
  Eigen::MatrixXd combined(block.rows(), block.cols() + 1);
  combined.leftCols(block.cols()) = block;
  combined.col(block.cols()) = p / p.norm();
  return orth_padded(combined, width, rng);
}

Eigen::MatrixXd project_out(const Eigen::MatrixXd& m, const Eigen::MatrixXd& s_prev) {
  return m - s_prev * (s_prev.transpose() * m);
}

}  // namespace

Eigen::MatrixXd next_directions(DirectionStrategy strategy, Rng& rng, Eigen::Index n,
                                Eigen::Index w, const Eigen::MatrixXd* s_prev,
                                const Eigen::MatrixXd* y_prev,
                                const Eigen::VectorXd* p_prev) {
  if (w < 1) throw InvalidArgumentError("next_directions: w must be >= 1");
  const Eigen::Index width = 2 * w - 1;
  if (width > n) throw InvalidArgumentError("next_directions: 2w-1 exceeds the dimension");

  const bool needs_prev_dirs = strategy == DirectionStrategy::S2 ||
                               strategy == DirectionStrategy::S3 ||
                               strategy == DirectionStrategy::S5 ||
                               strategy == DirectionStrategy::S6;
  const bool needs_prev_curv =
      strategy == DirectionStrategy::S3 || strategy == DirectionStrategy::S6;
  if (needs_prev_dirs && s_prev == nullptr)
    throw InvalidArgumentError("next_directions: strategy requires previous directions");
  if (needs_prev_curv && y_prev == nullptr)
    throw InvalidArgumentError("next_directions: strategy requires previous curvature block");

  // Without an accepted step the step-including variants degrade to S1,
  // matching how the very first block is always drawn.
  const bool have_step = p_prev != nullptr && p_prev->norm() > 0.0;

  switch (strategy) {
    case DirectionStrategy::S1:
      return orth_padded(standard_normal(n, width, rng), width, rng);
    case DirectionStrategy::S2:
      return orth_padded(project_out(standard_normal(n, width, rng), *s_prev), width, rng);
    case DirectionStrategy::S3:
      return orth_padded(project_out(*y_prev, *s_prev), width, rng);
    case DirectionStrategy::S4: {
      if (!have_step) return orth_padded(standard_normal(n, width, rng), width, rng);
      const Eigen::MatrixXd inner = orth(standard_normal(n, width - 1, rng));
      return with_step_appended(inner, *p_prev, width, rng);
    }
    case DirectionStrategy::S5: {
      if (!have_step) return orth_padded(standard_normal(n, width, rng), width, rng);
      const Eigen::MatrixXd inner =
          orth(project_out(standard_normal(n, width - 1, rng), *s_prev));
      return with_step_appended(inner, *p_prev, width, rng);
    }
    case DirectionStrategy::S6: {
      if (!have_step) return orth_padded(standard_normal(n, width, rng), width, rng);
      const Eigen::MatrixXd truncated = y_prev->leftCols(y_prev->cols() - 1);
      const Eigen::MatrixXd inner = orth(project_out(truncated, *s_prev));
      return with_step_appended(inner, *p_prev, width, rng);
    }
  }
  throw InvalidArgumentError("next_directions: unknown strategy");
}

}  // namespace blockqn
