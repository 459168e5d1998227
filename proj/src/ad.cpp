#include "blockqn/ad.hpp"

#include <cmath>
#include <vector>

#include "blockqn/errors.hpp"

namespace blockqn {

HvpSample sample_hvp(const ObjectiveProgram& prog, const Eigen::VectorXd& x,
                     const Eigen::MatrixXd& S) {
  const Eigen::Index n = prog.dimension();
  if (x.size() != n) throw InvalidArgumentError("sample_hvp: x has wrong dimension");
  if (S.rows() != n || S.cols() < 1)
    throw InvalidArgumentError("sample_hvp: S must be n x w with w >= 1");
  if (!x.allFinite()) throw EvaluationError("sample_hvp: non-finite input point");
  const Eigen::Index w = S.cols();

  std::vector<DualBatch> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    xs.emplace_back(x(i), Eigen::ArrayXd(S.row(i).transpose()));

  std::vector<DualBatch> gs(static_cast<std::size_t>(n));
  prog.gradient(std::span<const DualBatch>(xs), std::span<DualBatch>(gs));

  HvpSample out;
  out.g.resize(n);
  out.Y.resize(n, w);
  for (Eigen::Index i = 0; i < n; ++i) {
    const DualBatch& gi = gs[static_cast<std::size_t>(i)];
    if (!gi.all_finite())
      throw EvaluationError("sample_hvp: non-finite gradient output", i);
    out.g(i) = gi.value();
    if (gi.lanes() == 0) {
      out.Y.row(i).setZero();  // gradient component independent of x
    } else {
      out.Y.row(i) = gi.tangents().transpose();
    }
  }
  return out;
}

Eigen::VectorXd finite_difference_jvp(const ObjectiveProgram& prog,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& s, double step) {
  if (!(step > 0.0)) throw InvalidArgumentError("finite_difference_jvp: step must be > 0");
  Eigen::VectorXd plus(x.size()), minus(x.size());
  prog.gradient(x + step * s, plus);
  prog.gradient(x - step * s, minus);
  Eigen::VectorXd out = (plus - minus) / (2.0 * step);
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (!std::isfinite(out(i)))
      throw EvaluationError("finite_difference_jvp: non-finite evaluation", i);
  return out;
}

}  // namespace blockqn
