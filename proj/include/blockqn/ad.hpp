#pragma once

#include <Eigen/Core>

#include "blockqn/objective.hpp"

namespace blockqn {

/// Output of one forward-AD pass over the gradient program: the gradient at x
/// and the Hessian-direction products Y = (grad^2 f)(x) * S.
struct HvpSample {
  Eigen::VectorXd g;
  Eigen::MatrixXd Y;
};

/// One batched forward-AD pass. Lane j of x_i is seeded with S(i, j), so the
/// value channel of the gradient output yields g and lane j yields column j of
/// (grad^2 f)(x) * S. Throws EvaluationError (with the offending output
/// coordinate) if a non-finite value appears.
HvpSample sample_hvp(const ObjectiveProgram& prog, const Eigen::VectorXd& x,
                     const Eigen::MatrixXd& S);

/// Central-difference directional second derivative,
/// (g(x + step*s) - g(x - step*s)) / (2*step); validation oracle for
/// sample_hvp and the combined Hessian sample.
Eigen::VectorXd finite_difference_jvp(const ObjectiveProgram& prog,
                                      const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& s, double step);

}  // namespace blockqn
