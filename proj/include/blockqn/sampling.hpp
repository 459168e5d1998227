#pragma once

#include <Eigen/Core>

#include "blockqn/ad.hpp"
#include "blockqn/rng.hpp"

namespace blockqn {

struct EvalCounters {
  long long n_ghs = 0;  // combined gradient-and-Hessian-sample evaluations
  long long n_gad = 0;  // underlying forward-AD gradient passes (2 per sample)
};

/// Gradient plus curvature products at one point: g, h = (grad^2 f) g, and
/// Y = (grad^2 f) S for the sampled direction block S (n x (2w-1)).
struct HessianSample {
  Eigen::VectorXd g;
  Eigen::VectorXd h;
  Eigen::MatrixXd Y;
  Eigen::MatrixXd S;
};

/// Combined gradient-and-Hessian sample. Exactly two forward-AD passes: the
/// first over columns 1..w of S, the second over the remaining w-1 columns
/// with the just-computed gradient appended so that h = (grad^2 f) g falls
/// out of the last lane. Increments counters.n_ghs by 1 and counters.n_gad
/// by 2.
HessianSample sample_hessian(const ObjectiveProgram& prog, const Eigen::VectorXd& x,
                             const Eigen::MatrixXd& S, EvalCounters& counters);

/// Selection strategies for the next supplemental direction block.
///   S1: fresh random orthonormal block;
///   S2: random block orthogonalized against the previous directions;
///   S3: previous curvature block orthogonalized against the previous directions;
///   S4/S5/S6: as S1/S2/S3 but with the accepted step appended.
enum class DirectionStrategy { S1, S2, S3, S4, S5, S6 };

/// Next direction block, n x (2w-1) with orthonormal columns. s_prev / y_prev
/// / p_prev may be null when a strategy does not need them; S4-S6 fall back to
/// S1 when no previous step is available. Rank deficiency is repaired by
/// padding with fresh random orthogonal-complement columns, so the output
/// always has full width.
Eigen::MatrixXd next_directions(DirectionStrategy strategy, Rng& rng, Eigen::Index n,
                                Eigen::Index w, const Eigen::MatrixXd* s_prev,
                                const Eigen::MatrixXd* y_prev,
                                const Eigen::VectorXd* p_prev);

/// orth() padded back to `width` columns with fresh random directions
/// orthogonalized against the accumulated columns (candidates with projected
/// norm <= 1e-10 are redrawn).
Eigen::MatrixXd orth_padded(const Eigen::MatrixXd& m, Eigen::Index width, Rng& rng);

}  // namespace blockqn
