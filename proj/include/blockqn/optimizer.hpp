#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockqn/objective.hpp"
#include "blockqn/qn_update.hpp"
#include "blockqn/rng.hpp"
#include "blockqn/sampling.hpp"
#include "blockqn/trs.hpp"

namespace blockqn {

struct OptConfig {
  Eigen::Index w = 4;           // sample half-width; blocks carry 2w-1 directions
  double epsilon = 1e-5;        // gradient-norm convergence tolerance
  double delta = 1e-12;         // pseudo-inverse tolerance for the QN updates
  double delta_max = 100.0;     // trust-region radius cap
  QnUpdateKind update = QnUpdateKind::SR1;
  DirectionStrategy strategy = DirectionStrategy::S4;
  bool pflag = false;           // preliminary single-secant update before the block update
  long long max_iterations = 100000;
  long long max_ghs = 100000;
  std::uint64_t rng_seed = 0;
};

enum class RunStatus { Converged, MaxIterations, MaxGhs, TrustRegionCollapse, NumericalFailure };

struct Counters : EvalCounters {
  long long n_f = 0;
  long long n_accept = 0;
  long long n_reject = 0;
};

/// Bookkeeping for the inverse-secant exactness property H Y = S, H h = g,
/// which must hold after each block update unless the pseudo-inverse
/// thresholded part of the secant system (those refreshes are skipped, not
/// checked).
struct ExactnessStats {
  long long checked = 0;
  long long skipped = 0;
  long long violations = 0;
  double max_residual = 0.0;  // worst relative residual among checked refreshes
};

struct TraceRecord {
  long long k = 0;
  long long n_ghs = 0;
  long long n_f = 0;
  double f = 0.0;
  double grad_norm = 0.0;
  double delta = 0.0;  // trust-region radius after this iteration's update
  double rho = 0.0;
  bool accepted = false;
};

struct RunResult {
  RunStatus status = RunStatus::NumericalFailure;
  Eigen::VectorXd x_final;
  double f_final = 0.0;
  double grad_norm_final = 0.0;
  Counters counters;
  ExactnessStats exactness;
  std::vector<TraceRecord> trace;
  std::string message;  // diagnostics for NumericalFailure
};

/// Full iterate state advanced by the trust-region loop.
struct OptState {
  long long k = 0;
  Eigen::VectorXd x;
  double f = 0.0;
  HessianSample sample;   // g, h, Y, S at x
  Eigen::MatrixXd H;      // inverse-Hessian approximation, kept symmetric
  Eigen::MatrixXd Q;      // orthonormal subspace basis
  SubproblemModel model;  // P, b, C for the current (H, Q, g)
  bool model_valid = false;
  double radius = 0.0;
  std::optional<Eigen::VectorXd> p_prev;  // last accepted step
  Counters counters;
  ExactnessStats exactness;
  Rng rng;
  bool converged_at_init = false;
  int consecutive_failures = 0;
};

struct StepInfo {
  double rho = 0.0;
  bool accepted = false;
  bool numerical_failure = false;  // unrecoverable; run() aborts
  std::string message;
};

/// Ratio of actual to predicted decrease. A predicted decrease at or below
/// 1e-16 * max(|f_current|, |f_trial|) — i.e. at the cancellation noise floor
/// of the numerator — returns -infinity, forcing rejection.
double compute_rho(double f_current, double f_trial, double predicted_decrease);

/// Standard radius control: shrink by 4 when rho < 0.25; double (capped at
/// delta_max) when rho > 0.75 and the step reached the boundary; otherwise
/// unchanged.
double update_radius(double radius, double rho, double step_norm, const OptConfig& cfg);

/// Draws the initial direction block, takes the first combined sample, seeds
/// H from the mean sampled curvature, and assembles the first subproblem.
/// When the initial gradient already satisfies the tolerance the state is
/// marked converged and the QN machinery is left unbuilt.
OptState initialize(const ObjectiveProgram& prog, const Eigen::VectorXd& x0,
                    const OptConfig& cfg);

/// One trust-region iteration: solve the subproblem, trial the step, update
/// the radius, and on acceptance resample and refresh H, Q, and the model.
/// Rejected iterations leave everything but the radius and counters intact.
StepInfo step(OptState& state, const ObjectiveProgram& prog, const OptConfig& cfg);

/// Runs to convergence or a budget/robustness stop, recording one trace
/// record per iteration.
RunResult run(const ObjectiveProgram& prog, const Eigen::VectorXd& x0, const OptConfig& cfg);

}  // namespace blockqn
