#include "blockqn/optimizer.hpp"

#include <cmath>
#include <limits>

#include "blockqn/errors.hpp"
#include "blockqn/linalg.hpp"

namespace blockqn {

namespace {

constexpr double kRadiusCollapse = 1e-14;
constexpr int kMaxConsecutiveFailures = 5;
constexpr double kExactnessTol = 1e-6;

void validate_config(const OptConfig& cfg, Eigen::Index n) {
  if (cfg.w < 1) throw InvalidArgumentError("OptConfig: w must be >= 1");
  if (2 * cfg.w - 1 > n) throw InvalidArgumentError("OptConfig: 2w-1 must not exceed n");
  if (!(cfg.epsilon > 0.0)) throw InvalidArgumentError("OptConfig: epsilon must be > 0");
  if (!(cfg.delta > 0.0)) throw InvalidArgumentError("OptConfig: delta must be > 0");
  if (!(cfg.delta_max > 0.0)) throw InvalidArgumentError("OptConfig: delta_max must be > 0");
  if (cfg.max_iterations < 1) throw InvalidArgumentError("OptConfig: max_iterations must be >= 1");
  if (cfg.max_ghs < 1) throw InvalidArgumentError("OptConfig: max_ghs must be >= 1");
}

// Secant blocks scaled so every column of V carries comparable weight.
void build_secant_block(const HessianSample& sample, Eigen::MatrixXd& U, Eigen::MatrixXd& V) {
  const double gnorm = sample.g.norm();
  const Eigen::Index cols = sample.S.cols();
  U.resize(sample.S.rows(), cols + 1);
  V.resize(sample.S.rows(), cols + 1);
  U.leftCols(cols) = sample.S;
  U.col(cols) = sample.g / gnorm;
  V.leftCols(cols) = sample.Y;
  V.col(cols) = sample.h / gnorm;
}

// Verifies the inverse secant condition on the current sample after a block
// update; skipped (and counted as such) when the update thresholded.
void record_exactness(OptState& st, bool thresholded) {
  if (thresholded) {
    ++st.exactness.skipped;
    return;
  }
  ++st.exactness.checked;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < st.sample.S.cols(); ++j) {
    const double res = (st.H * st.sample.Y.col(j) - st.sample.S.col(j)).norm();
    worst = std::max(worst, res / st.sample.S.col(j).norm());
  }
  const double gres = (st.H * st.sample.h - st.sample.g).norm() / st.sample.g.norm();
  worst = std::max(worst, gres);
  st.exactness.max_residual = std::max(st.exactness.max_residual, worst);
  if (worst > kExactnessTol) ++st.exactness.violations;
}

// Radius shrink in response to a numerical failure in the subproblem
// machinery; bounded retries, after which the failure is surfaced.
StepInfo handle_numerical_failure(OptState& st, const std::string& what) {
  st.radius *= 0.25;
  ++st.k;
  ++st.counters.n_reject;
  StepInfo info;
  info.rho = std::numeric_limits<double>::quiet_NaN();
  info.accepted = false;
  if (++st.consecutive_failures > kMaxConsecutiveFailures) {
    info.numerical_failure = true;
    info.message = what;
  }
  return info;
}

}  // namespace

double compute_rho(double f_current, double f_trial, double predicted_decrease) {
  // A predicted decrease at rounding scale of the objective values makes the
  // ratio meaningless; force rejection instead of dividing cancellation noise.
  const double scale = std::max(std::abs(f_current), std::abs(f_trial));
  if (!(predicted_decrease > 1e-16 * scale)) return -std::numeric_limits<double>::infinity();
  return (f_current - f_trial) / predicted_decrease;
}

double update_radius(double radius, double rho, double step_norm, const OptConfig& cfg) {
  if (rho < 0.25) return 0.25 * radius;
  if (rho > 0.75 && std::abs(step_norm - radius) <= 1e-8 * radius)
    return std::min(2.0 * radius, cfg.delta_max);
  return radius;
}

OptState initialize(const ObjectiveProgram& prog, const Eigen::VectorXd& x0,
                    const OptConfig& cfg) {
  const Eigen::Index n = prog.dimension();
  validate_config(cfg, n);
  if (x0.size() != n) throw InvalidArgumentError("initialize: x0 has wrong dimension");
  if (!x0.allFinite()) throw InvalidArgumentError("initialize: x0 must be finite");

  OptState st;
  st.rng.seed(cfg.rng_seed);
  st.x = x0;
  st.f = prog.value(x0);
  st.counters.n_f = 1;

  const Eigen::Index width = 2 * cfg.w - 1;
  const Eigen::MatrixXd s0 = orth_padded(standard_normal(n, width, st.rng), width, st.rng);
  st.sample = sample_hessian(prog, st.x, s0, st.counters);

  const double gnorm = st.sample.g.norm();
  if (gnorm <= cfg.epsilon) {
    st.converged_at_init = true;
    return st;
  }

  const double alpha = mean_curvature(s0, st.sample.Y);
  st.radius = std::min(1.1 * gnorm / (2.0 * std::abs(alpha)), cfg.delta_max);

  Eigen::MatrixXd U, V;
  build_secant_block(st.sample, U, V);
  const Eigen::MatrixXd seed =
      (1.0 / alpha) * Eigen::MatrixXd::Identity(n, n);
  const QnUpdateResult up = qn_update(cfg.update, seed, U, V, cfg.delta);
  st.H = up.H;
  record_exactness(st, up.thresholded);

  st.Q = build_basis(st.sample.g, st.sample.h, st.sample.Y);
  st.model = assemble(st.H, st.Q, st.sample.g, st.radius);
  st.model_valid = true;
  return st;
}

StepInfo step(OptState& st, const ObjectiveProgram& prog, const OptConfig& cfg) {
  if (st.converged_at_init)
    throw InvalidArgumentError("step: state already converged at initialization");

  if (!st.model_valid) {
    try {
      st.model = assemble(st.H, st.Q, st.sample.g, st.radius);
      st.model_valid = true;
    } catch (const NumericalError& e) {
      return handle_numerical_failure(st, e.what());
    }
  }

  st.model.delta = st.radius;
  TrsSolution sol;
  try {
    sol = trs_small(st.model);
  } catch (const NumericalError& e) {
    return handle_numerical_failure(st, e.what());
  }
  st.consecutive_failures = 0;

  const Eigen::VectorXd p = st.H * (st.Q * sol.a);
  const double f_trial = prog.value(st.x + p);
  ++st.counters.n_f;
  const double predicted = -sol.model_value;
  const double rho = std::isfinite(f_trial)
                         ? compute_rho(st.f, f_trial, predicted)
                         : -std::numeric_limits<double>::infinity();
  st.radius = update_radius(st.radius, rho, p.norm(), cfg);
  ++st.k;

  StepInfo info;
  info.rho = rho;
  if (rho <= 0.0) {
    // Rejected: keep x, f, the sample, H, Q, and the assembled model; only
    // the radius and counters move.
    ++st.counters.n_reject;
    info.accepted = false;
    return info;
  }

  ++st.counters.n_accept;
  info.accepted = true;
  const Eigen::VectorXd g_old = st.sample.g;
  st.x += p;
  st.f = f_trial;

  const Eigen::MatrixXd s_new = next_directions(cfg.strategy, st.rng, st.x.size(), cfg.w,
                                                &st.sample.S, &st.sample.Y, &p);
  st.sample = sample_hessian(prog, st.x, s_new, st.counters);
  st.p_prev = p;

  if (st.sample.g.norm() == 0.0) {
    // Landed on an exact critical point; the caller terminates on |g|.
    st.model_valid = false;
    return info;
  }

  if (cfg.pflag) {
    const QnUpdateResult pre =
        qn_update(cfg.update, st.H, p, st.sample.g - g_old, cfg.delta);
    st.H = pre.H;
  }

  Eigen::MatrixXd U, V;
  build_secant_block(st.sample, U, V);
  const QnUpdateResult up = qn_update(cfg.update, st.H, U, V, cfg.delta);
  st.H = up.H;
  record_exactness(st, up.thresholded);

  st.Q = build_basis(st.sample.g, st.sample.h, st.sample.Y);
  try {
    st.model = assemble(st.H, st.Q, st.sample.g, st.radius);
    st.model_valid = true;
  } catch (const NumericalError& e) {
    st.model_valid = false;
    st.radius *= 0.25;
    if (++st.consecutive_failures > kMaxConsecutiveFailures) {
      info.numerical_failure = true;
      info.message = e.what();
    }
  }
  return info;
}

RunResult run(const ObjectiveProgram& prog, const Eigen::VectorXd& x0, const OptConfig& cfg) {
  RunResult result;
  OptState st;
  try {
    st = initialize(prog, x0, cfg);
  } catch (const std::runtime_error& e) {
    result.status = RunStatus::NumericalFailure;
    result.message = e.what();
    result.x_final = x0;
    return result;
  }

  auto finalize = [&](RunStatus status, std::string message = {}) {
    result.status = status;
    result.x_final = st.x;
    result.f_final = st.f;
    result.grad_norm_final = st.sample.g.norm();
    result.counters = st.counters;
    result.exactness = st.exactness;
    result.message = std::move(message);
    return result;
  };

  while (true) {
    const double gnorm = st.sample.g.norm();
    if (gnorm <= cfg.epsilon) return finalize(RunStatus::Converged);
    if (st.k >= cfg.max_iterations) return finalize(RunStatus::MaxIterations);
    if (st.counters.n_ghs >= cfg.max_ghs) return finalize(RunStatus::MaxGhs);
    if (st.radius < kRadiusCollapse) return finalize(RunStatus::TrustRegionCollapse);

    StepInfo info;
    try {
      info = step(st, prog, cfg);
    } catch (const std::runtime_error& e) {
      return finalize(RunStatus::NumericalFailure, e.what());
    }

    TraceRecord rec;
    rec.k = st.k;
    rec.n_ghs = st.counters.n_ghs;
    rec.n_f = st.counters.n_f;
    rec.f = st.f;
    rec.grad_norm = st.sample.g.norm();
    rec.delta = st.radius;
    rec.rho = info.rho;
    rec.accepted = info.accepted;
    result.trace.push_back(rec);

    if (info.numerical_failure)
      return finalize(RunStatus::NumericalFailure, info.message);
  }
}

}  // namespace blockqn
