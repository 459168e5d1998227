#include "blockqn.h"

#include <cstring>
#include <memory>
#include <string>

#include "blockqn/errors.hpp"
#include "blockqn/optimizer.hpp"
#include "blockqn/problems.hpp"
#include "blockqn/rng.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const blockqn::InvalidArgumentError& e) {
    set_error(e.what());
    return BQN_ERROR_INVALID_ARGUMENT;
  } catch (const blockqn::EvaluationError& e) {
    set_error(e.what());
    return BQN_ERROR_EVALUATION;
  } catch (const blockqn::NumericalError& e) {
    set_error(e.what());
    return BQN_ERROR_NUMERICAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return BQN_ERROR_INTERNAL;
  }
}

}  // namespace

struct bqn_problem {
  std::unique_ptr<blockqn::ObjectiveProgram> program;
};

struct bqn_result {
  blockqn::RunResult result;
};

extern "C" {

const char* bqn_last_error(void) { return g_last_error.c_str(); }

int bqn_problem_create_rosenbrock(bqn_problem** out, int64_t n, double a) {
  return guarded([&] {
    if (out == nullptr) throw blockqn::InvalidArgumentError("null output pointer");
    auto p = std::make_unique<bqn_problem>();
    p->program = std::make_unique<blockqn::RosenbrockProgram>(
        blockqn::RosenbrockSpec{static_cast<Eigen::Index>(n), a});
    *out = p.release();
    return BQN_OK;
  });
}

int bqn_problem_create_quadratic(bqn_problem** out, int64_t n, const double* a_colmajor,
                                 const double* c) {
  return guarded([&] {
    if (out == nullptr || a_colmajor == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    if (n < 1) throw blockqn::InvalidArgumentError("n must be >= 1");
    blockqn::QuadraticSpec spec;
    spec.A = Eigen::Map<const Eigen::MatrixXd>(a_colmajor, n, n);
    spec.c = c != nullptr ? Eigen::Map<const Eigen::VectorXd>(c, n)
                          : Eigen::VectorXd::Zero(n).eval();
    auto p = std::make_unique<bqn_problem>();
    p->program = std::make_unique<blockqn::QuadraticProgram>(std::move(spec));
    *out = p.release();
    return BQN_OK;
  });
}

int bqn_problem_create_quadratic_spd(bqn_problem** out, int64_t n, double eig_lo,
                                     double eig_hi, uint64_t seed) {
  return guarded([&] {
    if (out == nullptr) throw blockqn::InvalidArgumentError("null output pointer");
    auto p = std::make_unique<bqn_problem>();
    p->program = std::make_unique<blockqn::QuadraticProgram>(
        blockqn::make_spd_quadratic(static_cast<Eigen::Index>(n), eig_lo, eig_hi, seed));
    *out = p.release();
    return BQN_OK;
  });
}

void bqn_problem_destroy(bqn_problem* p) { delete p; }

int64_t bqn_problem_dimension(const bqn_problem* p) {
  return p == nullptr ? -1 : static_cast<int64_t>(p->program->dimension());
}

int bqn_problem_value(const bqn_problem* p, const double* x, double* f_out) {
  return guarded([&] {
    if (p == nullptr || x == nullptr || f_out == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    const Eigen::Index n = p->program->dimension();
    *f_out = p->program->value(Eigen::Map<const Eigen::VectorXd>(x, n));
    return BQN_OK;
  });
}

int bqn_problem_gradient(const bqn_problem* p, const double* x, double* g_out) {
  return guarded([&] {
    if (p == nullptr || x == nullptr || g_out == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    const Eigen::Index n = p->program->dimension();
    Eigen::VectorXd g(n);
    p->program->gradient(Eigen::Map<const Eigen::VectorXd>(x, n), g);
    Eigen::Map<Eigen::VectorXd>(g_out, n) = g;
    return BQN_OK;
  });
}

void bqn_options_defaults(bqn_options* opts) {
  if (opts == nullptr) return;
  const blockqn::OptConfig defaults;
  opts->w = static_cast<int32_t>(defaults.w);
  opts->epsilon = defaults.epsilon;
  opts->delta = defaults.delta;
  opts->delta_max = defaults.delta_max;
  opts->update = BQN_UPDATE_SR1;
  opts->strategy = BQN_STRATEGY_S4;
  opts->pflag = 0;
  opts->max_iterations = defaults.max_iterations;
  opts->max_ghs = defaults.max_ghs;
  opts->rng_seed = defaults.rng_seed;
}

int bqn_minimize(const bqn_problem* p, const double* x0, const bqn_options* opts,
                 bqn_result** out) {
  return guarded([&] {
    if (p == nullptr || x0 == nullptr || opts == nullptr || out == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    if (opts->update != BQN_UPDATE_SR1 && opts->update != BQN_UPDATE_PSB)
      throw blockqn::InvalidArgumentError("invalid update kind");
    if (opts->strategy < BQN_STRATEGY_S1 || opts->strategy > BQN_STRATEGY_S6)
      throw blockqn::InvalidArgumentError("invalid direction strategy");

    blockqn::OptConfig cfg;
    cfg.w = opts->w;
    cfg.epsilon = opts->epsilon;
    cfg.delta = opts->delta;
    cfg.delta_max = opts->delta_max;
    cfg.update = opts->update == BQN_UPDATE_SR1 ? blockqn::QnUpdateKind::SR1
                                                : blockqn::QnUpdateKind::PSB;
    cfg.strategy = static_cast<blockqn::DirectionStrategy>(opts->strategy);
    cfg.pflag = opts->pflag != 0;
    cfg.max_iterations = opts->max_iterations;
    cfg.max_ghs = opts->max_ghs;
    cfg.rng_seed = opts->rng_seed;

    const Eigen::Index n = p->program->dimension();
    auto r = std::make_unique<bqn_result>();
    r->result = blockqn::run(*p->program, Eigen::Map<const Eigen::VectorXd>(x0, n), cfg);
    *out = r.release();
    return BQN_OK;
  });
}

void bqn_result_destroy(bqn_result* r) { delete r; }

int bqn_result_status(const bqn_result* r) {
  switch (r->result.status) {
    case blockqn::RunStatus::Converged: return BQN_STATUS_CONVERGED;
    case blockqn::RunStatus::MaxIterations: return BQN_STATUS_MAX_ITERATIONS;
    case blockqn::RunStatus::MaxGhs: return BQN_STATUS_MAX_GHS;
    case blockqn::RunStatus::TrustRegionCollapse: return BQN_STATUS_TRUST_REGION_COLLAPSE;
    case blockqn::RunStatus::NumericalFailure: break;
  }
  return BQN_STATUS_NUMERICAL_FAILURE;
}

double bqn_result_f(const bqn_result* r) { return r->result.f_final; }
double bqn_result_grad_norm(const bqn_result* r) { return r->result.grad_norm_final; }

int bqn_result_x(const bqn_result* r, double* x_out, int64_t n) {
  return guarded([&] {
    if (r == nullptr || x_out == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    if (n != r->result.x_final.size())
      throw blockqn::InvalidArgumentError("output buffer has wrong dimension");
    Eigen::Map<Eigen::VectorXd>(x_out, n) = r->result.x_final;
    return BQN_OK;
  });
}

int64_t bqn_result_n_iterations(const bqn_result* r) {
  return static_cast<int64_t>(r->result.trace.size());
}
int64_t bqn_result_n_ghs(const bqn_result* r) { return r->result.counters.n_ghs; }
int64_t bqn_result_n_f(const bqn_result* r) { return r->result.counters.n_f; }
int64_t bqn_result_exactness_violations(const bqn_result* r) {
  return r->result.exactness.violations;
}
const char* bqn_result_message(const bqn_result* r) { return r->result.message.c_str(); }

int64_t bqn_result_trace_size(const bqn_result* r) {
  return static_cast<int64_t>(r->result.trace.size());
}

int bqn_result_trace_get(const bqn_result* r, int64_t index, bqn_trace_record* rec_out) {
  return guarded([&] {
    if (r == nullptr || rec_out == nullptr)
      throw blockqn::InvalidArgumentError("null pointer argument");
    if (index < 0 || index >= static_cast<int64_t>(r->result.trace.size()))
      throw blockqn::InvalidArgumentError("trace index out of range");
    const blockqn::TraceRecord& rec = r->result.trace[static_cast<std::size_t>(index)];
    rec_out->k = rec.k;
    rec_out->n_ghs = rec.n_ghs;
    rec_out->n_f = rec.n_f;
    rec_out->f = rec.f;
    rec_out->grad_norm = rec.grad_norm;
    rec_out->delta = rec.delta;
    rec_out->rho = rec.rho;
    rec_out->accepted = rec.accepted ? 1 : 0;
    return BQN_OK;
  });
}

int bqn_classify_rosenbrock(const double* x, int64_t n) {
  if (x == nullptr || n < 1) return BQN_ERROR_INVALID_ARGUMENT;
  switch (blockqn::classify_rosenbrock_result(Eigen::Map<const Eigen::VectorXd>(x, n))) {
    case blockqn::RosenbrockResult::GlobalMin: return BQN_CLASS_GLOBAL_MIN;
    case blockqn::RosenbrockResult::SecondaryMin: return BQN_CLASS_SECONDARY_MIN;
    case blockqn::RosenbrockResult::Other: break;
  }
  return BQN_CLASS_OTHER;
}

uint64_t bqn_mix_seed(uint64_t seed, uint64_t stream) {
  return blockqn::mix_seed(seed, stream);
}

int bqn_draw_uniform(uint64_t seed, int64_t n, double lo, double hi, double* out) {
  return guarded([&] {
    if (out == nullptr) throw blockqn::InvalidArgumentError("null output pointer");
    if (n < 1) throw blockqn::InvalidArgumentError("n must be >= 1");
    if (!(lo <= hi)) throw blockqn::InvalidArgumentError("need lo <= hi");
    blockqn::Rng rng(seed);
    Eigen::Map<Eigen::VectorXd>(out, n) = blockqn::uniform_vector(n, lo, hi, rng);
    return BQN_OK;
  });
}

}  // extern "C"
