#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "blockqn.h"

TEST_CASE("problem handles evaluate values and gradients") {
  bqn_problem* p = nullptr;
  REQUIRE(bqn_problem_create_rosenbrock(&p, 4, 100.0) == BQN_OK);
  CHECK(bqn_problem_dimension(p) == 4);

  const std::vector<double> ones(4, 1.0);
  double f = -1.0;
  REQUIRE(bqn_problem_value(p, ones.data(), &f) == BQN_OK);
  CHECK(f == 0.0);

  const std::vector<double> zeros(4, 0.0);
  std::vector<double> g(4);
  REQUIRE(bqn_problem_gradient(p, zeros.data(), g.data()) == BQN_OK);
  CHECK(g[0] == doctest::Approx(-2.0));
  CHECK(g[3] == doctest::Approx(0.0));
  bqn_problem_destroy(p);
}

TEST_CASE("invalid construction reports an error with a message") {
  bqn_problem* p = nullptr;
  CHECK(bqn_problem_create_rosenbrock(&p, 1, 100.0) == BQN_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(bqn_last_error()) > 0);
  CHECK(bqn_problem_create_quadratic_spd(&p, 5, -1.0, 2.0, 0) ==
        BQN_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("minimize drives a quadratic to convergence through the C surface") {
  bqn_problem* p = nullptr;
  REQUIRE(bqn_problem_create_quadratic_spd(&p, 12, 1.0, 30.0, 3) == BQN_OK);

  bqn_options opts;
  bqn_options_defaults(&opts);
  CHECK(opts.w == 4);
  CHECK(opts.epsilon == 1e-5);
  CHECK(opts.delta_max == 100.0);
  opts.w = 3;
  opts.epsilon = 1e-9;
  opts.rng_seed = 17;

  std::vector<double> x0(12);
  REQUIRE(bqn_draw_uniform(bqn_mix_seed(5, 1), 12, -1.0, 1.0, x0.data()) == BQN_OK);

  bqn_result* r = nullptr;
  REQUIRE(bqn_minimize(p, x0.data(), &opts, &r) == BQN_OK);
  CHECK(bqn_result_status(r) == BQN_STATUS_CONVERGED);
  CHECK(bqn_result_grad_norm(r) <= 1e-9);
  CHECK(bqn_result_n_ghs(r) >= 1);
  CHECK(bqn_result_exactness_violations(r) == 0);

  std::vector<double> x(12);
  REQUIRE(bqn_result_x(r, x.data(), 12) == BQN_OK);
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  CHECK(std::sqrt(norm2) <= 1e-6);  // minimizer at the origin

  const int64_t rows = bqn_result_trace_size(r);
  REQUIRE(rows == bqn_result_n_iterations(r));
  REQUIRE(rows > 0);
  bqn_trace_record rec;
  int64_t prev_ghs = 0;
  for (int64_t i = 0; i < rows; ++i) {
    REQUIRE(bqn_result_trace_get(r, i, &rec) == BQN_OK);
    CHECK(rec.k == i + 1);
    CHECK(rec.n_ghs >= prev_ghs);
    prev_ghs = rec.n_ghs;
  }
  CHECK(bqn_result_trace_get(r, rows, &rec) == BQN_ERROR_INVALID_ARGUMENT);

  bqn_result_destroy(r);
  bqn_problem_destroy(p);
}

TEST_CASE("minimize validates options") {
  bqn_problem* p = nullptr;
  REQUIRE(bqn_problem_create_rosenbrock(&p, 10, 100.0) == BQN_OK);
  bqn_options opts;
  bqn_options_defaults(&opts);
  opts.w = 60;  // 2w-1 > n
  std::vector<double> x0(10, 0.5);
  bqn_result* r = nullptr;
  CHECK(bqn_minimize(p, x0.data(), &opts, &r) == BQN_ERROR_INVALID_ARGUMENT);

  bqn_options_defaults(&opts);
  opts.strategy = 42;
  CHECK(bqn_minimize(p, x0.data(), &opts, &r) == BQN_ERROR_INVALID_ARGUMENT);
  CHECK(bqn_minimize(nullptr, x0.data(), &opts, &r) == BQN_ERROR_INVALID_ARGUMENT);
  bqn_problem_destroy(p);
}

TEST_CASE("classification through the C surface") {
  std::vector<double> x(6, 1.0);
  CHECK(bqn_classify_rosenbrock(x.data(), 6) == BQN_CLASS_GLOBAL_MIN);
  x[0] = -0.99;
  CHECK(bqn_classify_rosenbrock(x.data(), 6) == BQN_CLASS_SECONDARY_MIN);
  std::fill(x.begin(), x.end(), 0.0);
  CHECK(bqn_classify_rosenbrock(x.data(), 6) == BQN_CLASS_OTHER);
}

TEST_CASE("seed helpers are deterministic") {
  CHECK(bqn_mix_seed(1, 0) == bqn_mix_seed(1, 0));
  CHECK(bqn_mix_seed(1, 0) != bqn_mix_seed(1, 1));
  std::vector<double> a(8), b(8);
  REQUIRE(bqn_draw_uniform(9, 8, -1.0, 1.0, a.data()) == BQN_OK);
  REQUIRE(bqn_draw_uniform(9, 8, -1.0, 1.0, b.data()) == BQN_OK);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * 8) == 0);
  for (double v : a) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("minimize replicates runs bit for bit") {
  bqn_problem* p = nullptr;
  REQUIRE(bqn_problem_create_rosenbrock(&p, 16, 100.0) == BQN_OK);
  bqn_options opts;
  bqn_options_defaults(&opts);
  opts.w = 2;
  opts.rng_seed = 21;
  std::vector<double> x0(16);
  bqn_draw_uniform(bqn_mix_seed(21, 1), 16, -1.0, 1.0, x0.data());

  bqn_result *r1 = nullptr, *r2 = nullptr;
  REQUIRE(bqn_minimize(p, x0.data(), &opts, &r1) == BQN_OK);
  REQUIRE(bqn_minimize(p, x0.data(), &opts, &r2) == BQN_OK);
  REQUIRE(bqn_result_trace_size(r1) == bqn_result_trace_size(r2));
  bqn_trace_record a, b;
  for (int64_t i = 0; i < bqn_result_trace_size(r1); ++i) {
    bqn_result_trace_get(r1, i, &a);
    bqn_result_trace_get(r2, i, &b);
    CHECK(a.f == b.f);
    CHECK(a.grad_norm == b.grad_norm);
    CHECK(a.delta == b.delta);
  }
  bqn_result_destroy(r1);
  bqn_result_destroy(r2);
  bqn_problem_destroy(p);
}
