#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>

#include "blockqn/objective.hpp"

namespace blockqn {

struct RosenbrockSpec {
  Eigen::Index n = 2;
  double a = 100.0;  // valley coupling coefficient
};

/// Generalized Rosenbrock function
///   f(x) = sum_{i=1}^{n-1} [ a (x_{i+1} - x_i^2)^2 + (x_i - 1)^2 ]
/// with its analytic gradient, both generic over the scalar type. Global
/// minimum at the all-ones point.
class RosenbrockProgram final : public GenericObjective<RosenbrockProgram> {
 public:
  explicit RosenbrockProgram(RosenbrockSpec spec);

  Eigen::Index dimension() const override { return spec_.n; }
  const RosenbrockSpec& spec() const { return spec_; }

  template <class S>
  S value_impl(std::span<const S> x) const {
    S f{0.0};
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      S t = x[i + 1] - x[i] * x[i];
      S r = x[i] - 1.0;
      f += spec_.a * t * t + r * r;
    }
    return f;
  }

  template <class S>
  void gradient_impl(std::span<const S> x, std::span<S> g) const {
    const double a = spec_.a;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
      S acc{0.0};
      if (i + 1 < n) acc += -4.0 * a * x[i] * (x[i + 1] - x[i] * x[i]) + 2.0 * (x[i] - 1.0);
      if (i > 0) acc += 2.0 * a * (x[i] - x[i - 1] * x[i - 1]);
      g[i] = acc;
    }
  }

 private:
  RosenbrockSpec spec_;
};

struct QuadraticSpec {
  Eigen::MatrixXd A;  // symmetric
  Eigen::VectorXd c;
};

/// f(x) = x^T A x / 2 + c^T x with gradient A x + c; the constant-Hessian
/// oracle problem.
class QuadraticProgram final : public GenericObjective<QuadraticProgram> {
 public:
  explicit QuadraticProgram(QuadraticSpec spec);

  Eigen::Index dimension() const override { return spec_.A.rows(); }
  const QuadraticSpec& spec() const { return spec_; }

  template <class S>
  S value_impl(std::span<const S> x) const {
    S f{0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      S row{0.0};
      for (std::size_t j = 0; j < x.size(); ++j)
        row += spec_.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
      f += 0.5 * x[i] * row + spec_.c(static_cast<Eigen::Index>(i)) * x[i];
    }
    return f;
  }

  template <class S>
  void gradient_impl(std::span<const S> x, std::span<S> g) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      S acc{0.0};
      for (std::size_t j = 0; j < x.size(); ++j)
        acc += spec_.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * x[j];
      g[i] = acc + spec_.c(static_cast<Eigen::Index>(i));
    }
  }

 private:
  QuadraticSpec spec_;
};

/// Deterministic SPD quadratic with geometrically spaced eigenvalues in
/// [eig_lo, eig_hi] and a random (seeded) eigenbasis; c = 0 so the minimizer
/// is the origin. Benchmark problem for convergence sanity runs.
QuadraticSpec make_spd_quadratic(Eigen::Index n, double eig_lo, double eig_hi,
                                 std::uint64_t seed);

enum class RosenbrockResult { GlobalMin, SecondaryMin, Other };

/// Classifies a terminal Rosenbrock iterate. Callers are expected to pass
/// (near-)stationary points; the secondary-minimum test is the x_1 < -0.5
/// signature of the non-global basin.
RosenbrockResult classify_rosenbrock_result(const Eigen::VectorXd& x);

}  // namespace blockqn
