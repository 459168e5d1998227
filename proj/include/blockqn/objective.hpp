#pragma once

#include <Eigen/Core>
#include <span>

#include "blockqn/dual.hpp"

namespace blockqn {

/// A smooth objective together with its analytic gradient program.
///
/// The gradient program is the thing forward-mode AD differentiates, so both
/// the value and gradient programs must be evaluable on plain doubles and on
/// DualBatch scalars, with identical value channels. Implementations derive
/// from GenericObjective below and write the programs once, generic over the
/// scalar type.
class ObjectiveProgram {
 public:
  virtual ~ObjectiveProgram() = default;

  virtual Eigen::Index dimension() const = 0;

  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) const = 0;

  virtual DualBatch value(std::span<const DualBatch> x) const = 0;
  virtual void gradient(std::span<const DualBatch> x, std::span<DualBatch> g) const = 0;

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(x.size());
    gradient(x, g);
    return g;
  }
};

/// CRTP adapter wiring a scalar-generic implementation into the virtual
/// interface. Derived provides
///   template <class S> S value_impl(std::span<const S> x) const;
///   template <class S> void gradient_impl(std::span<const S> x, std::span<S> g) const;
/// and both the double and DualBatch instantiations come from that one body.
template <class Derived>
class GenericObjective : public ObjectiveProgram {
 public:
  double value(const Eigen::VectorXd& x) const final {
    return derived().template value_impl<double>(
        {x.data(), static_cast<std::size_t>(x.size())});
  }

  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) const final {
    g.resize(x.size());
    derived().template gradient_impl<double>(
        {x.data(), static_cast<std::size_t>(x.size())},
        {g.data(), static_cast<std::size_t>(g.size())});
  }

  DualBatch value(std::span<const DualBatch> x) const final {
    return derived().template value_impl<DualBatch>(x);
  }

  void gradient(std::span<const DualBatch> x, std::span<DualBatch> g) const final {
    derived().template gradient_impl<DualBatch>(x, g);
  }

 private:
  const Derived& derived() const { return static_cast<const Derived&>(*this); }
};

}  // namespace blockqn
