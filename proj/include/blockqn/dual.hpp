#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>

namespace blockqn {

/// Forward-mode AD scalar carrying a batch of tangent components ("lanes").
///
/// Every lane propagates an independent directional derivative through the
/// same arithmetic, so one evaluation of a gradient program on DualBatch
/// inputs yields w Hessian-vector products at once. A DualBatch with zero
/// lanes acts as a constant (all tangents identically zero); plain double
/// literals mix in through dedicated overloads without widening. The value
/// channel performs exactly the operations a plain double evaluation would,
/// in the same order.
class DualBatch {
 public:
  DualBatch() = default;
  explicit DualBatch(double value) : value_(value) {}
  DualBatch(double value, Eigen::ArrayXd tangents)
      : value_(value), tangents_(std::move(tangents)) {}

  double value() const noexcept { return value_; }
  const Eigen::ArrayXd& tangents() const noexcept { return tangents_; }
  Eigen::Index lanes() const noexcept { return tangents_.size(); }

  double tangent(Eigen::Index lane) const {
    return lanes() == 0 ? 0.0 : tangents_(lane);
  }

  bool all_finite() const {
    return std::isfinite(value_) && (lanes() == 0 || tangents_.isFinite().all());
  }

  DualBatch operator-() const { return {-value_, -tangents_}; }

  DualBatch& operator+=(const DualBatch& o) { return *this = *this + o; }
  DualBatch& operator-=(const DualBatch& o) { return *this = *this - o; }
  DualBatch& operator*=(const DualBatch& o) { return *this = *this * o; }
  DualBatch& operator/=(const DualBatch& o) { return *this = *this / o; }
  DualBatch& operator+=(double o) { return *this = *this + o; }
  DualBatch& operator-=(double o) { return *this = *this - o; }
  DualBatch& operator*=(double o) { return *this = *this * o; }
  DualBatch& operator/=(double o) { return *this = *this / o; }

  friend DualBatch operator+(const DualBatch& a, const DualBatch& b) {
    if (a.lanes() == 0) return {a.value_ + b.value_, b.tangents_};
    if (b.lanes() == 0) return {a.value_ + b.value_, a.tangents_};
    return {a.value_ + b.value_, a.tangents_ + b.tangents_};
  }
  friend DualBatch operator-(const DualBatch& a, const DualBatch& b) {
    if (a.lanes() == 0) return {a.value_ - b.value_, (-b.tangents_).eval()};
    if (b.lanes() == 0) return {a.value_ - b.value_, a.tangents_};
    return {a.value_ - b.value_, a.tangents_ - b.tangents_};
  }
  friend DualBatch operator*(const DualBatch& a, const DualBatch& b) {
    if (a.lanes() == 0) return {a.value_ * b.value_, (a.value_ * b.tangents_).eval()};
    if (b.lanes() == 0) return {a.value_ * b.value_, (b.value_ * a.tangents_).eval()};
    return {a.value_ * b.value_, a.tangents_ * b.value_ + b.tangents_ * a.value_};
  }
  friend DualBatch operator/(const DualBatch& a, const DualBatch& b) {
    const double q = a.value_ / b.value_;
    if (b.lanes() == 0) return {q, (a.tangents_ / b.value_).eval()};
    if (a.lanes() == 0) return {q, (-q / b.value_ * b.tangents_).eval()};
    return {q, (a.tangents_ - q * b.tangents_) / b.value_};
  }

  friend DualBatch operator+(const DualBatch& a, double b) { return {a.value_ + b, a.tangents_}; }
  friend DualBatch operator+(double a, const DualBatch& b) { return {a + b.value_, b.tangents_}; }
  friend DualBatch operator-(const DualBatch& a, double b) { return {a.value_ - b, a.tangents_}; }
  friend DualBatch operator-(double a, const DualBatch& b) { return {a - b.value_, (-b.tangents_).eval()}; }
  friend DualBatch operator*(const DualBatch& a, double b) { return {a.value_ * b, (a.tangents_ * b).eval()}; }
  friend DualBatch operator*(double a, const DualBatch& b) { return {a * b.value_, (a * b.tangents_).eval()}; }
  friend DualBatch operator/(const DualBatch& a, double b) { return {a.value_ / b, (a.tangents_ / b).eval()}; }
  friend DualBatch operator/(double a, const DualBatch& b) {
    const double q = a / b.value_;
    return {q, (-q / b.value_ * b.tangents_).eval()};
  }

  // Branch decisions follow the value channel.
  friend bool operator<(const DualBatch& a, const DualBatch& b) { return a.value_ < b.value_; }
  friend bool operator>(const DualBatch& a, const DualBatch& b) { return a.value_ > b.value_; }
  friend bool operator<=(const DualBatch& a, const DualBatch& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const DualBatch& a, const DualBatch& b) { return a.value_ >= b.value_; }
  friend bool operator<(const DualBatch& a, double b) { return a.value_ < b; }
  friend bool operator>(const DualBatch& a, double b) { return a.value_ > b; }
  friend bool operator<(double a, const DualBatch& b) { return a < b.value_; }
  friend bool operator>(double a, const DualBatch& b) { return a > b.value_; }

 private:
  double value_ = 0.0;
  Eigen::ArrayXd tangents_;
};

inline DualBatch sqrt(const DualBatch& a) {
  const double v = std::sqrt(a.value());
  return {v, (a.tangents() / (2.0 * v)).eval()};
}

inline DualBatch exp(const DualBatch& a) {
  const double v = std::exp(a.value());
  return {v, (v * a.tangents()).eval()};
}

inline DualBatch log(const DualBatch& a) {
  return {std::log(a.value()), (a.tangents() / a.value()).eval()};
}

inline DualBatch sin(const DualBatch& a) {
  return {std::sin(a.value()), (std::cos(a.value()) * a.tangents()).eval()};
}

inline DualBatch cos(const DualBatch& a) {
  return {std::cos(a.value()), (-std::sin(a.value()) * a.tangents()).eval()};
}

inline DualBatch pow(const DualBatch& a, double p) {
  const double v = std::pow(a.value(), p);
  return {v, (p * std::pow(a.value(), p - 1.0) * a.tangents()).eval()};
}

inline DualBatch abs(const DualBatch& a) {
  return a.value() < 0.0 ? -a : a;
}

}  // namespace blockqn
