#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace eiregret {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;

// Axis-aligned box domain. Invariant: lo.size() == hi.size() and lo < hi
// elementwise.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }

  static Box unit(int d) {
    if (d < 1) throw std::invalid_argument("Box::unit: dimension must be >= 1");
    return Box{Vector::Zero(d), Vector::Ones(d)};
  }

  bool contains(const Eigen::Ref<const Vector>& x, double tol = 0.0) const {
    if (x.size() != lo.size()) return false;
    return (x.array() >= lo.array() - tol).all() &&
           (x.array() <= hi.array() + tol).all();
  }

  Vector clamp(const Eigen::Ref<const Vector>& x) const {
    return x.array().max(lo.array()).min(hi.array());
  }

  // Affine map from the unit cube and its inverse.
  Vector from_unit(const Eigen::Ref<const Vector>& u) const {
    return lo.array() + u.array() * (hi - lo).array();
  }
  Vector to_unit(const Eigen::Ref<const Vector>& x) const {
    return (x - lo).array() / (hi - lo).array();
  }
};

}  // namespace eiregret
