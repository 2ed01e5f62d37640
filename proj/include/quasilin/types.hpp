#pragma once

#include <Eigen/Core>

namespace quasilin {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = VectorX<double>;
using VectorRef = Eigen::Ref<const Vector>;

}  // namespace quasilin
