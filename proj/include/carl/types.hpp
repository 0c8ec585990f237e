// types.hpp  Scalar and matrix aliases shared by every module

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace carl {

using cd = std::complex<double>;

// 3x3 complex matrices in the mixed mode basis u = (a1*, a2, a3).
using Mat3 = Eigen::Matrix3cd;

// Real 6x6 quadrature covariance, variable order (x1, x2, x3, y1, y2, y3).
using RMat6 = Eigen::Matrix<double, 6, 6>;
using CMat6 = Eigen::Matrix<cd, 6, 6>;
using CMat4 = Eigen::Matrix4cd;

using Roots = std::array<cd, 3>;

inline constexpr cd kI{0.0, 1.0};

} // namespace carl
