#pragma once

#include <complex>

#include <Eigen/Dense>

namespace uiap {

using cxd = std::complex<double>;

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

} // namespace uiap
