#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace stellar {

using Real = double;
using Complex = std::complex<Real>;

using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;
using Vector2c = Eigen::Vector2cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector3r = Eigen::Vector3d;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;

/// Thrown when a request exceeds the dense-tensor size caps (the library
/// stores 2^(2S)-dimensional amplitude vectors explicitly).
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace stellar
