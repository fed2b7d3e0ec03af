#pragma once

#include <complex>

#include <Eigen/Dense>

namespace esos {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Extended precision, used only inside the brute-force partition function.
using WideComplex = std::complex<long double>;
using WideMatrix = Eigen::Matrix<WideComplex, Eigen::Dynamic, Eigen::Dynamic>;
using WideVector = Eigen::Matrix<WideComplex, Eigen::Dynamic, 1>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Relative threshold below which a denominator counts as zero.
inline constexpr double kNearPoleTolerance = 1e-12;

}  // namespace esos
