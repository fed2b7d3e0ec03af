#pragma once

#include <cstddef>
#include <optional>

#include "esos/types.hpp"

namespace esos {

/// Worst entrywise discrepancy between two equally shaped arrays.
struct ResidualReport {
  double max_relative = 0.0;
  double max_absolute = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

/// LU with partial pivoting (largest modulus). Exactly singular input gives 0.
Complex det_complex(const ComplexMatrix& m);

/// ln|det| + i·arg(det) from the same factorization; nullopt when det = 0.
/// Finite even when det itself would overflow a double.
std::optional<Complex> log_det_complex(const ComplexMatrix& m);

/// Entrywise |a−b| and |a−b| / max(scale, |a|, |b|, 1e-30).
ResidualReport rel_compare(Complex a, Complex b, double scale = 0.0);
ResidualReport rel_compare(const ComplexMatrix& a, const ComplexMatrix& b, double scale = 0.0);

/// Shorthand for a comparison normalized by the largest entry of either side.
double rel_residual(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);

/// exp(log_value) when it is a finite double, nullopt otherwise.
std::optional<Complex> exp_if_finite(Complex log_value);

}  // namespace esos
