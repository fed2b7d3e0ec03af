#include "esos/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "esos/errors.hpp"

namespace esos {

namespace {

constexpr double kTinyFloor = 1e-30;

struct LuResult {
  ComplexMatrix lu;
  bool odd_swaps = false;
  bool singular = false;
};

LuResult lu_partial_pivot(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (!m.allFinite()) throw DomainError("determinant: non-finite entry");

  LuResult out{m};
  auto& a = out.lu;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(a(k, k));
    for (Eigen::Index r = k + 1; r < n; ++r) {
      if (const double v = std::abs(a(r, k)); v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) {
      out.singular = true;
      return out;
    }
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      out.odd_swaps = !out.odd_swaps;
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const Complex factor = a(r, k) / a(k, k);
      a(r, k) = factor;
      a.block(r, k + 1, 1, n - k - 1) -= factor * a.block(k, k + 1, 1, n - k - 1);
    }
  }
  return out;
}

}  // namespace

Complex det_complex(const ComplexMatrix& m) {
  const LuResult f = lu_partial_pivot(m);
  if (f.singular) return 0.0;
  Complex det = f.odd_swaps ? -1.0 : 1.0;
  for (Eigen::Index k = 0; k < f.lu.rows(); ++k) det *= f.lu(k, k);
  return det;
}

std::optional<Complex> log_det_complex(const ComplexMatrix& m) {
  const LuResult f = lu_partial_pivot(m);
  if (f.singular) return std::nullopt;
  Complex acc{0.0, f.odd_swaps ? kPi : 0.0};
  for (Eigen::Index k = 0; k < f.lu.rows(); ++k) acc += std::log(f.lu(k, k));
  return Complex{acc.real(), std::arg(std::polar(1.0, acc.imag()))};
}

ResidualReport rel_compare(Complex a, Complex b, double scale) {
  const double diff = std::abs(a - b);
  const double denom = std::max({scale, std::abs(a), std::abs(b), kTinyFloor});
  return {diff / denom, diff, 0, 0};
}

ResidualReport rel_compare(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("rel_compare: shape mismatch");
  }
  ResidualReport report;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      const ResidualReport e = rel_compare(a(r, c), b(r, c), scale);
      if (e.max_relative > report.max_relative) {
        report.max_relative = e.max_relative;
        report.row = static_cast<std::size_t>(r);
        report.col = static_cast<std::size_t>(c);
      }
      report.max_absolute = std::max(report.max_absolute, e.max_absolute);
    }
  }
  return report;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double rel_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  return rel_compare(a, b, std::max(max_abs(a), max_abs(b))).max_relative;
}

std::optional<Complex> exp_if_finite(Complex log_value) {
  if (std::isinf(log_value.real()) && log_value.real() < 0) return Complex{0.0, 0.0};
  const Complex v = std::exp(log_value);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
  return v;
}

}  // namespace esos
