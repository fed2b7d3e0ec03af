#pragma once

// Elliptic building block h(λ) = e^λ ∏_{i≥0} (1 − pⁱe^{−2λ})(1 − p^{i+1}e^{2λ}),
// an odd entire function proportional to the Jacobi θ₁(iλ). Every Boltzmann
// weight of the model is a ratio of products of h.

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <cmath>

#include "esos/types.hpp"

namespace esos {

/// The elliptic nome p = e^{2iπτ} together with the number of product
/// factors kept when evaluating h.
class Nome {
 public:
  /// Truncation order chosen so that |p|^K < 1e-20.
  explicit Nome(Complex p = 0.0);
  Nome(Complex p, int truncation_order);

  Complex p() const noexcept { return p_; }
  int truncation_order() const noexcept { return truncation_order_; }
  bool degenerate() const noexcept { return p_ == Complex{0.0, 0.0}; }

  /// iπτ = ½ log p on the principal branch; absent at p = 0.
  std::optional<Complex> tau_shift() const;

  static int default_truncation(double abs_p);

 private:
  Complex p_;
  int truncation_order_;
};

Complex eval_h(Complex lambda, const Nome& nome);

/// eval_h in extended precision, for the brute-force partition function.
WideComplex eval_h_wide(WideComplex lambda, const Nome& nome);

/// Local magnitude scale of h near x, used for relative near-zero tests.
inline double h_scale(Complex x) { return std::exp(std::abs(x.real())); }

/// eval_h that refuses values within `tol` (relative to h_scale) of zero.
/// `what` names the factor in the resulting NearPoleError.
Complex eval_h_nonzero(Complex x, const Nome& nome, std::string_view what,
                       double tol = kNearPoleTolerance);

/// (h(λ+iπ)/h(λ), h(λ+iπτ)/h(λ)). The second ratio is absent at p = 0 where
/// the iπτ shift is undefined.
std::pair<Complex, std::optional<Complex>> quasi_periodicity_factors(
    Complex lambda, const Nome& nome);

/// The closed forms the ratios above must reproduce: (−1, −e^{−2λ}p^{−1/2}).
std::pair<Complex, std::optional<Complex>> analytic_quasi_periodicity(
    Complex lambda, const Nome& nome);

using ComplexFunction = std::function<Complex(Complex)>;

struct ThetaCheckReport {
  bool is_theta = false;
  std::size_t tested = 0;
  std::size_t skipped = 0;
  double worst_residual = 0.0;
};

/// Tests f(λ+iπ) = (−1)^n f(λ) and
/// f(λ+iπτ) = (−1)^n p^{−n/2} e^{−2nλ − 2t} f(λ) at each sample point, where n
/// is the order and t the norm. Points where |f| is below 1e-10 of the largest
/// sampled |f| are skipped; throws InconclusiveError when all are skipped.
ThetaCheckReport check_theta_order_norm(const ComplexFunction& f, int order,
                                        Complex norm, const Nome& nome,
                                        std::span<const Complex> sample_points,
                                        double tol);

bool is_theta_of_order_norm(const ComplexFunction& f, int order, Complex norm,
                            const Nome& nome,
                            std::span<const Complex> sample_points, double tol);

}  // namespace esos
