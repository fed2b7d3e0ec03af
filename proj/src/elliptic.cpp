#include "esos/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "esos/errors.hpp"

namespace esos {

namespace {

constexpr double kTruncationTarget = 1e-20;
constexpr int kMaxTruncation = 1'000'000;
constexpr double kThetaSkipTolerance = 1e-10;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double rel_diff(Complex a, Complex b) {
  const double denom = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / denom;
}

}  // namespace

Nome::Nome(Complex p) : Nome(p, default_truncation(std::abs(p))) {}

Nome::Nome(Complex p, int truncation_order) : p_(p), truncation_order_(truncation_order) {
  if (!finite(p) || std::abs(p) >= 1.0) {
    throw InvalidNome("nome must satisfy |p| < 1, got |p| = " + std::to_string(std::abs(p)));
  }
  if (truncation_order < 1) throw InvalidNome("truncation order must be >= 1");
}

int Nome::default_truncation(double abs_p) {
  if (abs_p == 0.0) return 1;
  const double k = std::ceil(std::log(kTruncationTarget) / std::log(abs_p));
  return static_cast<int>(std::clamp(k, 1.0, static_cast<double>(kMaxTruncation)));
}

std::optional<Complex> Nome::tau_shift() const {
  if (degenerate()) return std::nullopt;
  return 0.5 * std::log(p_);
}

namespace {

template <class T>
std::complex<T> h_series(std::complex<T> lambda, const Nome& nome) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw DomainError("eval_h: non-finite argument");
  }
  const T two = 2;
  if (nome.degenerate()) return two * std::sinh(lambda);

  const std::complex<T> p(nome.p().real(), nome.p().imag());
  const std::complex<T> one = 1;
  const std::complex<T> up = std::exp(two * lambda);
  const std::complex<T> down = std::exp(-two * lambda);
  std::complex<T> result = std::exp(lambda);
  std::complex<T> pk = 1;
  for (int i = 0; i < nome.truncation_order(); ++i) {
    const std::complex<T> pk1 = pk * p;
    result *= (one - pk * down) * (one - pk1 * up);
    pk = pk1;
  }
  return result;
}

}  // namespace

Complex eval_h(Complex lambda, const Nome& nome) { return h_series<double>(lambda, nome); }

WideComplex eval_h_wide(WideComplex lambda, const Nome& nome) {
  return h_series<long double>(lambda, nome);
}

Complex eval_h_nonzero(Complex x, const Nome& nome, std::string_view what, double tol) {
  const Complex value = eval_h(x, nome);
  if (std::abs(value) < tol * h_scale(x)) {
    throw NearPoleError(std::string(what), std::abs(value));
  }
  return value;
}

std::pair<Complex, std::optional<Complex>> quasi_periodicity_factors(Complex lambda,
                                                                     const Nome& nome) {
  const Complex base = eval_h_nonzero(lambda, nome, "h(lambda)");
  const Complex half_period = eval_h(lambda + kI * kPi, nome) / base;
  std::optional<Complex> quasi_period;
  if (auto shift = nome.tau_shift()) quasi_period = eval_h(lambda + *shift, nome) / base;
  return {half_period, quasi_period};
}

std::pair<Complex, std::optional<Complex>> analytic_quasi_periodicity(Complex lambda,
                                                                      const Nome& nome) {
  std::optional<Complex> quasi_period;
  if (auto shift = nome.tau_shift()) {
    // p^{-1/2} = e^{-iπτ}, on the same branch as the shift itself.
    quasi_period = -std::exp(-2.0 * lambda - *shift);
  }
  return {Complex{-1.0, 0.0}, quasi_period};
}

ThetaCheckReport check_theta_order_norm(const ComplexFunction& f, int order, Complex norm,
                                        const Nome& nome,
                                        std::span<const Complex> sample_points, double tol) {
  const auto shift = nome.tau_shift();
  if (!shift) throw InvalidNome("theta-function test needs p != 0");

  std::vector<Complex> values;
  values.reserve(sample_points.size());
  double scale = 0.0;
  for (Complex z : sample_points) {
    values.push_back(f(z));
    scale = std::max(scale, std::abs(values.back()));
  }

  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  ThetaCheckReport report;
  for (std::size_t k = 0; k < sample_points.size(); ++k) {
    const Complex z = sample_points[k];
    const Complex fz = values[k];
    if (!(std::abs(fz) > kThetaSkipTolerance * scale)) {
      ++report.skipped;
      continue;
    }
    const Complex expected_half = sign * fz;
    const Complex expected_quasi =
        sign * std::exp(-static_cast<double>(order) * (*shift + 2.0 * z) - 2.0 * norm) * fz;
    const double r1 = rel_diff(f(z + kI * kPi), expected_half);
    const double r2 = rel_diff(f(z + *shift), expected_quasi);
    report.worst_residual = std::max({report.worst_residual, r1, r2});
    ++report.tested;
  }
  if (report.tested == 0) {
    throw InconclusiveError("every sample point is too close to a zero of f");
  }
  report.is_theta = report.worst_residual <= tol;
  return report;
}

bool is_theta_of_order_norm(const ComplexFunction& f, int order, Complex norm,
                            const Nome& nome, std::span<const Complex> sample_points,
                            double tol) {
  return check_theta_order_norm(f, order, norm, nome, sample_points, tol).is_theta;
}

}  // namespace esos
