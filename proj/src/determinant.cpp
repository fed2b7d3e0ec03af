#include "esos/determinant.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esos/elliptic.hpp"
#include "esos/errors.hpp"
#include "esos/algebra.hpp"
#include "esos/numerics.hpp"

namespace esos {

namespace {

using Clock = std::chrono::steady_clock;
using ThetaLike = std::function<Complex(Complex)>;

Complex wrap_phase(Complex log_value) {
  return {log_value.real(), std::arg(std::polar(1.0, log_value.imag()))};
}

bool near_zero(Complex value, Complex arg) {
  return std::abs(value) < kNearPoleTolerance * h_scale(arg);
}

Complex checked(const ThetaLike& f, Complex x, const std::string& what) {
  const Complex v = f(x);
  if (near_zero(v, x)) throw NearPoleError(what, std::abs(v));
  return v;
}

/// h(λᵢ−ξⱼ+η)h(λᵢ+ξⱼ+η)h(λᵢ−ξⱼ)h(λᵢ+ξⱼ), one factor at a time.
std::array<Complex, 4> corner_args(Complex lambda, Complex xi, Complex eta) {
  return {lambda - xi + eta, lambda + xi + eta, lambda - xi, lambda + xi};
}

ComplexMatrix m_matrix(const ModelParams& p, const ThetaLike& f) {
  const std::size_t n = p.n_sites;
  ComplexMatrix m(n, n);
  const Complex tz = p.theta + p.zeta;
  const Complex h_eta = f(p.eta);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex l = p.lambdas[i];
    const std::string si = std::to_string(i + 1);
    const Complex row = f(2.0 * l) * h_eta /
                        (checked(f, tz + l, "h(theta+zeta+lambda_" + si + ")") *
                         checked(f, p.zeta + l, "h(zeta+lambda_" + si + ")"));
    for (std::size_t j = 0; j < n; ++j) {
      const std::string sj = std::to_string(j + 1);
      const auto args = corner_args(l, p.xis[j], p.eta);
      static const char* names[] = {"h(lambda_i-xi_j+eta)", "h(lambda_i+xi_j+eta)",
                                    "h(lambda_i-xi_j)", "h(lambda_i+xi_j)"};
      Complex denom = 1.0;
      for (int k = 0; k < 4; ++k) {
        denom *= checked(f, args[k], std::string(names[k]) + " [i=" + si + ",j=" + sj + "]");
      }
      m(i, j) = row * f(tz + p.xis[j]) * f(p.zeta - p.xis[j]) / denom;
    }
  }
  return m;
}

bool has_vanishing_corner(const ModelParams& p, const ThetaLike& f) {
  for (Complex l : p.lambdas)
    for (Complex xi : p.xis)
      for (Complex a : corner_args(l, xi, p.eta))
        if (near_zero(f(a), a)) return true;
  return false;
}

/// ln of det M · ∏_{i,j} corner(i, j), computed without dividing by the corners.
std::optional<Complex> log_det_with_corners(const ModelParams& p, const ThetaLike& f) {
  const std::size_t n = p.n_sites;
  const Complex tz = p.theta + p.zeta;
  const Complex h_eta = f(p.eta);
  ComplexMatrix m(n, n);
  Complex log_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex l = p.lambdas[i];
    const std::string si = std::to_string(i + 1);
    const Complex row = f(2.0 * l) * h_eta /
                        (checked(f, tz + l, "h(theta+zeta+lambda_" + si + ")") *
                         checked(f, p.zeta + l, "h(zeta+lambda_" + si + ")"));
    std::vector<Complex> corners(n, 1.0);
    for (std::size_t k = 0; k < n; ++k)
      for (Complex a : corner_args(l, p.xis[k], p.eta)) corners[k] *= f(a);
    for (std::size_t j = 0; j < n; ++j) {
      Complex v = row * f(tz + p.xis[j]) * f(p.zeta - p.xis[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) v *= corners[k];
      m(i, j) = v;
    }
    const double s = m.row(i).cwiseAbs().maxCoeff();
    if (s > 0.0) {
      m.row(i) /= s;
      log_scale += std::log(s);
    }
  }
  auto ld = log_det_complex(m);
  if (!ld) return std::nullopt;
  return *ld + log_scale;
}

Complex log_theta_prefactor(const ModelParams& p, const ThetaLike& f, ThetaPrefactor kind) {
  const int n = static_cast<int>(p.n_sites);
  Complex acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double d = kind == ThetaPrefactor::kRecursive ? n - i : n - 2 * i + 1;
    acc += std::log(f(p.theta + static_cast<double>(n - 2 * i) * p.eta));
    acc -= std::log(checked(f, p.theta + d * p.eta, "h(theta+" + std::to_string(d) + "*eta)"));
  }
  return acc;
}

/// ln of the closed formula (without any pinned normalization); nullopt for Z = 0.
std::optional<Complex> log_formula(const ModelParams& p, const ThetaLike& f,
                                   ThetaPrefactor kind) {
  const std::size_t n = p.n_sites;
  Complex acc = (n % 2 == 0) ? Complex{0.0, 0.0} : Complex{0.0, kPi};  // γ = (−1)^N
  acc += log_theta_prefactor(p, f, kind);

  if (has_vanishing_corner(p, f)) {
    auto ld = log_det_with_corners(p, f);
    if (!ld) return std::nullopt;
    acc += *ld;
  } else {
    auto ld = log_det_complex(m_matrix(p, f));
    if (!ld) return std::nullopt;
    acc += *ld;
    for (Complex l : p.lambdas)
      for (Complex xi : p.xis)
        for (Complex a : corner_args(l, xi, p.eta)) acc += std::log(f(a));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string ij = " [" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      acc -= std::log(checked(f, p.xis[j] + p.xis[i], "h(xi_j+xi_i)" + ij));
      acc -= std::log(checked(f, p.xis[j] - p.xis[i], "h(xi_j-xi_i)" + ij));
      acc -= std::log(checked(f, p.lambdas[j] - p.lambdas[i], "h(lambda_j-lambda_i)" + ij));
      acc -= std::log(
          checked(f, p.lambdas[j] + p.lambdas[i] + p.eta, "h(lambda_j+lambda_i+eta)" + ij));
    }
  }
  return wrap_phase(acc);
}

PartitionResult finish(Method method, const std::optional<Complex>& log_raw,
                       Complex log_normalization, Clock::time_point start) {
  PartitionResult r;
  r.method = method;
  r.log_normalization = log_normalization;
  if (log_raw) {
    r.log_value = wrap_phase(*log_raw + log_normalization);
    r.value = exp_if_finite(r.log_value);
    r.raw_value = exp_if_finite(*log_raw);
  } else {
    r.log_value = {-HUGE_VAL, 0.0};
    r.value = Complex{0.0, 0.0};
    r.raw_value = Complex{0.0, 0.0};
  }
  r.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

Complex log_sign(double s) { return s > 0 ? Complex{0.0, 0.0} : Complex{0.0, kPi}; }


PartitionResult route_value(const ModelParams& p, Route route) {
  return route == Route::kOracle ? partition_oracle(p) : partition_determinant(p);
}

double log_residual(Complex log_a, Complex log_b) {
  return std::abs(1.0 - std::exp(log_b - log_a));
}

Complex log_h(Complex x, const Nome& q) { return std::log(eval_h(x, q)); }

/// ln ∏ᵢ h(θ+(N−2i)η)/h(θ+(N−2i+1)η), the per-level θ factor of a recursion.
Complex log_level_factor(const ModelParams& p) {
  const int n = static_cast<int>(p.n_sites);
  Complex acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    acc += log_h(p.theta + static_cast<double>(n - 2 * i) * p.eta, p.nome);
    acc -= log_h(p.theta + static_cast<double>(n - 2 * i + 1) * p.eta, p.nome);
  }
  return acc;
}

ModelParams reduced(const ModelParams& p, std::size_t drop_lambda, std::size_t drop_xi) {
  ModelParams r = p;
  r.lambdas.erase(r.lambdas.begin() + static_cast<std::ptrdiff_t>(drop_lambda));
  r.xis.erase(r.xis.begin() + static_cast<std::ptrdiff_t>(drop_xi));
  r.n_sites = p.n_sites - 1;
  return r;
}

}  // namespace

IzerginMatrix build_m_matrix(const ModelParams& params) {
  const Nome q = params.nome;
  return {m_matrix(params, [q](Complex x) { return eval_h(x, q); })};
}

double formula_normalization(std::size_t n) {
  return ((n * (n + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
}

double trigonometric_log_constant(std::size_t n) {
  return static_cast<double>(n * n) * std::log(4.0);
}

PartitionResult partition_determinant(const ModelParams& params, ThetaPrefactor prefactor) {
  const auto start = Clock::now();
  const Nome q = params.nome;
  const auto log_raw = log_formula(params, [q](Complex x) { return eval_h(x, q); }, prefactor);
  return finish(Method::kDeterminant, log_raw,
                log_sign(formula_normalization(params.n_sites)), start);
}

Complex normalized_partition(const ModelParams& params, Complex z) {
  const Nome& q = params.nome;
  Complex factor = 1.0;
  for (Complex l : params.lambdas) {
    factor *= eval_h(params.theta + params.zeta + l, q) * eval_h(params.zeta + l, q) /
              eval_h_nonzero(2.0 * l, q, "h(2*lambda)");
  }
  return factor * z;
}

double check_recursion_lower(const ModelParams& p, Route route) {
  const std::size_t n = p.n_sites;
  if (n < 2) throw Error("recursion check needs N >= 2");
  if (p.lambdas[0] != p.xis[0]) throw Error("recursion check needs lambda_1 == xi_1 exactly");
  const Nome& q = p.nome;
  const Complex l1 = p.lambdas[0];
  const Complex x1 = p.xis[0];

  Complex log_factor = log_h(p.eta, q) + log_h(p.zeta - l1, q) - log_h(p.zeta + l1, q) +
                       log_level_factor(p);
  for (std::size_t i = 0; i < n; ++i) log_factor += log_h(p.lambdas[i] + x1, q);
  for (std::size_t i = 1; i < n; ++i) {
    log_factor += log_h(l1 - p.xis[i] + p.eta, q) + log_h(l1 + p.xis[i] + p.eta, q) +
                  log_h(p.lambdas[i] - x1 + p.eta, q);
  }
  const Complex full = route_value(p, route).log_value;
  const Complex smaller = route_value(reduced(p, 0, 0), route).log_value;
  return log_residual(full, log_factor + smaller);
}

double check_recursion_upper(const ModelParams& p, Route route) {
  const std::size_t n = p.n_sites;
  if (n < 2) throw Error("recursion check needs N >= 2");
  if (p.lambdas[n - 1] != -p.xis[0]) {
    throw Error("recursion check needs lambda_N == -xi_1 exactly");
  }
  const Nome& q = p.nome;
  const Complex ln = p.lambdas[n - 1];
  const Complex x1 = p.xis[0];
  const Complex tz = p.theta + p.zeta;

  Complex log_factor = log_h(p.eta, q) + log_h(tz - ln, q) - log_h(tz + ln, q) +
                       log_level_factor(p);
  for (std::size_t i = 0; i < n; ++i) log_factor += log_h(p.lambdas[i] - x1, q);
  for (std::size_t i = 1; i < n; ++i) {
    log_factor += log_h(ln + p.xis[i] + p.eta, q) + log_h(ln - p.xis[i] + p.eta, q) +
                  log_h(p.lambdas[i - 1] + x1 + p.eta, q);
  }
  const Complex full = route_value(p, route).log_value;
  const Complex smaller = route_value(reduced(p, n - 1, 0), route).log_value;
  return log_residual(full, log_factor + smaller);
}

PartitionResult partition_trigonometric(const ModelParams& params) {
  if (!params.nome.degenerate()) {
    throw InvalidNome("the trigonometric formula applies at p = 0 exactly");
  }
  const auto start = Clock::now();
  const auto log_raw = log_formula(params, [](Complex x) { return std::sinh(x); },
                                   ThetaPrefactor::kRecursive);
  const Complex log_norm = log_sign(formula_normalization(params.n_sites)) +
                           trigonometric_log_constant(params.n_sites);
  return finish(Method::kTrigonometric, log_raw, log_norm, start);
}

}  // namespace esos
