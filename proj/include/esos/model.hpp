#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esos/elliptic.hpp"
#include "esos/types.hpp"

namespace esos {

/// Full parameter set of the elliptic SOS model with one reflecting end.
struct ModelParams {
  Nome nome;
  Complex eta;     // crossing parameter
  Complex zeta;    // boundary parameter of the K-matrix
  Complex theta;   // dynamical parameter (external height)
  std::vector<Complex> lambdas;  // spectral parameters, one per row pair
  std::vector<Complex> xis;      // column inhomogeneities
  std::size_t n_sites = 0;
};

enum class Method { kOracle, kFBasis, kDeterminant, kTrigonometric };

std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view name);

/// Value of Z with provenance.
///
/// `value` is expressed in the normalization of the operator-product oracle;
/// `raw_value` is what the underlying closed formula evaluates to, and
/// `normalization` the pinned constant with value = normalization · raw_value.
/// Closed formulas are evaluated in log space, so `log_value` (ln|Z| + i·arg Z)
/// is always present while `value` is absent when |Z| exceeds double range.
struct PartitionResult {
  Method method = Method::kOracle;
  std::optional<Complex> value;
  Complex log_value{0.0, 0.0};
  std::optional<Complex> raw_value;
  Complex log_normalization{0.0, 0.0};
  std::optional<double> residual_vs_oracle;
  double elapsed_s = 0.0;

  Complex normalization() const { return std::exp(log_normalization); }
};

/// Every violated genericity condition, one line each; empty when valid.
std::vector<std::string> genericity_report(const ModelParams& params);

/// Returns the params unchanged or throws ValidationError listing violations.
ModelParams validate(const ModelParams& params);

/// Deterministic random parameters: real parts uniform in [0.1, 1.5],
/// imaginary parts in [−0.2, 0.2]; p = p_magnitude·e^{iφ}, φ ∈ [−0.2, 0.2].
/// Redraws until validate() passes, at most 1000 times.
ModelParams random_params(std::size_t n_sites, std::uint64_t seed, double p_magnitude);

/// Convenience: copy of `params` with a different nome.
ModelParams with_nome(const ModelParams& params, const Nome& nome);

}  // namespace esos
