#pragma once

// Closed single-determinant form of the partition function, its normalized
// version Z̃, the two corner recursions and the p → 0 (sinh) limit.
//
// The closed formula is evaluated in log space, so it stays usable at sizes
// (N ≈ 50) where |Z| itself overflows a double.

#include <cstddef>

#include "esos/model.hpp"

namespace esos {

/// Pattern of the θ-dependent prefactor ∏ᵢ h(θ+η(N−2i))/h(θ+ηdᵢ).
enum class ThetaPrefactor {
  kRecursive,  // dᵢ = N−i; the product of the per-level recursion factors
  kAsPrinted,  // dᵢ = N−2i+1; agrees with the oracle only for N = 1
};

struct IzerginMatrix {
  ComplexMatrix entries;
};

/// M_ij = h(θ+ζ+ξⱼ)h(ζ−ξⱼ)h(2λᵢ)h(η) / [h(θ+ζ+λᵢ)h(ζ+λᵢ)
///        · h(λᵢ−ξⱼ+η)h(λᵢ+ξⱼ+η)h(λᵢ−ξⱼ)h(λᵢ+ξⱼ)].
/// Throws NearPoleError naming the vanishing factor, e.g. at λᵢ = ±ξⱼ.
IzerginMatrix build_m_matrix(const ModelParams& params);

/// Sign c_N with Z_oracle = c_N · Z_formula: (−1)^{N(N+1)/2}.
double formula_normalization(std::size_t n_sites);

/// ln of the constant relating the p → 0 limit of the elliptic formula to the
/// sinh formula: N² ln 4 (every h becomes 2 sinh).
double trigonometric_log_constant(std::size_t n_sites);

/// Determinant route. Points where some h(λᵢ±ξⱼ) or h(λᵢ±ξⱼ+η) vanishes are
/// handled by absorbing the double product into the rows of M first.
PartitionResult partition_determinant(const ModelParams& params,
                                      ThetaPrefactor prefactor = ThetaPrefactor::kRecursive);

/// Z̃ = ∏ᵢ h(θ+ζ+λᵢ)h(ζ+λᵢ)/h(2λᵢ) · z.
Complex normalized_partition(const ModelParams& params, Complex z);

enum class Route { kOracle, kDeterminant };

/// Relative residual of the λ₁ = ξ₁ recursion Z_N ↔ Z_{N−1}(λ₂…, ξ₂…).
/// Requires N ≥ 2 and lambdas[0] == xis[0] exactly.
double check_recursion_lower(const ModelParams& params, Route route = Route::kOracle);

/// Relative residual of the λ_N = −ξ₁ recursion Z_N ↔ Z_{N−1}(λ₁…λ_{N−1}, ξ₂…).
/// Requires N ≥ 2 and lambdas[N−1] == −xis[0] exactly.
double check_recursion_upper(const ModelParams& params, Route route = Route::kOracle);

/// The sinh-form determinant at p = 0 exactly. `raw_value` is the sinh
/// formula; `value` carries the pinned constant c_N·4^{N²} so that it is
/// directly comparable with the other routes.
PartitionResult partition_trigonometric(const ModelParams& params);

}  // namespace esos
