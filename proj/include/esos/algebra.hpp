#pragma once

// Dynamical R-matrix, diagonal K-matrix and the bulk/boundary monodromy
// matrices realized as dense operators on (C²)^{⊗m}.
//
// Basis convention, used everywhere: in a basis index of m spaces, space k
// is bit (m−1−k), so space 0 (the auxiliary space, when present) is the most
// significant bit. Bit 0 is spin up (+, σᶻ = +1), bit 1 is spin down.
// Quantum sites 1..N map to spaces 1..N of an (N+1)-space operator and to
// spaces 0..N−1 of an N-space operator. |0⟩ is index 0 (all up) and ⟨0̄| the
// last index (all down).
//
// Dynamical shifts θ − ηΣσᶻ are applied sector by sector: the spins entering
// the shift are never touched by the factor carrying it, so on each
// computational basis state they are plain numbers.

#include <cstdint>
#include <functional>

#include "esos/model.hpp"
#include "esos/types.hpp"

namespace esos {

/// R^{ab}_{cd}(λ;θ) with row = out pair (a,b), column = in pair (c,d),
/// pairs ordered ++, +−, −+, −−.
struct RMatrix {
  Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
};

/// Diagonal boundary matrix diag(𝒦⁺₊, 𝒦⁻₋).
struct KMatrix {
  Complex plus{1.0, 0.0};
  Complex minus{1.0, 0.0};

  Eigen::Matrix2cd matrix() const;
};

struct TensorOperator {
  int dim_log2 = 0;
  ComplexMatrix entries;
};

using RProvider = std::function<RMatrix(Complex lambda, Complex theta)>;
using KProvider = std::function<KMatrix(Complex lambda)>;

/// σᶻ eigenvalue (+1/−1) of space k in `state` over m spaces.
inline int spin_at(std::uint64_t state, int m, int k) {
  return ((state >> (m - 1 - k)) & 1U) ? -1 : 1;
}

/// Σσᶻ over spaces [first, m).
int total_sz(std::uint64_t state, int m, int first = 0);

RMatrix eval_r(Complex lambda, Complex theta, const ModelParams& params);
RProvider standard_r(const ModelParams& params);

/// 𝒦(λ;θ) = diag(h(θ+ζ−λ)/h(θ+ζ+λ), h(ζ−λ)/h(ζ+λ)) at θ = params.theta.
KMatrix eval_k(Complex lambda, const ModelParams& params);
KProvider standard_k(const ModelParams& params);

// Local identities of R and K. Each returns the worst entrywise residual,
// relative to the largest entry involved.
double check_dybe(Complex lambda1, Complex lambda2, Complex lambda3, Complex theta,
                  const ModelParams& params);
/// Same check for an arbitrary R; η sets the size of the dynamical shifts.
double check_dybe(Complex lambda1, Complex lambda2, Complex lambda3, Complex theta, Complex eta,
                  const RProvider& r);
double check_unitarity(Complex lambda, Complex theta, const ModelParams& params);
double check_crossing(Complex lambda, Complex theta, const ModelParams& params);
double check_ice_rule(Complex lambda, Complex theta, const ModelParams& params);
double check_transposed_zero_weight(Complex lambda, Complex theta, const ModelParams& params);
double check_reflection_equation(Complex lambda1, Complex lambda2, const ModelParams& params);
double check_reflection_equation(Complex lambda1, Complex lambda2, Complex theta,
                                 const RProvider& r, const KProvider& k);

/// γ̂(λ) = (−1)^N ∏ h(λ+ξᵢ−η)h(λ+ξᵢ+η).
Complex gamma_hat(Complex lambda, const ModelParams& params);

/// T₀(λ;θ) = R₀₁(λ−ξ₁; θ−ηΣ_{k>1}σₖᶻ) ⋯ R₀N(λ−ξ_N; θ), dim_log2 = N+1.
TensorOperator build_bulk_monodromy(Complex lambda, const ModelParams& params);
TensorOperator build_bulk_monodromy(Complex lambda, Complex theta, const ModelParams& params);

/// γ̂(λ)T⁻¹(−λ;θ) as the product R_N0(λ+ξ_N;θ) ⋯ R₁₀(λ+ξ₁; θ−ηΣ_{k>1}σₖᶻ).
TensorOperator build_crossed_inverse(Complex lambda, const ModelParams& params);

/// 𝒯(λ;θ) = T(λ;θ)·𝒦₀(λ)·γ̂(λ)T⁻¹(−λ;θ).
TensorOperator build_boundary_monodromy(Complex lambda, const ModelParams& params);

/// ⟨row|₀ op |col⟩₀ for auxiliary spins row, col ∈ {+1, −1}.
TensorOperator auxiliary_block(const TensorOperator& op, int row_spin, int col_spin);

/// ℬ = ⟨+|₀ 𝒯 |−⟩₀.
TensorOperator extract_b_operator(const TensorOperator& boundary_monodromy);

/// ⟨0̄| ∏ᵢ ℬ(λᵢ) |0⟩ from explicitly built boundary monodromies.
PartitionResult partition_oracle(const ModelParams& params);

/// Diagonal operator f(Sᶻ) on an n-site space.
ComplexMatrix sz_function(std::size_t n_sites, const std::function<Complex(int)>& f);

/// ‖[Σₖσₖᶻ, op]‖ / ‖op‖ with the sum over every space of op.
double weight_zero_residual(const TensorOperator& op);

// Monodromy-level identities.
double check_crossed_inverse_identity(Complex lambda, const ModelParams& params);
double check_b_decomposition(Complex lambda, const ModelParams& params);
double check_b_commutativity(Complex lambda1, Complex lambda2, const ModelParams& params);
double check_b_spin_lowering(Complex lambda, const ModelParams& params);
double check_dynamical_reflection_algebra(Complex lambda1, Complex lambda2,
                                          const ModelParams& params);

}  // namespace esos
