#pragma once

// Boundary ℬ and bulk A in the F-basis, where both take explicitly symmetric
// quasi-local forms. The twist fixes |0⟩ and ⟨0̄| and the boundary similarity
// is taken at a single θ, so ⟨0̄|∏𝓑̄|0⟩ telescopes to ⟨0̄|∏ℬ|0⟩ and gives a
// second partition-function route that never builds a monodromy matrix.

#include "esos/algebra.hpp"
#include "esos/model.hpp"

namespace esos {

/// 𝓑̄(λ;θ) as an N-site operator: a sum of N single-site lowerings, each
/// dressed by diagonal factors on the other sites, followed by the diagonal
/// h(θ−ηSᶻ)/h(θ+η(N−Sᶻ)/2) evaluated on the input sector.
TensorOperator build_symmetric_b(Complex lambda, const ModelParams& params);

/// 𝓑̄(λ)·v without materializing the matrix.
ComplexVector apply_symmetric_b(Complex lambda, const ModelParams& params,
                                const ComplexVector& v);

/// Ā(λ;θ): diagonal, h(θ−η)/h(θ+η((N−Sᶻ)/2−1)) ⊗ᵢ diag(h(λ−ξᵢ+η), h(λ−ξᵢ)).
TensorOperator build_symmetric_a(Complex lambda, const ModelParams& params);

/// ⟨0̄| ∏ᵢ 𝓑̄(λᵢ) |0⟩.
PartitionResult partition_fbasis(const ModelParams& params);

/// Checks Ā|0⟩ = ∏ h(λ−ξᵢ+η)|0⟩ and that the bulk A block has the same
/// eigenvalue on |0⟩; returns the larger relative residual.
double check_abar_eigenvalue(Complex lambda, const ModelParams& params);

}  // namespace esos
