#include "esos/algebra.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "esos/elliptic.hpp"
#include "esos/errors.hpp"
#include "esos/numerics.hpp"

namespace esos {

namespace {

using Matrix4 = Eigen::Matrix4cd;
using Matrix2 = Eigen::Matrix2cd;

Matrix4 swap_spaces() {
  Matrix4 p = Matrix4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) p(b * 2 + a, a * 2 + b) = 1.0;
  return p;
}

const Matrix4& swap4() {
  static const Matrix4 p = swap_spaces();
  return p;
}

/// R₂₁ from R₁₂.
Matrix4 flipped(const Matrix4& r) { return swap4() * r * swap4(); }

/// Transpose in the first of the two spaces.
Matrix4 partial_transpose_first(const Matrix4& r) {
  Matrix4 t = Matrix4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) t(c * 2 + b, a * 2 + d) = r(a * 2 + b, c * 2 + d);
  return t;
}

Matrix4 sz_first() { return Eigen::Vector4cd(1, 1, -1, -1).asDiagonal(); }
Matrix4 sz_second() { return Eigen::Vector4cd(1, -1, 1, -1).asDiagonal(); }

/// Dense embedding of a two-space operator acting on spaces (a, b) of m, with
/// its matrix possibly depending on the basis state of the remaining spaces.
template <class SectorFn>
ComplexMatrix embed_pair(int m, int a, int b, SectorFn&& fn) {
  const std::uint64_t dim = std::uint64_t{1} << m;
  const int sa = m - 1 - a;
  const int sb = m - 1 - b;
  const std::uint64_t mask = (std::uint64_t{1} << sa) | (std::uint64_t{1} << sb);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const Matrix4& r = fn(col);
    const int in = static_cast<int>(((col >> sa) & 1U) * 2 + ((col >> sb) & 1U));
    const std::uint64_t base = col & ~mask;
    for (int pair = 0; pair < 4; ++pair) {
      const Complex v = r(pair, in);
      if (v == Complex{}) continue;
      const std::uint64_t row =
          base | (std::uint64_t(pair >> 1) << sa) | (std::uint64_t(pair & 1) << sb);
      out(row, col) += v;
    }
  }
  return out;
}

/// acc ← acc · F with F the embedded local operator; O(dim²) since every
/// column of F has at most four nonzero entries. acc may hold a subset of rows.
template <class Mat, class SectorFn>
void right_multiply_pair(Mat& acc, int m, int a, int b, SectorFn&& fn) {
  const std::uint64_t dim = std::uint64_t{1} << m;
  const int sa = m - 1 - a;
  const int sb = m - 1 - b;
  const std::uint64_t mask = (std::uint64_t{1} << sa) | (std::uint64_t{1} << sb);
  Mat out = Mat::Zero(acc.rows(), acc.cols());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const auto& r = fn(col);
    const int in = static_cast<int>(((col >> sa) & 1U) * 2 + ((col >> sb) & 1U));
    const std::uint64_t base = col & ~mask;
    for (int pair = 0; pair < 4; ++pair) {
      const auto v = r(pair, in);
      if (v == decltype(v){}) continue;
      const std::uint64_t row =
          base | (std::uint64_t(pair >> 1) << sa) | (std::uint64_t(pair & 1) << sb);
      out.col(col).noalias() += v * acc.col(row);
    }
  }
  acc = std::move(out);
}

/// acc ← F · acc, the row-wise counterpart; acc may hold a subset of columns.
template <class Mat, class SectorFn>
void left_multiply_pair(Mat& acc, int m, int a, int b, SectorFn&& fn) {
  const std::uint64_t dim = std::uint64_t{1} << m;
  const int sa = m - 1 - a;
  const int sb = m - 1 - b;
  const std::uint64_t mask = (std::uint64_t{1} << sa) | (std::uint64_t{1} << sb);
  Mat out = Mat::Zero(acc.rows(), acc.cols());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const auto& r = fn(col);
    const int in = static_cast<int>(((col >> sa) & 1U) * 2 + ((col >> sb) & 1U));
    const std::uint64_t base = col & ~mask;
    for (int pair = 0; pair < 4; ++pair) {
      const auto v = r(pair, in);
      if (v == decltype(v){}) continue;
      const std::uint64_t row =
          base | (std::uint64_t(pair >> 1) << sa) | (std::uint64_t(pair & 1) << sb);
      out.row(row).noalias() += v * acc.row(col);
    }
  }
  acc = std::move(out);
}

using Wide4 = Eigen::Matrix<WideComplex, 4, 4>;

WideComplex widen(Complex z) { return {z.real(), z.imag()}; }

WideComplex wide_h_nonzero(WideComplex x, const Nome& q, const char* what) {
  const WideComplex v = eval_h_wide(x, q);
  const Complex narrow(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  if (std::abs(v) < kNearPoleTolerance * h_scale(narrow)) {
    throw NearPoleError(what, static_cast<double>(std::abs(v)));
  }
  return v;
}

Wide4 wide_r(WideComplex lambda, WideComplex theta, const ModelParams& params) {
  const Nome& q = params.nome;
  const WideComplex eta = widen(params.eta);
  const WideComplex h_theta = wide_h_nonzero(theta, q, "h(theta) in R-matrix");
  const WideComplex h_lambda = eval_h_wide(lambda, q);
  const WideComplex h_eta = eval_h_wide(eta, q);
  Wide4 e = Wide4::Zero();
  e(0, 0) = e(3, 3) = eval_h_wide(lambda + eta, q);
  e(1, 1) = h_lambda * eval_h_wide(theta - eta, q) / h_theta;
  e(2, 2) = h_lambda * eval_h_wide(theta + eta, q) / h_theta;
  e(1, 2) = h_eta * eval_h_wide(theta - lambda, q) / h_theta;
  e(2, 1) = h_eta * eval_h_wide(theta + lambda, q) / h_theta;
  return e;
}

std::vector<Wide4> wide_family(WideComplex lambda, int count, const ModelParams& params) {
  std::vector<Wide4> family;
  for (int s = -count; s <= count; s += 2) {
    const long double shift = s;
    family.push_back(wide_r(lambda, widen(params.theta) - shift * widen(params.eta), params));
  }
  return family;
}

/// ℬ(λ) in extended precision: only the auxiliary-up rows of T and the
/// auxiliary-down columns of the crossed inverse are formed.
WideMatrix wide_b_operator(Complex lambda_narrow, const ModelParams& params) {
  const int n = static_cast<int>(params.n_sites);
  const int m = n + 1;
  const std::int64_t dim = std::int64_t{1} << m;
  const std::int64_t half = dim / 2;
  const WideComplex lambda = widen(lambda_narrow);

  WideMatrix top = WideMatrix::Identity(dim, dim).topRows(half);
  for (int j = 1; j <= n; ++j) {
    const int rest = n - j;
    const auto family = wide_family(lambda - widen(params.xis[j - 1]), rest, params);
    right_multiply_pair(top, m, 0, j, [&](std::uint64_t s) -> const Wide4& {
      return family[(total_sz(s, m, j + 1) + rest) / 2];
    });
  }

  // X = F_N ⋯ F_1, so X·E = F_N(⋯(F_1·E)).
  WideMatrix right = WideMatrix::Identity(dim, dim).rightCols(half);
  for (int j = 1; j <= n; ++j) {
    const int rest = n - j;
    const auto family = wide_family(lambda + widen(params.xis[j - 1]), rest, params);
    left_multiply_pair(right, m, j, 0, [&](std::uint64_t s) -> const Wide4& {
      return family[(total_sz(s, m, j + 1) + rest) / 2];
    });
  }

  const Nome& q = params.nome;
  const WideComplex tz = widen(params.theta) + widen(params.zeta);
  const WideComplex zeta = widen(params.zeta);
  const WideComplex k_plus =
      eval_h_wide(tz - lambda, q) / wide_h_nonzero(tz + lambda, q, "h(theta+zeta+lambda)");
  const WideComplex k_minus =
      eval_h_wide(zeta - lambda, q) / wide_h_nonzero(zeta + lambda, q, "h(zeta+lambda)");
  top.leftCols(half) *= k_plus;
  top.rightCols(half) *= k_minus;
  return top * right;
}

/// R matrices for every value of the shift sum s ∈ {−count, …, count},
/// indexed by (s + count) / 2.
std::vector<Matrix4> shifted_family(Complex lambda, Complex theta, int count,
                                    const ModelParams& params, bool swapped) {
  std::vector<Matrix4> family;
  for (int s = -count; s <= count; s += 2) {
    Matrix4 r = eval_r(lambda, theta - static_cast<double>(s) * params.eta, params).entries;
    family.push_back(swapped ? flipped(r) : r);
  }
  return family;
}

double rel_resid4(const Matrix4& a, const Matrix4& b) {
  return rel_residual(ComplexMatrix(a), ComplexMatrix(b));
}

}  // namespace

Eigen::Matrix2cd KMatrix::matrix() const {
  Matrix2 k = Matrix2::Zero();
  k(0, 0) = plus;
  k(1, 1) = minus;
  return k;
}

int total_sz(std::uint64_t state, int m, int first) {
  int s = 0;
  for (int k = first; k < m; ++k) s += spin_at(state, m, k);
  return s;
}

RMatrix eval_r(Complex lambda, Complex theta, const ModelParams& params) {
  const Nome& q = params.nome;
  const Complex eta = params.eta;
  const Complex h_theta = eval_h_nonzero(theta, q, "h(theta) in R-matrix");
  const Complex h_lambda = eval_h(lambda, q);
  const Complex h_eta = eval_h(eta, q);

  RMatrix r;
  auto& e = r.entries;
  e(0, 0) = e(3, 3) = eval_h(lambda + eta, q);
  e(1, 1) = h_lambda * eval_h(theta - eta, q) / h_theta;
  e(2, 2) = h_lambda * eval_h(theta + eta, q) / h_theta;
  e(1, 2) = h_eta * eval_h(theta - lambda, q) / h_theta;
  e(2, 1) = h_eta * eval_h(theta + lambda, q) / h_theta;
  return r;
}

RProvider standard_r(const ModelParams& params) {
  return [params](Complex lambda, Complex theta) { return eval_r(lambda, theta, params); };
}

KMatrix eval_k(Complex lambda, const ModelParams& params) {
  const Nome& q = params.nome;
  const Complex tz = params.theta + params.zeta;
  KMatrix k;
  k.plus = eval_h(tz - lambda, q) / eval_h_nonzero(tz + lambda, q, "h(theta+zeta+lambda)");
  k.minus = eval_h(params.zeta - lambda, q) /
            eval_h_nonzero(params.zeta + lambda, q, "h(zeta+lambda)");
  return k;
}

KProvider standard_k(const ModelParams& params) {
  return [params](Complex lambda) { return eval_k(lambda, params); };
}

double check_dybe(Complex l1, Complex l2, Complex l3, Complex theta, const ModelParams& params) {
  return check_dybe(l1, l2, l3, theta, params.eta, standard_r(params));
}

double check_dybe(Complex l1, Complex l2, Complex l3, Complex theta, Complex eta,
                  const RProvider& r) {
  // R(μ; θ − ησᶻ_k) for both spins of the shifting space k: [bit 0, bit 1].
  auto pair_of = [&](Complex mu) {
    return std::array<Matrix4, 2>{r(mu, theta - eta).entries, r(mu, theta + eta).entries};
  };
  const auto r12_shift3 = pair_of(l1 - l2);
  const auto r23_shift1 = pair_of(l2 - l3);
  const auto r13_shift2 = pair_of(l1 - l3);
  const Matrix4 r12 = r(l1 - l2, theta).entries;
  const Matrix4 r13 = r(l1 - l3, theta).entries;
  const Matrix4 r23 = r(l2 - l3, theta).entries;

  auto bit = [](std::uint64_t s, int k) { return static_cast<int>((s >> (2 - k)) & 1U); };
  const ComplexMatrix lhs =
      embed_pair(3, 0, 1, [&](std::uint64_t s) -> const Matrix4& { return r12_shift3[bit(s, 2)]; }) *
      embed_pair(3, 0, 2, [&](std::uint64_t) -> const Matrix4& { return r13; }) *
      embed_pair(3, 1, 2, [&](std::uint64_t s) -> const Matrix4& { return r23_shift1[bit(s, 0)]; });
  const ComplexMatrix rhs =
      embed_pair(3, 1, 2, [&](std::uint64_t) -> const Matrix4& { return r23; }) *
      embed_pair(3, 0, 2, [&](std::uint64_t s) -> const Matrix4& { return r13_shift2[bit(s, 1)]; }) *
      embed_pair(3, 0, 1, [&](std::uint64_t) -> const Matrix4& { return r12; });
  return rel_residual(lhs, rhs);
}

double check_unitarity(Complex lambda, Complex theta, const ModelParams& params) {
  const Matrix4 forward = eval_r(lambda, theta, params).entries;
  const Matrix4 backward = flipped(eval_r(-lambda, theta, params).entries);
  const Complex c = -eval_h(lambda - params.eta, params.nome) *
                    eval_h(lambda + params.eta, params.nome);
  // Scaled by the size of the factors, as the product cancels down to c.
  const double scale = max_abs(ComplexMatrix(forward)) * max_abs(ComplexMatrix(backward));
  return rel_compare(ComplexMatrix(forward * backward), ComplexMatrix(c * Matrix4::Identity()),
                     scale)
      .max_relative;
}

double check_crossing(Complex lambda, Complex theta, const ModelParams& params) {
  // −σ₁ʸ [Σ_s P₁ˢ R₁₂^{t₁}(−λ−η; θ+ηs)] σ₁ʸ · h(θ−ησ₂ᶻ)/h(θ) = R₂₁(λ;θ),
  // with the σ₁ᶻ projector normal-ordered next to the transposed R.
  const Complex eta = params.eta;
  Matrix2 sigma_y;
  sigma_y << 0.0, -kI, kI, 0.0;
  const Matrix4 y1 = Eigen::kroneckerProduct(sigma_y, Matrix2::Identity());

  Matrix4 inner = Matrix4::Zero();
  for (int s : {1, -1}) {
    Matrix4 projector = Matrix4::Zero();
    const int offset = s > 0 ? 0 : 2;
    projector(offset, offset) = projector(offset + 1, offset + 1) = 1.0;
    inner += projector *
             partial_transpose_first(
                 eval_r(-lambda - eta, theta + static_cast<double>(s) * eta, params).entries);
  }
  const Complex h_theta = eval_h_nonzero(theta, params.nome, "h(theta)");
  Eigen::Vector4cd dyn;
  for (int pair = 0; pair < 4; ++pair) {
    const double s2 = (pair & 1) ? -1.0 : 1.0;
    dyn(pair) = eval_h(theta - s2 * eta, params.nome) / h_theta;
  }
  const Matrix4 lhs = -(y1 * inner * y1) * dyn.asDiagonal();
  return rel_resid4(lhs, flipped(eval_r(lambda, theta, params).entries));
}

double check_ice_rule(Complex lambda, Complex theta, const ModelParams& params) {
  const Matrix4 r = eval_r(lambda, theta, params).entries;
  const Matrix4 s = sz_first() + sz_second();
  return max_abs(ComplexMatrix(s * r - r * s)) / max_abs(ComplexMatrix(r));
}

double check_transposed_zero_weight(Complex lambda, Complex theta, const ModelParams& params) {
  const Matrix4 r = partial_transpose_first(eval_r(lambda, theta, params).entries);
  const Matrix4 s = sz_first() - sz_second();
  return max_abs(ComplexMatrix(s * r - r * s)) / max_abs(ComplexMatrix(r));
}

double check_reflection_equation(Complex l1, Complex l2, const ModelParams& params) {
  return check_reflection_equation(l1, l2, params.theta, standard_r(params), standard_k(params));
}

double check_reflection_equation(Complex l1, Complex l2, Complex theta, const RProvider& r,
                                 const KProvider& k) {
  const Matrix2 id = Matrix2::Identity();
  const Matrix4 k1 = Eigen::kroneckerProduct(k(l1).matrix(), id);
  const Matrix4 k2 = Eigen::kroneckerProduct(id, k(l2).matrix());
  const Matrix4 r_minus = r(l1 - l2, theta).entries;
  const Matrix4 r_plus = r(l1 + l2, theta).entries;
  const Matrix4 lhs = r_minus * k1 * flipped(r_plus) * k2;
  const Matrix4 rhs = k2 * r_plus * k1 * flipped(r_minus);
  return rel_resid4(lhs, rhs);
}

Complex gamma_hat(Complex lambda, const ModelParams& params) {
  Complex g = (params.n_sites % 2 == 0) ? 1.0 : -1.0;
  for (Complex xi : params.xis) {
    g *= eval_h(lambda + xi - params.eta, params.nome) *
         eval_h(lambda + xi + params.eta, params.nome);
  }
  return g;
}

TensorOperator build_bulk_monodromy(Complex lambda, const ModelParams& params) {
  return build_bulk_monodromy(lambda, params.theta, params);
}

TensorOperator build_bulk_monodromy(Complex lambda, Complex theta, const ModelParams& params) {
  const int n = static_cast<int>(params.n_sites);
  const int m = n + 1;
  ComplexMatrix acc = ComplexMatrix::Identity(std::int64_t{1} << m, std::int64_t{1} << m);
  for (int j = 1; j <= n; ++j) {
    const int rest = n - j;
    const auto family = shifted_family(lambda - params.xis[j - 1], theta, rest, params, false);
    right_multiply_pair(acc, m, 0, j, [&](std::uint64_t s) -> const Matrix4& {
      return family[(total_sz(s, m, j + 1) + rest) / 2];
    });
  }
  return {m, std::move(acc)};
}

TensorOperator build_crossed_inverse(Complex lambda, const ModelParams& params) {
  const int n = static_cast<int>(params.n_sites);
  const int m = n + 1;
  ComplexMatrix acc = ComplexMatrix::Identity(std::int64_t{1} << m, std::int64_t{1} << m);
  for (int j = n; j >= 1; --j) {
    const int rest = n - j;
    // R_{j0}: space j plays the first role, the auxiliary space the second.
    const auto family =
        shifted_family(lambda + params.xis[j - 1], params.theta, rest, params, false);
    right_multiply_pair(acc, m, j, 0, [&](std::uint64_t s) -> const Matrix4& {
      return family[(total_sz(s, m, j + 1) + rest) / 2];
    });
  }
  return {m, std::move(acc)};
}

TensorOperator build_boundary_monodromy(Complex lambda, const ModelParams& params) {
  TensorOperator bulk = build_bulk_monodromy(lambda, params);
  const KMatrix k = eval_k(lambda, params);
  const Eigen::Index half = bulk.entries.cols() / 2;
  bulk.entries.leftCols(half) *= k.plus;
  bulk.entries.rightCols(half) *= k.minus;
  const TensorOperator crossed = build_crossed_inverse(lambda, params);
  return {bulk.dim_log2, bulk.entries * crossed.entries};
}

TensorOperator auxiliary_block(const TensorOperator& op, int row_spin, int col_spin) {
  if (op.dim_log2 < 1 || op.entries.rows() != (std::int64_t{1} << op.dim_log2)) {
    throw DimensionMismatch("auxiliary_block: operator has no auxiliary space");
  }
  const Eigen::Index half = op.entries.rows() / 2;
  const Eigen::Index r0 = row_spin > 0 ? 0 : half;
  const Eigen::Index c0 = col_spin > 0 ? 0 : half;
  return {op.dim_log2 - 1, op.entries.block(r0, c0, half, half)};
}

TensorOperator extract_b_operator(const TensorOperator& boundary_monodromy) {
  return auxiliary_block(boundary_monodromy, +1, -1);
}

PartitionResult partition_oracle(const ModelParams& params) {
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t dim = std::int64_t{1} << params.n_sites;
  // The product of ℬ blocks cancels heavily for some parameters; extended
  // precision keeps the brute-force value usable as ground truth.
  WideVector state = WideVector::Zero(dim);
  state(0) = 1.0L;
  for (Complex lambda : params.lambdas) {
    const WideVector next = wide_b_operator(lambda, params) * state;
    state = next;
  }
  const WideComplex z = state(dim - 1);
  PartitionResult result;
  result.method = Method::kOracle;
  result.value = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  result.raw_value = result.value;
  result.log_value = std::log(*result.value);
  result.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ComplexMatrix sz_function(std::size_t n_sites, const std::function<Complex(int)>& f) {
  const int n = static_cast<int>(n_sites);
  const std::int64_t dim = std::int64_t{1} << n;
  std::vector<Complex> per_sector(n + 1);
  for (int down = 0; down <= n; ++down) per_sector[down] = f(n - 2 * down);
  ComplexVector diag(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    diag(s) = per_sector[std::popcount(static_cast<std::uint64_t>(s))];
  }
  return diag.asDiagonal();
}

double weight_zero_residual(const TensorOperator& op) {
  const int m = op.dim_log2;
  const auto& e = op.entries;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < e.cols(); ++c) {
    const int sc = total_sz(static_cast<std::uint64_t>(c), m);
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      const int sr = total_sz(static_cast<std::uint64_t>(r), m);
      worst = std::max(worst, std::abs(static_cast<double>(sr - sc) * e(r, c)));
    }
  }
  const double scale = max_abs(e);
  return scale > 0 ? worst / scale : worst;
}

double check_crossed_inverse_identity(Complex lambda, const ModelParams& params) {
  const TensorOperator crossed = build_crossed_inverse(lambda, params);
  const TensorOperator bulk = build_bulk_monodromy(-lambda, params);
  const Complex g = gamma_hat(lambda, params);
  const ComplexMatrix expected =
      g * ComplexMatrix::Identity(crossed.entries.rows(), crossed.entries.cols());
  // Entries of the product cancel down from |X|·|T|; scale by that size.
  const double scale = max_abs(crossed.entries) * max_abs(bulk.entries);
  return rel_compare(ComplexMatrix(crossed.entries * bulk.entries), expected, scale)
      .max_relative;
}

double check_b_decomposition(Complex lambda, const ModelParams& params) {
  const Complex eta = params.eta;
  const Complex theta = params.theta;
  const TensorOperator boundary_b =
      extract_b_operator(build_boundary_monodromy(lambda, params));

  const TensorOperator t = build_bulk_monodromy(lambda, theta, params);
  const TensorOperator t_up = build_bulk_monodromy(-lambda - eta, theta + eta, params);
  const TensorOperator t_down = build_bulk_monodromy(-lambda - eta, theta - eta, params);
  const ComplexMatrix a = auxiliary_block(t, +1, +1).entries;
  const ComplexMatrix b = auxiliary_block(t, +1, -1).entries;
  const ComplexMatrix a_up = auxiliary_block(t_up, +1, +1).entries;
  const ComplexMatrix b_down = auxiliary_block(t_down, +1, -1).entries;

  const KMatrix k = eval_k(lambda, params);
  const Complex h_theta = eval_h_nonzero(theta, params.nome, "h(theta)");
  const ComplexMatrix dyn = sz_function(params.n_sites, [&](int sz) {
    return eval_h(theta - static_cast<double>(sz) * eta, params.nome) / h_theta;
  });
  const double gamma = (params.n_sites % 2 == 0) ? 1.0 : -1.0;
  const ComplexMatrix rhs = gamma * (k.minus * b * a_up - k.plus * a * b_down) * dyn;
  return rel_residual(boundary_b.entries, rhs);
}

double check_b_commutativity(Complex l1, Complex l2, const ModelParams& params) {
  const ComplexMatrix b1 = extract_b_operator(build_boundary_monodromy(l1, params)).entries;
  const ComplexMatrix b2 = extract_b_operator(build_boundary_monodromy(l2, params)).entries;
  return rel_residual(ComplexMatrix(b1 * b2), ComplexMatrix(b2 * b1));
}

double check_b_spin_lowering(Complex lambda, const ModelParams& params) {
  const TensorOperator b = extract_b_operator(build_boundary_monodromy(lambda, params));
  const int n = b.dim_log2;
  // ℬ P_s = P_{s−2} ℬ for every sector s ⇔ ℬ(r, c) = 0 unless Sᶻ(r) = Sᶻ(c) − 2.
  double stray = 0.0;
  for (Eigen::Index c = 0; c < b.entries.cols(); ++c) {
    for (Eigen::Index r = 0; r < b.entries.rows(); ++r) {
      if (total_sz(static_cast<std::uint64_t>(r), n) != total_sz(static_cast<std::uint64_t>(c), n) - 2) {
        stray = std::max(stray, std::abs(b.entries(r, c)));
      }
    }
  }
  return stray / max_abs(b.entries);
}

double check_dynamical_reflection_algebra(Complex l1, Complex l2, const ModelParams& params) {
  const int n = static_cast<int>(params.n_sites);
  const std::int64_t dq = std::int64_t{1} << n;
  const std::int64_t dim = 4 * dq;

  // Operators on aux₁ ⊗ aux₂ ⊗ V; R acts on the two auxiliary spaces with
  // θ shifted by the quantum-space Sᶻ of the state it meets.
  auto r_shifted = [&](Complex mu, bool swapped) {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    std::vector<Matrix4> family = shifted_family(mu, params.theta, n, params, swapped);
    for (std::int64_t v = 0; v < dq; ++v) {
      const Matrix4& r = family[(total_sz(static_cast<std::uint64_t>(v), n) + n) / 2];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i * dq + v, j * dq + v) = r(i, j);
    }
    return out;
  };
  auto on_first = [&](const TensorOperator& t) {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
          out.block((a * 2 + x) * dq, (b * 2 + x) * dq, dq, dq) =
              t.entries.block(a * dq, b * dq, dq, dq);
    return out;
  };
  auto on_second = [&](const TensorOperator& t) {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
          out.block((x * 2 + a) * dq, (x * 2 + b) * dq, dq, dq) =
              t.entries.block(a * dq, b * dq, dq, dq);
    return out;
  };

  const ComplexMatrix t1 = on_first(build_boundary_monodromy(l1, params));
  const ComplexMatrix t2 = on_second(build_boundary_monodromy(l2, params));
  const ComplexMatrix lhs = r_shifted(l1 - l2, false) * t1 * r_shifted(l1 + l2, true) * t2;
  const ComplexMatrix rhs = t2 * r_shifted(l1 + l2, false) * t1 * r_shifted(l1 - l2, true);
  return rel_residual(lhs, rhs);
}

}  // namespace esos
