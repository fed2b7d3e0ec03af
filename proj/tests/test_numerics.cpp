#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "esos/numerics.hpp"

namespace esos {
namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  return m;
}

// Laplace expansion along the first row.
Complex cofactor_det(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 1) return m(0, 0);
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    acc += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * cofactor_det(minor);
  }
  return acc;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

TEST(Numerics, MatchesCofactorExpansion) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix m = random_matrix(n, rng);
      EXPECT_LT(rel(det_complex(m), cofactor_det(m)), 1e-12) << "n=" << n;
    }
  }
}

TEST(Numerics, PermutationMatricesGiveTheirSign) {
  std::vector<int> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    ComplexMatrix m = ComplexMatrix::Zero(5, 5);
    int inversions = 0;
    for (int i = 0; i < 5; ++i) {
      m(i, perm[i]) = 1.0;
      for (int j = i + 1; j < 5; ++j) inversions += perm[i] > perm[j];
    }
    EXPECT_EQ(det_complex(m), Complex(inversions % 2 ? -1.0 : 1.0));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Numerics, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(8, rng);
    const ComplexMatrix b = random_matrix(8, rng);
    EXPECT_LT(rel(det_complex(a * b), det_complex(a) * det_complex(b)), 1e-10);
  }
}

TEST(Numerics, SingularMatrix) {
  ComplexMatrix m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 5, 7, 9;
  EXPECT_LT(std::abs(det_complex(m)), 1e-12);
  EXPECT_EQ(det_complex(ComplexMatrix::Zero(3, 3)), Complex(0.0));
  EXPECT_FALSE(log_det_complex(ComplexMatrix::Zero(3, 3)));
}

TEST(Numerics, LogDeterminant) {
  std::mt19937_64 rng(5);
  const ComplexMatrix m = random_matrix(6, rng);
  const auto ld = log_det_complex(m);
  ASSERT_TRUE(ld);
  EXPECT_LT(rel(std::exp(*ld), det_complex(m)), 1e-12);
  EXPECT_LE(std::abs(ld->imag()), M_PI);

  // 200×200 diagonal with entries 1e3: det overflows, the log does not.
  const ComplexMatrix big = 1e3 * ComplexMatrix::Identity(200, 200);
  const auto lb = log_det_complex(big);
  ASSERT_TRUE(lb);
  EXPECT_NEAR(lb->real(), 200 * std::log(1e3), 1e-9);
  EXPECT_FALSE(exp_if_finite(*lb));
}

TEST(Numerics, EmptyMatrixHasUnitDeterminant) {
  EXPECT_EQ(det_complex(ComplexMatrix(0, 0)), Complex(1.0));
}

TEST(Numerics, RelCompare) {
  const auto r = rel_compare(Complex(1.0), Complex(1.0 + 1e-9));
  EXPECT_NEAR(r.max_relative, 1e-9, 1e-15);
  EXPECT_EQ(rel_compare(Complex(0.0), Complex(0.0)).max_relative, 0.0);

  ComplexMatrix a = ComplexMatrix::Ones(2, 3);
  ComplexMatrix b = a;
  b(1, 2) += 1e-6;
  const auto rm = rel_compare(a, b);
  EXPECT_EQ(rm.row, 1u);
  EXPECT_EQ(rm.col, 2u);
  EXPECT_NEAR(rm.max_absolute, 1e-6, 1e-15);
  EXPECT_NEAR(rel_residual(a, b), 1e-6, 1e-11);
}

TEST(Numerics, ExpIfFinite) {
  EXPECT_TRUE(exp_if_finite(Complex(1.0, 0.5)));
  EXPECT_FALSE(exp_if_finite(Complex(1000.0, 0.0)));
  EXPECT_EQ(max_abs(ComplexMatrix::Identity(3, 3)), 1.0);
}

}  // namespace
}  // namespace esos
