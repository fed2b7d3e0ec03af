#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "esos/elliptic.hpp"
#include "esos/errors.hpp"
#include "esos/verify.hpp"
#include "reference.hpp"

namespace esos {
namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<Nome> nomes() {
  return {Nome(0.0), Nome(1e-3), Nome(0.1), Nome(std::polar(0.5, 0.2))};
}

TEST(Elliptic, MatchesReferenceValues) {
  const auto& values = test::reference().at("h");
  ASSERT_FALSE(values.empty());
  for (const auto& v : values) {
    const Nome q(test::as_complex(v.at("p")));
    const Complex x = test::as_complex(v.at("x"));
    EXPECT_LT(rel(eval_h(x, q), test::as_complex(v.at("h"))), 1e-13) << x;
  }
}

TEST(Elliptic, DegenerateNomeIsTwoSinh) {
  EXPECT_NEAR(eval_h(1.0, Nome(0.0)).real(), 2.3504023872876028, 1e-15);
  EXPECT_EQ(eval_h(1.0, Nome(0.0)).imag(), 0.0);
  EXPECT_EQ(eval_h(0.0, Nome(0.0)), Complex(0.0));
}

TEST(Elliptic, TruncationOrder) {
  // ln 1e-20 / ln 0.1 lands a hair above 20 in floating point.
  EXPECT_GE(Nome(0.1).truncation_order(), 20);
  EXPECT_LE(Nome(0.1).truncation_order(), 21);
  EXPECT_LE(std::pow(0.1, Nome(0.1).truncation_order()), 1e-20);
  EXPECT_EQ(Nome(1e-3).truncation_order(), 7);
  EXPECT_EQ(Nome(0.5).truncation_order(), 67);
  EXPECT_EQ(Nome(1e-30).truncation_order(), 1);
  EXPECT_GE(Nome(0.0).truncation_order(), 0);
}

TEST(Elliptic, TauShiftIsHalfLogP) {
  const Nome q(0.1);
  ASSERT_TRUE(q.tau_shift());
  EXPECT_NEAR(q.tau_shift()->real(), 0.5 * std::log(0.1), 1e-15);
  EXPECT_FALSE(Nome(0.0).tau_shift());
}

TEST(Elliptic, RejectsNomeOutsideUnitDisk) {
  EXPECT_THROW(Nome(1.0), InvalidNome);
  EXPECT_THROW(Nome(Complex(0.8, 0.8)), InvalidNome);
  EXPECT_THROW(Nome(Complex(NAN, 0.0)), InvalidNome);
}

TEST(Elliptic, OddnessProperty) {
  SampleStream s(1);
  for (const Nome& q : nomes()) {
    for (int k = 0; k < 100; ++k) {
      const Complex z = s.strip(2.0);
      EXPECT_LT(rel(eval_h(-z, q), -eval_h(z, q)), 1e-12);
    }
  }
}

TEST(Elliptic, AdditionRuleProperty) {
  SampleStream s(2);
  for (const Nome& q : nomes()) {
    auto h = [&](Complex z) { return eval_h(z, q); };
    for (int k = 0; k < 100; ++k) {
      const Complex x = s.strip(1.0), y = s.strip(1.0), u = s.strip(1.0), v = s.strip(1.0);
      const Complex t1 = h(x + u) * h(x - u) * h(y + v) * h(y - v);
      const Complex t2 = h(x + v) * h(x - v) * h(y + u) * h(y - u);
      const Complex t3 = h(x + y) * h(x - y) * h(u + v) * h(u - v);
      const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
      EXPECT_LT(std::abs(t1 - t2 - t3) / scale, 1e-10);
    }
  }
}

TEST(Elliptic, QuasiPeriodicityFactors) {
  const Nome q(0.2);
  const Complex z(0.4, -0.3);
  const auto [half, quasi] = quasi_periodicity_factors(z, q);
  EXPECT_LT(rel(half, -1.0), 1e-12);
  ASSERT_TRUE(quasi);
  // −e^{−2λ}p^{−1/2}
  EXPECT_LT(rel(*quasi, -std::exp(-2.0 * z) / std::sqrt(Complex(0.2))), 1e-10);

  const auto [h0, q0] = quasi_periodicity_factors(z, Nome(0.0));
  EXPECT_LT(rel(h0, -1.0), 1e-12);
  EXPECT_FALSE(q0);
}

TEST(Elliptic, QuasiPeriodicityKnownValue) {
  // λ = 0.4, p = 0.05: −e^{−0.8}/√0.05
  const auto [half, quasi] = quasi_periodicity_factors(0.4, Nome(0.05));
  ASSERT_TRUE(quasi);
  EXPECT_LT(rel(*quasi, -std::exp(-0.8) / std::sqrt(0.05)), 1e-10);
}

TEST(Elliptic, NearPoleRefusal) {
  EXPECT_THROW(eval_h_nonzero(0.0, Nome(0.1), "h(0)"), NearPoleError);
  try {
    eval_h_nonzero(Complex(1e-14, 0.0), Nome(0.1), "h(tiny)");
    FAIL();
  } catch (const NearPoleError& e) {
    EXPECT_EQ(e.factor(), "h(tiny)");
    EXPECT_LT(e.magnitude(), 1e-12);
  }
  EXPECT_NO_THROW(eval_h_nonzero(0.3, Nome(0.1), "h(0.3)"));
}

TEST(Elliptic, ThetaOrderNormClassification) {
  const Nome q(Complex(0.1, 0.02));
  const std::array<Complex, 4> pts{Complex(0.3, 0.1), Complex(-0.7, 0.4), Complex(1.1, -0.2),
                                   Complex(0.2, 0.9)};
  const Complex a(0.37, 0.05);
  auto h = [&](Complex z) { return eval_h(z, q); };
  auto pair = [&](Complex z) { return h(z) * h(z + a); };

  EXPECT_TRUE(is_theta_of_order_norm(h, 1, 0.0, q, pts, 1e-10));
  EXPECT_TRUE(is_theta_of_order_norm(pair, 2, a, q, pts, 1e-10));
  EXPECT_FALSE(is_theta_of_order_norm(pair, 2, 0.5 * a, q, pts, 1e-10));
  EXPECT_FALSE(is_theta_of_order_norm(pair, 1, a, q, pts, 1e-10));
}

TEST(Elliptic, ThetaCheckErrors) {
  const std::array<Complex, 1> pts{Complex(0.3, 0.1)};
  auto h = [](Complex z) { return eval_h(z, Nome(0.0)); };
  EXPECT_THROW(check_theta_order_norm(h, 1, 0.0, Nome(0.0), pts, 1e-10), InvalidNome);
  auto zero = [](Complex) { return Complex(0.0); };
  EXPECT_THROW(check_theta_order_norm(zero, 1, 0.0, Nome(0.1), pts, 1e-10), InconclusiveError);
}

}  // namespace
}  // namespace esos
