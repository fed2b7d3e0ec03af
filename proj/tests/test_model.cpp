#include <gtest/gtest.h>

#include "esos/errors.hpp"
#include "esos/model.hpp"

namespace esos {
namespace {

TEST(Model, RandomParamsAreDeterministic) {
  const ModelParams a = random_params(3, 11, 0.1);
  const ModelParams b = random_params(3, 11, 0.1);
  EXPECT_EQ(a.lambdas, b.lambdas);
  EXPECT_EQ(a.xis, b.xis);
  EXPECT_EQ(a.nome.p(), b.nome.p());
  EXPECT_NE(random_params(3, 12, 0.1).lambdas, a.lambdas);
}

TEST(Model, RandomParamsRespectBox) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ModelParams p = random_params(4, seed, 0.3);
    EXPECT_EQ(p.n_sites, 4u);
    EXPECT_NEAR(std::abs(p.nome.p()), 0.3, 1e-15);
    EXPECT_LE(std::abs(std::arg(p.nome.p())), 0.2 + 1e-15);
    for (Complex z : p.lambdas) {
      EXPECT_GE(z.real(), 0.1);
      EXPECT_LE(z.real(), 1.5);
      EXPECT_LE(std::abs(z.imag()), 0.2);
    }
    EXPECT_TRUE(genericity_report(p).empty());
  }
  EXPECT_EQ(random_params(2, 0, 0.0).nome.p(), Complex(0.0));
}

TEST(Model, RandomParamsRejectBadInput) {
  EXPECT_THROW(random_params(0, 1, 0.1), GenerationError);
  EXPECT_THROW(random_params(2, 1, 1.0), GenerationError);
}

TEST(Model, ValidateFlagsDegenerateTheta) {
  ModelParams p = random_params(2, 3, 0.1);
  p.theta = 0.0;
  try {
    validate(p);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.issues().empty());
  }
}

TEST(Model, ValidateFlagsCoincidentLambdas) {
  ModelParams p = random_params(3, 3, 0.1);
  p.lambdas[2] = p.lambdas[0];
  EXPECT_FALSE(genericity_report(p).empty());
  EXPECT_THROW(validate(p), ValidationError);
}

TEST(Model, ValidateFlagsLengthMismatch) {
  ModelParams p = random_params(3, 3, 0.1);
  p.xis.pop_back();
  EXPECT_THROW(validate(p), ValidationError);
}

TEST(Model, MethodNames) {
  for (Method m : {Method::kOracle, Method::kFBasis, Method::kDeterminant,
                   Method::kTrigonometric}) {
    EXPECT_EQ(method_from_string(to_string(m)), m);
  }
  EXPECT_FALSE(method_from_string("cholesky"));
}

TEST(Model, WithNomeReplacesOnlyTheNome) {
  const ModelParams p = random_params(2, 4, 0.1);
  const ModelParams q = with_nome(p, Nome(0.0));
  EXPECT_EQ(q.nome.p(), Complex(0.0));
  EXPECT_EQ(q.lambdas, p.lambdas);
  EXPECT_EQ(q.theta, p.theta);
}

}  // namespace
}  // namespace esos
