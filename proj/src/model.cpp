#include "esos/model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "esos/errors.hpp"

namespace esos {

namespace {

constexpr double kGenericityTolerance = 1e-10;
constexpr int kRetryBudget = 1000;

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kOracle: return "oracle";
    case Method::kFBasis: return "fbasis";
    case Method::kDeterminant: return "determinant";
    case Method::kTrigonometric: return "trigonometric";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) {
  for (Method m : {Method::kOracle, Method::kFBasis, Method::kDeterminant, Method::kTrigonometric}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<std::string> genericity_report(const ModelParams& params) {
  std::vector<std::string> issues;
  const std::size_t n = params.n_sites;
  if (n == 0) issues.emplace_back("n_sites must be >= 1");
  if (params.lambdas.size() != n) {
    issues.push_back("lambda has " + std::to_string(params.lambdas.size()) +
                     " entries, expected " + std::to_string(n));
  }
  if (params.xis.size() != n) {
    issues.push_back("xi has " + std::to_string(params.xis.size()) + " entries, expected " +
                     std::to_string(n));
  }
  if (!issues.empty()) return issues;

  auto require = [&](Complex x, const std::string& label) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      issues.push_back(label + " has a non-finite argument");
      return;
    }
    const Complex v = eval_h(x, params.nome);
    if (std::abs(v) < kGenericityTolerance * h_scale(x)) {
      issues.push_back(label + " = " + fmt_complex(v) + " vanishes (argument " +
                       fmt_complex(x) + ")");
    }
  };

  const Complex th = params.theta;
  const Complex eta = params.eta;
  const Complex zeta = params.zeta;
  require(th, "h(theta)");
  const int span = 2 * static_cast<int>(n);
  for (int k = -span; k <= span; ++k) {
    if (k == 0) continue;
    require(th + static_cast<double>(k) * eta, "h(theta" + std::string(k > 0 ? "+" : "") +
                                                   std::to_string(k) + "*eta)");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string s = std::to_string(i + 1);
    const Complex l = params.lambdas[i];
    require(zeta + l, "h(zeta+lambda_" + s + ")");
    require(th + zeta + l, "h(theta+zeta+lambda_" + s + ")");
    require(2.0 * l, "h(2*lambda_" + s + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string ij = std::to_string(i + 1) + "," + std::to_string(j + 1);
      require(params.lambdas[j] - params.lambdas[i], "h(lambda_j-lambda_i) [" + ij + "]");
      require(params.lambdas[j] + params.lambdas[i] + eta,
              "h(lambda_j+lambda_i+eta) [" + ij + "]");
      require(params.xis[j] - params.xis[i], "h(xi_j-xi_i) [" + ij + "]");
      require(params.xis[j] + params.xis[i], "h(xi_j+xi_i) [" + ij + "]");
    }
  }
  return issues;
}

ModelParams validate(const ModelParams& params) {
  auto issues = genericity_report(params);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return params;
}

ModelParams random_params(std::size_t n_sites, std::uint64_t seed, double p_magnitude) {
  if (n_sites == 0) throw GenerationError("n_sites must be >= 1");
  if (!(p_magnitude >= 0.0 && p_magnitude < 1.0)) {
    throw GenerationError("p magnitude must lie in [0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.1, 1.5);
  std::uniform_real_distribution<double> im(-0.2, 0.2);
  auto draw = [&] {
    const double a = re(rng);
    return Complex{a, im(rng)};
  };

  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    ModelParams params;
    const double phase = im(rng);
    params.nome = Nome(p_magnitude == 0.0 ? Complex{0.0, 0.0} : std::polar(p_magnitude, phase));
    params.eta = draw();
    params.zeta = draw();
    params.theta = draw();
    params.n_sites = n_sites;
    for (std::size_t i = 0; i < n_sites; ++i) params.lambdas.push_back(draw());
    for (std::size_t i = 0; i < n_sites; ++i) params.xis.push_back(draw());
    if (genericity_report(params).empty()) return params;
  }
  throw GenerationError("no generic parameter set found within the retry budget");
}

ModelParams with_nome(const ModelParams& params, const Nome& nome) {
  ModelParams out = params;
  out.nome = nome;
  return out;
}

}  // namespace esos
