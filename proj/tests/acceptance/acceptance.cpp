// Acceptance gate: one PASS/FAIL line per criterion, all tolerances and time
// limits fixed below. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "esos/algebra.hpp"
#include "esos/determinant.hpp"
#include "esos/fbasis.hpp"
#include "esos/numerics.hpp"
#include "esos/verify.hpp"

namespace {

using esos::Complex;
using Clock = std::chrono::steady_clock;

constexpr double kEllipticTol = 1e-10;
constexpr double kLocalTol = 1e-10;
constexpr double kMonodromyTol = 1e-9;
constexpr double kAgreementTol = 1e-8;
constexpr double kOffsetSpreadTol = 1e-8;
constexpr double kSymmetryTol = 1e-9;
constexpr double kThetaTol = 1e-7;
constexpr double kRecursionTol = 1e-8;
constexpr double kTrigTol = 1e-6;

constexpr double kEllipticSeconds = 1.0;
constexpr double kLocalSeconds = 5.0;
constexpr double kMonodromySeconds = 30.0;
constexpr double kAgreementSeconds = 120.0;
constexpr double kDeterminant50Seconds = 0.1;
constexpr double kOracle8Seconds = 30.0;
constexpr double kOracleGrowthMin = 3.0;   // t_oracle(N+1)/t_oracle(N), N ≥ 6
constexpr double kDetDoublingMax = 16.0;   // t_det(2N)/t_det(N)

constexpr std::size_t kSeeds = 20;
constexpr double kPMag = 0.1;

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel(Complex a, Complex b) { return esos::rel_compare(a, b).max_relative; }

/// Runs named checks with a pinned tolerance; folds them into one verdict.
Verdict run_checks(const std::vector<std::string>& names, double tol, esos::VerifyConfig config,
                   double limit_s) {
  Verdict v;
  for (const auto& n : names) config.tolerances[n] = tol;
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& n : names) {
    const esos::CheckResult r = esos::run_check(n, config);
    worst = std::max(worst, r.worst);
    v.require(r.passed, n + " worst " + sci(r.worst) + (r.detail.empty() ? "" : " " + r.detail));
  }
  const double t = seconds_since(start);
  v.require(t < limit_s, "runtime " + sci(t) + " s");
  if (v.passed) v.detail = "worst " + sci(worst) + " < " + sci(tol) + ", " + sci(t) + " s";
  return v;
}

Verdict criterion1() {
  esos::VerifyConfig c;
  c.elliptic_points = 100;
  return run_checks({"elliptic-oddness", "elliptic-addition", "elliptic-truncation",
                     "elliptic-quasi-periodicity"},
                    kEllipticTol, c, kEllipticSeconds);
}

Verdict criterion2() {
  esos::VerifyConfig c;
  c.local_points = 50;
  return run_checks({"r-dybe", "r-unitarity", "r-crossing", "r-ice-rule",
                     "r-transposed-zero-weight", "k-reflection"},
                    kLocalTol, c, kLocalSeconds);
}

Verdict criterion3() {
  esos::VerifyConfig c;
  c.max_n = 3;
  return run_checks({"monodromy-crossed-inverse", "monodromy-b-decomposition",
                     "monodromy-b-commutativity", "monodromy-dra", "monodromy-weight-zero"},
                    kMonodromyTol, c, kMonodromySeconds);
}

Verdict criterion4() {
  Verdict v;
  const auto start = Clock::now();
  double worst = 0.0;
  std::string offsets;
  for (std::size_t n = 1; n <= 4; ++n) {
    const double c_n = esos::formula_normalization(n);
    double spread = 0.0;
    for (std::size_t seed = 0; seed < kSeeds; ++seed) {
      const esos::ModelParams p = esos::random_params(n, seed, kPMag);
      const Complex oracle = *esos::partition_oracle(p).value;
      const Complex fbasis = *esos::partition_fbasis(p).value;
      const esos::PartitionResult det = esos::partition_determinant(p);
      worst = std::max({worst, rel(fbasis, oracle), rel(*det.value, oracle)});
      if (n == 1) worst = std::max(worst, rel(esos::partition_single_site(p), oracle));
      // Offset of the bare formula against the oracle.
      spread = std::max(spread, rel(oracle / *det.raw_value, c_n));
    }
    v.require(spread < kOffsetSpreadTol, "N=" + std::to_string(n) + " offset spread " + sci(spread));
    offsets += (offsets.empty() ? "" : " ") + std::string("c") + std::to_string(n) + "=" +
               (c_n > 0 ? "+1" : "-1");
  }
  const double t = seconds_since(start);
  v.require(worst < kAgreementTol, "worst disagreement " + sci(worst));
  v.require(t < kAgreementSeconds, "runtime " + sci(t) + " s");
  if (v.passed) {
    v.detail = "80 runs, worst " + sci(worst) + " < " + sci(kAgreementTol) +
               "; offset (-1)^(N(N+1)/2): " + offsets + ", " + sci(t) + " s";
  }
  return v;
}

Verdict criterion5() {
  esos::VerifyConfig c;
  c.max_n = 4;
  Verdict v;
  std::string parts;
  for (const auto& [names, tol] :
       std::vector<std::pair<std::vector<std::string>, double>>{
           {{"partition-symmetry"}, kSymmetryTol},
           {{"partition-theta-quasi-periodicity"}, kThetaTol},
           {{"recursion-lower", "recursion-upper"}, kRecursionTol}}) {
    const Verdict sub = run_checks(names, tol, c, 1e9);
    v.require(sub.passed, sub.detail);
    parts += (parts.empty() ? "" : "; ") + names.front() + " " + sub.detail;
  }
  if (v.passed) v.detail = parts;
  return v;
}

Verdict criterion6() {
  Verdict v;
  double worst = 0.0;
  std::string constants;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Complex> ratios;
    for (std::size_t seed = 0; seed < kSeeds; ++seed) {
      const esos::ModelParams p = esos::random_params(n, seed, 0.0);
      const esos::PartitionResult trig = esos::partition_trigonometric(p);
      const esos::PartitionResult ell =
          esos::partition_determinant(esos::with_nome(p, esos::Nome(1e-12)));
      worst = std::max(worst, rel(*ell.value, *trig.value));
      ratios.push_back(*ell.value / *trig.raw_value);
    }
    double spread = 0.0;
    for (Complex r : ratios) spread = std::max(spread, rel(r, ratios.front()));
    const double pinned = esos::formula_normalization(n) * std::exp(esos::trigonometric_log_constant(n));
    v.require(spread < kTrigTol, "N=" + std::to_string(n) + " constant spread " + sci(spread));
    v.require(rel(ratios.front(), pinned) < kTrigTol,
              "N=" + std::to_string(n) + " constant " + sci(ratios.front().real()));
    constants += (constants.empty() ? "" : " ") + std::to_string(n) + ":" + sci(pinned);
  }
  v.require(worst < kTrigTol, "worst " + sci(worst));
  if (v.passed) {
    v.detail = "worst " + sci(worst) + " < " + sci(kTrigTol) +
               "; constant (-1)^(N(N+1)/2)*4^(N^2) = " + constants;
  }
  return v;
}

Verdict criterion7() {
  Verdict v;
  const esos::ModelParams p50 = esos::random_params(50, 1, kPMag);
  double t50 = HUGE_VAL;
  for (int k = 0; k < 3; ++k) {
    const auto start = Clock::now();
    const esos::PartitionResult r = esos::partition_determinant(p50);
    t50 = std::min(t50, seconds_since(start));
    v.require(std::isfinite(r.log_value.real()), "N=50 log value not finite");
  }
  v.require(t50 < kDeterminant50Seconds, "det N=50 " + sci(t50) + " s");

  const auto start8 = Clock::now();
  (void)esos::partition_oracle(esos::random_params(8, 1, kPMag));
  const double t8 = seconds_since(start8);
  v.require(t8 < kOracle8Seconds, "oracle N=8 " + sci(t8) + " s");

  const auto rows = esos::run_benchmark(16, 1, kPMag, 8);
  std::string growth;
  for (std::size_t n = 6; n + 1 <= 8; ++n) {
    const double g = *rows[n].t_oracle_s / *rows[n - 1].t_oracle_s;
    v.require(g > kOracleGrowthMin, "oracle growth N=" + std::to_string(n) + " " + sci(g));
    growth += " " + sci(g);
  }
  std::string doubling;
  for (std::size_t n = 4; n <= 8; ++n) {
    const double d = rows[2 * n - 1].t_det_s / rows[n - 1].t_det_s;
    v.require(d < kDetDoublingMax, "det doubling N=" + std::to_string(n) + " " + sci(d));
    doubling += " " + sci(d);
  }
  for (const auto& r : rows)
    if (r.rel_diff) v.require(*r.rel_diff < kAgreementTol, "bench rel_diff " + sci(*r.rel_diff));
  if (v.passed) {
    v.detail = "det N=50 " + sci(t50) + " s, oracle N=8 " + sci(t8) +
               " s, oracle growth N=6,7:" + growth + ", det doubling N=4..8:" + doubling;
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"elliptic function identities", criterion1},
      {"R and K matrix identities", criterion2},
      {"monodromy identities", criterion3},
      {"three-way partition function agreement", criterion4},
      {"partition function properties", criterion5},
      {"trigonometric degeneration", criterion6},
      {"performance", criterion7},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.passed;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, v.passed ? "PASS" : "FAIL",
                criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
