#pragma once

// Named numerical checks of every identity the model rests on, plus the
// oracle-vs-determinant timing table. Used by the CLI and the acceptance
// suite.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "esos/model.hpp"

namespace esos {

struct CheckResult {
  std::string name;
  double worst = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::size_t samples = 0;
  std::string detail;
};

struct VerifyConfig {
  std::size_t max_n = 4;        // largest N for size-dependent checks
  std::size_t seeds = 20;       // parameter draws per N
  std::size_t local_points = 50;     // random points for R/K identities
  std::size_t elliptic_points = 100; // random points per nome for h
  double p_magnitude = 0.1;
  std::optional<std::string> only;
  std::map<std::string, double> tolerances;
  bool inject_fault = false;  // perturb one R entry by 1e-3 inside the DYBE check
};

/// Names in execution order.
std::vector<std::string> check_names();
std::optional<double> default_threshold(const std::string& name);

/// Runs one named check; throws std::invalid_argument for unknown names.
CheckResult run_check(const std::string& name, const VerifyConfig& config);

/// Every check (or just config.only).
std::vector<CheckResult> run_verification(const VerifyConfig& config);

/// Uniform draws from the parameter box [0.1, 1.5] × [−0.2, 0.2]i.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : rng_(seed) {}
  Complex box();
  /// Uniform in |Re| ≤ half_width, |Im| ≤ half_width.
  Complex strip(double half_width);

 private:
  std::mt19937_64 rng_;
};

struct BenchRow {
  std::size_t n = 0;
  std::optional<double> t_oracle_s;
  double t_det_s = 0.0;
  std::optional<double> rel_diff;
};

/// Wall time per call of fn, repeating until at least min_total_s has elapsed.
template <class Fn>
double time_per_call(Fn&& fn, double min_total_s = 0.02);

/// Times oracle and determinant on random_params(N, seed, p) for N = 1..max_n;
/// the oracle is skipped above oracle_cap.
std::vector<BenchRow> run_benchmark(std::size_t max_n, std::uint64_t seed, double p_magnitude,
                                    std::size_t oracle_cap);

/// The two-term N = 1 closed form.
Complex partition_single_site(const ModelParams& params);

}  // namespace esos

#include <chrono>

namespace esos {

template <class Fn>
double time_per_call(Fn&& fn, double min_total_s) {
  using Clock = std::chrono::steady_clock;
  std::size_t calls = 0;
  const auto start = Clock::now();
  double total = 0.0;
  do {
    fn();
    ++calls;
    total = std::chrono::duration<double>(Clock::now() - start).count();
  } while (total < min_total_s);
  return total / static_cast<double>(calls);
}

}  // namespace esos
