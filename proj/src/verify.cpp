#include "esos/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "esos/algebra.hpp"
#include "esos/determinant.hpp"
#include "esos/elliptic.hpp"
#include "esos/fbasis.hpp"
#include "esos/numerics.hpp"

namespace esos {

namespace {

struct Outcome {
  double worst = 0.0;
  std::size_t samples = 0;
  std::string detail;

  void add(double residual) {
    // NaN must never pass silently.
    worst = std::isnan(residual) ? HUGE_VAL : std::max(worst, residual);
    ++samples;
  }
};

using CheckFn = std::function<Outcome(const VerifyConfig&)>;

struct CheckSpec {
  std::string name;
  double threshold;
  CheckFn run;
};

double rel(Complex a, Complex b) { return rel_compare(a, b).max_relative; }

std::vector<Nome> elliptic_nomes() {
  return {Nome(0.0), Nome(1e-3), Nome(0.1), Nome(std::polar(0.5, 0.2))};
}

/// Parameters for local (R/K) identities: p, η, ζ, θ from one draw.
ModelParams local_params(std::uint64_t seed, double p_magnitude) {
  return random_params(1, seed, p_magnitude);
}

Outcome elliptic_oddness(const VerifyConfig& c) {
  Outcome out;
  SampleStream s(101);
  for (const Nome& q : elliptic_nomes()) {
    for (std::size_t k = 0; k < c.elliptic_points; ++k) {
      const Complex z = s.strip(2.0);
      out.add(rel(eval_h(-z, q), -eval_h(z, q)));
    }
  }
  return out;
}

Outcome elliptic_addition(const VerifyConfig& c) {
  Outcome out;
  SampleStream s(102);
  for (const Nome& q : elliptic_nomes()) {
    auto h = [&](Complex z) { return eval_h(z, q); };
    for (std::size_t k = 0; k < c.elliptic_points; ++k) {
      const Complex x = s.strip(1.0), y = s.strip(1.0), u = s.strip(1.0), v = s.strip(1.0);
      const Complex t1 = h(x + u) * h(x - u) * h(y + v) * h(y - v);
      const Complex t2 = h(x + v) * h(x - v) * h(y + u) * h(y - u);
      const Complex t3 = h(x + y) * h(x - y) * h(u + v) * h(u - v);
      const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
      out.add(std::abs(t1 - t2 - t3) / scale);
    }
  }
  return out;
}

Outcome elliptic_truncation(const VerifyConfig& c) {
  Outcome out;
  SampleStream s(103);
  for (const Nome& q : elliptic_nomes()) {
    if (q.degenerate()) continue;
    const Nome doubled(q.p(), 2 * q.truncation_order());
    for (std::size_t k = 0; k < c.elliptic_points; ++k) {
      const Complex z = s.strip(2.0);
      out.add(rel(eval_h(z, q), eval_h(z, doubled)));
    }
  }
  return out;
}

Outcome elliptic_quasi_periodicity(const VerifyConfig& c) {
  Outcome out;
  SampleStream s(104);
  for (const Nome& q : elliptic_nomes()) {
    for (std::size_t k = 0; k < c.elliptic_points; ++k) {
      const Complex z = s.strip(2.0);
      const auto [half, quasi] = quasi_periodicity_factors(z, q);
      const auto [half_exact, quasi_exact] = analytic_quasi_periodicity(z, q);
      out.add(rel(half, half_exact));
      if (quasi) out.add(rel(*quasi, *quasi_exact));
    }
  }
  return out;
}

/// Runs fn(params, stream) over config.local_points random local draws.
Outcome over_local_points(const VerifyConfig& c, std::uint64_t salt,
                          const std::function<double(const ModelParams&, SampleStream&)>& fn) {
  Outcome out;
  for (std::size_t k = 0; k < c.local_points; ++k) {
    const ModelParams p = local_params(salt * 1000 + k, c.p_magnitude);
    SampleStream s(salt * 7919 + k);
    out.add(fn(p, s));
  }
  return out;
}

Outcome r_dybe(const VerifyConfig& c) {
  return over_local_points(c, 1, [&](const ModelParams& p, SampleStream& s) {
    const Complex l1 = s.box(), l2 = s.box(), l3 = s.box();
    if (!c.inject_fault) return check_dybe(l1, l2, l3, p.theta, p);
    RProvider faulty = [p](Complex lambda, Complex theta) {
      RMatrix r = eval_r(lambda, theta, p);
      r.entries(1, 2) *= 1.0 + 1e-3;
      return r;
    };
    return check_dybe(l1, l2, l3, p.theta, p.eta, faulty);
  });
}

Outcome r_unitarity(const VerifyConfig& c) {
  return over_local_points(c, 2, [](const ModelParams& p, SampleStream& s) {
    return check_unitarity(s.box(), p.theta, p);
  });
}

Outcome r_crossing(const VerifyConfig& c) {
  return over_local_points(c, 3, [](const ModelParams& p, SampleStream& s) {
    return check_crossing(s.box(), p.theta, p);
  });
}

Outcome r_ice_rule(const VerifyConfig& c) {
  return over_local_points(c, 4, [](const ModelParams& p, SampleStream& s) {
    return check_ice_rule(s.box(), p.theta, p);
  });
}

Outcome r_transposed_zero_weight(const VerifyConfig& c) {
  return over_local_points(c, 5, [](const ModelParams& p, SampleStream& s) {
    return check_transposed_zero_weight(s.box(), p.theta, p);
  });
}

Outcome k_reflection(const VerifyConfig& c) {
  return over_local_points(c, 6, [](const ModelParams& p, SampleStream& s) {
    const Complex l1 = s.box();
    const Complex l2 = s.box();
    return check_reflection_equation(l1, l2, p);
  });
}

/// Runs fn over N = 1..min(cap, max_n) and config.seeds draws each.
Outcome over_sizes(const VerifyConfig& c, std::size_t first, std::size_t cap,
                   std::uint64_t salt,
                   const std::function<double(const ModelParams&, SampleStream&)>& fn) {
  Outcome out;
  for (std::size_t n = first; n <= std::min(cap, c.max_n); ++n) {
    for (std::size_t seed = 0; seed < c.seeds; ++seed) {
      const ModelParams p = random_params(n, seed + 100 * salt, c.p_magnitude);
      SampleStream s(salt * 104729 + n * 1000 + seed);
      out.add(fn(p, s));
    }
  }
  if (out.samples == 0) out.detail = "no sizes in range";
  return out;
}

// Monodromy checks cost O(8^N); they run on fewer draws than the partition
// checks.
VerifyConfig fewer_seeds(const VerifyConfig& c, std::size_t seeds) {
  VerifyConfig out = c;
  out.seeds = std::min(c.seeds, seeds);
  return out;
}

Outcome monodromy_crossed_inverse(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 11, [](const ModelParams& p, SampleStream& s) {
    return check_crossed_inverse_identity(s.box(), p);
  });
}

Outcome monodromy_b_decomposition(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 12, [](const ModelParams& p, SampleStream& s) {
    return check_b_decomposition(s.box(), p);
  });
}

Outcome monodromy_b_commutativity(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 13, [](const ModelParams& p, SampleStream& s) {
    const Complex l1 = s.box();
    const Complex l2 = s.box();
    return check_b_commutativity(l1, l2, p);
  });
}

Outcome monodromy_dra(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 2, 14, [](const ModelParams& p, SampleStream& s) {
    const Complex l1 = s.box();
    const Complex l2 = s.box();
    return check_dynamical_reflection_algebra(l1, l2, p);
  });
}

Outcome monodromy_weight_zero(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 15, [](const ModelParams& p, SampleStream& s) {
    const Complex l = s.box();
    return std::max(weight_zero_residual(build_bulk_monodromy(l, p)),
                    weight_zero_residual(build_boundary_monodromy(l, p)));
  });
}

Outcome b_spin_lowering(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 16, [](const ModelParams& p, SampleStream& s) {
    return check_b_spin_lowering(s.box(), p);
  });
}

Outcome fbasis_abar(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 1, 3, 17, [](const ModelParams& p, SampleStream& s) {
    return check_abar_eigenvalue(s.box(), p);
  });
}

Outcome fbasis_single_site(const VerifyConfig& c) {
  return over_sizes(c, 1, 1, 18, [](const ModelParams& p, SampleStream& s) {
    const Complex l = s.box();
    return rel_residual(build_symmetric_b(l, p).entries,
                        extract_b_operator(build_boundary_monodromy(l, p)).entries);
  });
}

Outcome fbasis_commutativity(const VerifyConfig& c) {
  return over_sizes(c, 2, 4, 19, [](const ModelParams& p, SampleStream& s) {
    const ComplexMatrix b1 = build_symmetric_b(s.box(), p).entries;
    const ComplexMatrix b2 = build_symmetric_b(s.box(), p).entries;
    return rel_residual(ComplexMatrix(b1 * b2), ComplexMatrix(b2 * b1));
  });
}

Outcome partition_single_site_check(const VerifyConfig& c) {
  return over_sizes(c, 1, 1, 20, [](const ModelParams& p, SampleStream&) {
    const Complex exact = partition_single_site(p);
    return std::max({rel(*partition_oracle(p).value, exact),
                     rel(*partition_fbasis(p).value, exact),
                     rel(*partition_determinant(p).value, exact)});
  });
}

Outcome partition_fbasis_vs_oracle(const VerifyConfig& c) {
  return over_sizes(c, 1, 12, 21, [](const ModelParams& p, SampleStream&) {
    return rel(*partition_fbasis(p).value, *partition_oracle(p).value);
  });
}

Outcome partition_determinant_vs_oracle(const VerifyConfig& c) {
  return over_sizes(c, 1, 12, 22, [](const ModelParams& p, SampleStream&) {
    return rel(*partition_determinant(p).value, *partition_oracle(p).value);
  });
}

template <class Route>
double permutation_spread(const ModelParams& p, Route&& z) {
  const Complex base = z(p);
  double worst = 0.0;
  std::vector<std::size_t> perm(p.n_sites);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    ModelParams by_lambda = p;
    ModelParams by_xi = p;
    for (std::size_t i = 0; i < p.n_sites; ++i) {
      by_lambda.lambdas[i] = p.lambdas[perm[i]];
      by_xi.xis[i] = p.xis[perm[i]];
    }
    worst = std::max({worst, rel(z(by_lambda), base), rel(z(by_xi), base)});
  }
  return worst;
}

Outcome partition_symmetry(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 2, 3, 23, [](const ModelParams& p, SampleStream&) {
    return std::max(
        permutation_spread(p, [](const ModelParams& q) { return *partition_oracle(q).value; }),
        permutation_spread(p,
                           [](const ModelParams& q) { return *partition_determinant(q).value; }));
  });
}

Outcome partition_theta_quasi_periodicity(const VerifyConfig& c) {
  return over_sizes(fewer_seeds(c, 5), 2, 3, 24, [](const ModelParams& p, SampleStream& s) {
    const int order = 2 * static_cast<int>(p.n_sites) - 2;
    const Complex norm = static_cast<double>(p.n_sites - 1) * p.eta;
    const std::array<Complex, 3> samples{s.box(), s.box(), s.box()};
    double worst = 0.0;
    for (std::size_t i = 0; i < p.n_sites; ++i) {
      auto z_tilde = [&](Complex lambda) {
        ModelParams q = p;
        q.lambdas[i] = lambda;
        return normalized_partition(q, *partition_oracle(q).value);
      };
      worst = std::max(worst,
                       check_theta_order_norm(z_tilde, order, norm, p.nome, samples, 1.0)
                           .worst_residual);
    }
    return worst;
  });
}

Outcome recursion(const VerifyConfig& c, bool lower, std::uint64_t salt) {
  return over_sizes(fewer_seeds(c, 10), 2, 6, salt, [lower](ModelParams p, SampleStream&) {
    if (lower) {
      p.lambdas[0] = p.xis[0];
      return std::max(check_recursion_lower(p, Route::kOracle),
                      check_recursion_lower(p, Route::kDeterminant));
    }
    p.lambdas[p.n_sites - 1] = -p.xis[0];
    return std::max(check_recursion_upper(p, Route::kOracle),
                    check_recursion_upper(p, Route::kDeterminant));
  });
}

Outcome trigonometric_limit(const VerifyConfig& c) {
  return over_sizes(c, 1, 3, 27, [](const ModelParams& p, SampleStream&) {
    const PartitionResult elliptic = partition_determinant(with_nome(p, Nome(1e-12)));
    const PartitionResult trig = partition_trigonometric(with_nome(p, Nome(0.0)));
    return rel(*elliptic.value, *trig.value);
  });
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> checks = {
      {"elliptic-oddness", 1e-12, elliptic_oddness},
      {"elliptic-addition", 1e-10, elliptic_addition},
      {"elliptic-truncation", 1e-14, elliptic_truncation},
      {"elliptic-quasi-periodicity", 1e-10, elliptic_quasi_periodicity},
      {"r-dybe", 1e-10, r_dybe},
      {"r-unitarity", 1e-10, r_unitarity},
      {"r-crossing", 1e-10, r_crossing},
      {"r-ice-rule", 1e-10, r_ice_rule},
      {"r-transposed-zero-weight", 1e-10, r_transposed_zero_weight},
      {"k-reflection", 1e-10, k_reflection},
      {"monodromy-crossed-inverse", 1e-9, monodromy_crossed_inverse},
      {"monodromy-b-decomposition", 1e-9, monodromy_b_decomposition},
      {"monodromy-b-commutativity", 1e-9, monodromy_b_commutativity},
      {"monodromy-dra", 1e-9, monodromy_dra},
      {"monodromy-weight-zero", 1e-12, monodromy_weight_zero},
      {"b-spin-lowering", 1e-12, b_spin_lowering},
      {"fbasis-abar", 1e-9, fbasis_abar},
      {"fbasis-single-site", 1e-9, fbasis_single_site},
      {"fbasis-commutativity", 1e-9, fbasis_commutativity},
      {"partition-single-site", 1e-9, partition_single_site_check},
      {"partition-fbasis-vs-oracle", 1e-9, partition_fbasis_vs_oracle},
      {"partition-determinant-vs-oracle", 1e-8, partition_determinant_vs_oracle},
      {"partition-symmetry", 1e-9, partition_symmetry},
      {"partition-theta-quasi-periodicity", 1e-7, partition_theta_quasi_periodicity},
      {"recursion-lower", 1e-8, [](const VerifyConfig& c) { return recursion(c, true, 25); }},
      {"recursion-upper", 1e-8, [](const VerifyConfig& c) { return recursion(c, false, 26); }},
      {"trigonometric-limit", 1e-6, trigonometric_limit},
  };
  return checks;
}

}  // namespace

Complex SampleStream::box() {
  std::uniform_real_distribution<double> re(0.1, 1.5);
  std::uniform_real_distribution<double> im(-0.2, 0.2);
  const double a = re(rng_);
  return {a, im(rng_)};
}

Complex SampleStream::strip(double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double a = u(rng_);
  return {a, u(rng_)};
}

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.name);
  return names;
}

std::optional<double> default_threshold(const std::string& name) {
  for (const auto& c : registry())
    if (c.name == name) return c.threshold;
  return std::nullopt;
}

CheckResult run_check(const std::string& name, const VerifyConfig& config) {
  for (const auto& entry : registry()) {
    if (entry.name != name) continue;
    CheckResult r;
    r.name = name;
    r.threshold = entry.threshold;
    if (auto it = config.tolerances.find(name); it != config.tolerances.end()) {
      r.threshold = it->second;
    }
    try {
      const Outcome o = entry.run(config);
      r.worst = o.worst;
      r.samples = o.samples;
      r.detail = o.detail;
      r.passed = o.samples > 0 && o.worst <= r.threshold;
    } catch (const std::exception& e) {
      r.worst = HUGE_VAL;
      r.passed = false;
      r.detail = e.what();
    }
    return r;
  }
  throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  std::vector<CheckResult> out;
  if (config.only) {
    out.push_back(run_check(*config.only, config));
    return out;
  }
  for (const auto& name : check_names()) out.push_back(run_check(name, config));
  return out;
}

std::vector<BenchRow> run_benchmark(std::size_t max_n, std::uint64_t seed, double p_magnitude,
                                    std::size_t oracle_cap) {
  std::vector<BenchRow> rows;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const ModelParams p = random_params(n, seed, p_magnitude);
    BenchRow row;
    row.n = n;
    PartitionResult det;
    row.t_det_s = time_per_call([&] { det = partition_determinant(p); });
    if (n <= oracle_cap) {
      PartitionResult oracle;
      row.t_oracle_s = time_per_call([&] { oracle = partition_oracle(p); });
      if (det.value && oracle.value) row.rel_diff = rel(*det.value, *oracle.value);
    }
    rows.push_back(row);
  }
  return rows;
}

Complex partition_single_site(const ModelParams& p) {
  const Nome& q = p.nome;
  auto h = [&](Complex z) { return eval_h(z, q); };
  const Complex l = p.lambdas.at(0);
  const Complex x = p.xis.at(0);
  const Complex th = p.theta;
  const Complex z = p.zeta;
  return h(p.eta) * h(th - p.eta) / (h(th) * h(th)) *
         (h(th + z - l) / h(th + z + l) * h(l - x) * h(th + l + x) +
          h(z - l) / h(z + l) * h(l + x) * h(th - l + x));
}

}  // namespace esos
