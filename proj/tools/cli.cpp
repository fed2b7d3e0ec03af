#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "esos/algebra.hpp"
#include "esos/determinant.hpp"
#include "esos/errors.hpp"
#include "esos/fbasis.hpp"
#include "esos/numerics.hpp"
#include "esos/params_json.hpp"
#include "esos/verify.hpp"

namespace esos::cli {

namespace {

struct Options {
  std::string params_path;
  int n = 2;
  std::uint64_t seed = 0;
  double p_mag = 0.1;
  std::string method = "determinant";
  std::string format = "json";
  std::string check;
  std::vector<std::string> tol;
  std::size_t seeds = 20;
  int oracle_cap = 8;
  bool inject_fault = false;
};

std::string json_complex(const std::optional<Complex>& z) {
  return z ? format_complex(*z) : "null";
}

std::string json_double(const std::optional<double>& x) {
  return x ? format_double(*x) : "null";
}

std::string csv_double(const std::optional<double>& x) {
  return x ? format_double(*x) : "";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError({"--tol expects <name>=<float>, got '" + item + "'"});
    }
    const std::string name = item.substr(0, eq);
    if (!default_threshold(name)) throw ValidationError({"--tol: unknown check '" + name + "'"});
    try {
      std::size_t used = 0;
      const double value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || !(value >= 0.0)) throw std::invalid_argument(item);
      out[name] = value;
    } catch (const std::logic_error&) {
      throw ValidationError({"--tol: bad value in '" + item + "'"});
    }
  }
  return out;
}

ModelParams load_params(const Options& o, const CLI::App& cmd, std::ostream& out, bool& random) {
  random = cmd.count("--params") == 0;
  if (!random) return validate(params_from_json_file(o.params_path));
  if (o.n < 1) throw ValidationError({"--n must be at least 1"});
  ModelParams p = random_params(static_cast<std::size_t>(o.n), o.seed, o.p_mag);
  out << "{\"params\":" << params_to_json(p) << "}\n";
  return p;
}

void print_result(const PartitionResult& r, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    const Complex z = r.value.value_or(Complex{NAN, NAN});
    out << to_string(r.method) << ',' << format_double(z.real()) << ','
        << format_double(z.imag()) << ',' << format_double(r.log_value.real()) << ','
        << format_double(r.log_value.imag()) << ',' << format_double(r.elapsed_s) << ','
        << csv_double(r.residual_vs_oracle) << '\n';
    return;
  }
  out << "{\"method\":\"" << to_string(r.method) << "\",\"z\":" << json_complex(r.value)
      << ",\"log_z\":" << format_complex(r.log_value)
      << ",\"elapsed_s\":" << format_double(r.elapsed_s)
      << ",\"residual_vs_oracle\":" << json_double(r.residual_vs_oracle) << "}\n";
}

int run_compute(const Options& o, const CLI::App& cmd, std::ostream& out) {
  std::vector<Method> methods;
  if (o.method == "all") {
    methods = {Method::kOracle, Method::kFBasis, Method::kDeterminant};
  } else {
    const auto m = method_from_string(o.method);
    if (!m || *m == Method::kTrigonometric) {
      throw ValidationError({"unknown method '" + o.method + "'"});
    }
    methods = {*m};
  }
  bool random = false;
  const ModelParams p = load_params(o, cmd, out, random);
  for (Method m : methods) {
    if ((m == Method::kOracle || m == Method::kFBasis) &&
        p.n_sites > static_cast<std::size_t>(kDenseSiteCap)) {
      throw ValidationError({"method " + std::string(to_string(m)) + " is capped at N = " +
                             std::to_string(kDenseSiteCap)});
    }
  }
  if (o.format == "csv") out << "method,z_re,z_im,log_z_re,log_z_im,elapsed_s,residual_vs_oracle\n";
  std::optional<Complex> oracle;
  for (Method m : methods) {
    PartitionResult r;
    switch (m) {
      case Method::kOracle:
        r = partition_oracle(p);
        oracle = r.value;
        break;
      case Method::kFBasis:
        r = partition_fbasis(p);
        break;
      default:
        r = partition_determinant(p);
        break;
    }
    if (m != Method::kOracle && oracle && r.value) {
      r.residual_vs_oracle = rel_compare(*r.value, *oracle).max_relative;
    }
    print_result(r, o.format, out);
  }
  return kExitOk;
}

int run_verify(const Options& o, const CLI::App& cmd, std::ostream& out) {
  VerifyConfig config;
  if (cmd.count("--n")) {
    if (o.n < 1) throw ValidationError({"--n must be at least 1"});
    config.max_n = static_cast<std::size_t>(o.n);
  }
  config.seeds = o.seeds;
  config.p_magnitude = o.p_mag;
  config.tolerances = parse_tolerances(o.tol);
  config.inject_fault = o.inject_fault;
  if (!o.check.empty()) {
    if (!default_threshold(o.check)) throw ValidationError({"unknown check '" + o.check + "'"});
    config.only = o.check;
  }
  bool all_passed = true;
  if (o.format == "csv") out << "check,worst,threshold,passed,samples\n";
  for (const CheckResult& r : run_verification(config)) {
    all_passed = all_passed && r.passed;
    if (o.format == "csv") {
      out << r.name << ',' << format_double(r.worst) << ',' << format_double(r.threshold) << ','
          << (r.passed ? "pass" : "fail") << ',' << r.samples << '\n';
    } else {
      out << "{\"check\":" << json_string(r.name) << ",\"worst\":" << format_double(r.worst)
          << ",\"threshold\":" << format_double(r.threshold)
          << ",\"passed\":" << (r.passed ? "true" : "false") << ",\"samples\":" << r.samples;
      if (!r.detail.empty()) out << ",\"detail\":" << json_string(r.detail);
      out << "}\n";
    }
    out.flush();
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

int run_bench(const Options& o, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  const int max_n = cmd.count("--n") ? o.n : 8;
  if (max_n < 1) throw ValidationError({"--n must be at least 1"});
  const int cap = std::min(o.oracle_cap, kDenseSiteCap);
  if (max_n > cap) err << "note: oracle omitted for N > " << cap << '\n';
  if (o.format == "csv") out << "N,t_oracle_s,t_det_s,rel_diff\n";
  for (const BenchRow& row : run_benchmark(static_cast<std::size_t>(max_n), o.seed, o.p_mag,
                                           static_cast<std::size_t>(cap))) {
    if (o.format == "csv") {
      out << row.n << ',' << csv_double(row.t_oracle_s) << ',' << format_double(row.t_det_s)
          << ',' << csv_double(row.rel_diff) << '\n';
    } else {
      out << "{\"N\":" << row.n << ",\"t_oracle_s\":" << json_double(row.t_oracle_s)
          << ",\"t_det_s\":" << format_double(row.t_det_s)
          << ",\"rel_diff\":" << json_double(row.rel_diff) << "}\n";
    }
    out.flush();
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition function of the elliptic SOS model with a reflecting end"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&o](CLI::App* cmd) {
    cmd->add_option("--params", o.params_path, "JSON parameter file")->check(CLI::ExistingFile);
    cmd->add_option("--n", o.n, "number of sites (random mode) or size cap");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--p-mag", o.p_mag, "nome magnitude for random parameters")
        ->check(CLI::Range(0.0, 0.999));
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* compute = app.add_subcommand("compute", "compute Z by one or all methods");
  add_params(compute);
  compute->add_option("--method", o.method, "oracle|fbasis|determinant|all")
      ->check(CLI::IsMember({"oracle", "fbasis", "determinant", "all"}));

  CLI::App* verify = app.add_subcommand("verify", "run the identity checks");
  add_params(verify);
  verify->add_option("--check", o.check, "run only this check");
  verify->add_option("--tol", o.tol, "threshold override <name>=<float>")->take_all();
  verify->add_option("--seeds", o.seeds, "parameter draws per size");
  verify->add_flag("--inject-fault", o.inject_fault)->group("");

  CLI::App* bench = app.add_subcommand("bench", "time oracle against determinant");
  add_params(bench);
  o.format = "json";
  bench->add_option("--oracle-cap", o.oracle_cap, "largest N for the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  // bench writes a CSV table unless json is asked for.
  if (bench->parsed() && bench->count("--format") == 0) o.format = "csv";

  try {
    if (compute->parsed()) return run_compute(o, *compute, out);
    if (verify->parsed()) return run_verify(o, *verify, out);
    return run_bench(o, *bench, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NearPoleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNearPole;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace esos::cli
