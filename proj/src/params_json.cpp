#include "esos/params_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "esos/errors.hpp"

namespace esos {

namespace {

using nlohmann::json;

Complex complex_from(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError({"\"" + key + "\" must be a two-element array [re, im]"});
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& root, const std::string& key) {
  auto it = root.find(key);
  if (it == root.end()) throw ValidationError({"missing key \"" + key + "\""});
  return *it;
}

std::vector<Complex> complex_list(const json& root, const std::string& key) {
  const json& arr = field(root, key);
  if (!arr.is_array()) throw ValidationError({"\"" + key + "\" must be an array"});
  std::vector<Complex> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(complex_from(arr[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

ModelParams params_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError({std::string("malformed JSON: ") + e.what()});
  }
  if (!root.is_object()) throw ValidationError({"parameter file must hold a JSON object"});

  const Complex p = complex_from(field(root, "p"), "p");
  ModelParams params;
  try {
    params.nome = Nome(p);
  } catch (const InvalidNome& e) {
    throw ValidationError({e.what()});
  }
  params.eta = complex_from(field(root, "eta"), "eta");
  params.zeta = complex_from(field(root, "zeta"), "zeta");
  params.theta = complex_from(field(root, "theta"), "theta");
  params.lambdas = complex_list(root, "lambda");
  params.xis = complex_list(root, "xi");
  if (params.lambdas.size() != params.xis.size()) {
    throw ValidationError({"\"lambda\" and \"xi\" must have the same length (got " +
                           std::to_string(params.lambdas.size()) + " and " +
                           std::to_string(params.xis.size()) + ")"});
  }
  if (params.lambdas.empty()) throw ValidationError({"at least one site is required"});
  params.n_sites = params.lambdas.size();
  return params;
}

ModelParams params_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open parameter file " + path});
  std::stringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str());
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string params_to_json(const ModelParams& params) {
  auto list = [](const std::vector<Complex>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_complex(v[i]);
    }
    return s + "]";
  };
  return "{\"p\":" + format_complex(params.nome.p()) + ",\"eta\":" + format_complex(params.eta) +
         ",\"zeta\":" + format_complex(params.zeta) + ",\"theta\":" +
         format_complex(params.theta) + ",\"lambda\":" + list(params.lambdas) +
         ",\"xi\":" + list(params.xis) + "}";
}

}  // namespace esos
