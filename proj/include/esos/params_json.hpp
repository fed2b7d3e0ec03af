#pragma once

// JSON parameter files:
//   {"p": [re,im], "eta": [re,im], "zeta": [re,im], "theta": [re,im],
//    "lambda": [[re,im], ...], "xi": [[re,im], ...]}

#include <string>
#include <string_view>

#include "esos/model.hpp"

namespace esos {

/// Parses the schema above. Malformed input throws ValidationError; the
/// result is not checked for genericity.
ModelParams params_from_json(std::string_view text);
ModelParams params_from_json_file(const std::string& path);

/// Single-line JSON in the same schema, numbers with 17 significant digits.
std::string params_to_json(const ModelParams& params);

/// Shortest faithful decimal for a double: "%.17g".
std::string format_double(double x);
std::string format_complex(Complex z);

}  // namespace esos
