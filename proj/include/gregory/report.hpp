#pragma once

// JSON forms of the result types used by the CLI.

#include "gregory/properties.hpp"
#include "gregory/quadrature.hpp"

#include <json.hpp>

namespace gregory {

/// {"value", "abs_error", "n_evals", "converged"}
nlohmann::json to_json(const quadrature::QuadratureResult& r);

/// {"suite", "passed", "horizon": [N, K], "first_violation": null | {"k", "n", "value"}}
nlohmann::json to_json(const properties::CmReport& r);

}  // namespace gregory
