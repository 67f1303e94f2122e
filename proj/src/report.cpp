#include "gregory/report.hpp"

namespace gregory {

nlohmann::json to_json(const quadrature::QuadratureResult& r) {
    return {{"value", r.value}, {"abs_error", r.abs_error_estimate}, {"n_evals", r.n_evals}, {"converged", r.converged}};
}

nlohmann::json to_json(const properties::CmReport& r) {
    nlohmann::json out = {{"suite", r.suite}, {"passed", r.passed}, {"horizon", {r.horizon_n, r.horizon_k}}};
    if (r.first_violation) {
        out["first_violation"] = {{"k", r.first_violation->k}, {"n", r.first_violation->n}, {"value", r.first_violation->value}};
    } else {
        out["first_violation"] = nullptr;
    }
    return out;
}

}  // namespace gregory
