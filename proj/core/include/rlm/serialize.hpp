#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>

#include "rlm/bounds.hpp"
#include "rlm/estimate.hpp"
#include "rlm/sparsity.hpp"

namespace rlm {

/// {mean, std_error, n_samples, estimator, params, seed}, plus whichever
/// sampler diagnostics are present.
nlohmann::json estimate_json(const Estimate& e, const nlohmann::json& params, std::uint64_t seed);

nlohmann::json to_json(const SparsityVerdict& v);
nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const BoundInputs& in);

}  // namespace rlm
