#pragma once

#include <nlohmann/json.hpp>

#include "gctoric/form.hpp"

namespace gct::algebra {

/// [{"subset": [1, 2], "re": "p/q", "im": "r/s"}, ...] in blade order.
nlohmann::ordered_json to_json(const ExactForm& f);

/// Same layout with numeric "re"/"im".
nlohmann::ordered_json to_json(const FloatForm& f);

/// Inverse of the exact serialization; subsets may be unsorted (the sign is applied).
ExactForm exact_form_from_json(int dim, const nlohmann::json& terms);

}  // namespace gct::algebra
