#pragma once

#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "patricia_lab/alpha.hpp"
#include "patricia_lab/distribution.hpp"

namespace patricia_lab {

// Distribution records:
//   {"law":"bernoulli","p":0.5}
//   {"law":"mu_n","N":1000}
//   {"law":"mixture","alpha":{...},"a_cap":1048576}   (a_cap optional)
//   {"law":"nu","alpha":{...},"a_cap":1048576}        (a_cap optional)
// Alpha records:
//   {"family":"power","eps":0.5}
//   {"family":"log_power","c":2}
//   {"family":"exp2_power","eps":0.5}
//   {"family":"table","values":[8,16,32],"continuation":{...}}
// Unknown keys are rejected. Errors throw ErrorCode::parse.

AlphaSpec alpha_from_json(const nlohmann::json& j);
DistributionSpec distribution_from_json(const nlohmann::json& j);
DistributionSpec distribution_from_json_text(std::string_view text);

nlohmann::json to_json(const AlphaSpec& alpha);
nlohmann::json to_json(const DistributionSpec& spec);

}  // namespace patricia_lab
