// serialization.hpp  JSON records and number formatting shared by the CLI and tests

#pragma once

#include "carl/model.hpp"
#include "carl/types.hpp"

#include <json.hpp>

#include <string>

namespace carl {

using Json = nlohmann::json;

// {"rho": .., "delta": .., "gamma1": .., "gamma2": .., "kappa": ..}
Json params_to_json(const ModelParams& params);

// Accepts the record above, either at the top level or under a "params" key.
// Missing or non-numeric fields throw InvalidSpec; out-of-range values throw InvalidParams.
ModelParams params_from_json(const Json& j);

// {"re": [[..]], "im": [[..]]}, row-major.
Json matrix_to_json(const Mat3& m);
Mat3 matrix_from_json(const Json& j);

// Shortest decimal string that parses back to the same double.
std::string format_number(double x);

} // namespace carl
