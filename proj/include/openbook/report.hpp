#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "openbook/asymptotics.hpp"
#include "openbook/decision.hpp"
#include "openbook/milnor.hpp"
#include "openbook/newton.hpp"

namespace openbook {

using Json = nlohmann::ordered_json;

Json to_json(const MilnorSystem& system, const std::vector<std::string>& vars);
Json to_json(const NewtonPolyhedron& np);
Json to_json(const NumericArc& arc);
Json to_json(const BoundednessVerdict& v);
Json to_json(const OpenBookVerdict& verdict);
Json to_json(const SweepReport& report);

std::string sweep_csv(const SweepReport& report);

}  // namespace openbook
