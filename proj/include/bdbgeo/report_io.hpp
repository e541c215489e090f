#pragma once

#include <json.hpp>

#include "bdbgeo/geometry.hpp"
#include "bdbgeo/params.hpp"
#include "bdbgeo/verifier.hpp"

namespace bdbgeo {

nlohmann::json params_json(const ModelParams& p);
nlohmann::json report_json(const ResidualReport& r);
nlohmann::json reports_json(const std::vector<ResidualReport>& rs);
nlohmann::json horizons_json(const HorizonSet& hs);

/// One `# key = value, ...` comment line echoing the effective parameter
/// set, placed at the top of every emitted CSV for reproducibility.
std::string params_comment(const ModelParams& p);

} // namespace bdbgeo
