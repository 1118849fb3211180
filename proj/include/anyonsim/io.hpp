#pragma once

#include <json.hpp>
#include <string>

#include "anyonsim/entanglement.hpp"
#include "anyonsim/fock.hpp"
#include "anyonsim/optics.hpp"

namespace anyonsim {

// State:   {"m": 4, "phi": 0.5, "amplitudes": [{"occ": "1100", "re": 0.7, "im": 0.0}]}
// Circuit: {"m": 4, "phi": 0.5, "gates": [{"kind": "BS", "i": 1, "j": 2, "theta": 0.78}]}
// Malformed documents raise ParseError.

nlohmann::json state_to_json(const AnyonState& state);
AnyonState state_from_json(const nlohmann::json& doc);

nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

/// {"z": [...], "rank": r, "modeBasis": [[{"re":..,"im":..}, ...], ...]} (rows).
nlohmann::json slater_to_json(const SlaterDecomposition& sd);

nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::string& path);

/// "%.12g".
std::string format_real(double x);

}  // namespace anyonsim
