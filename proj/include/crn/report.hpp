#pragma once
// JSON and plain-text renderings of an Analysis and of a simulation summary.
//
// JSON top level: network, graph, classes, siphons, certificates, equilibria,
// simulation (only when a run is attached), notices.

#include "crn/analysis.hpp"

#include <json.hpp>

#include <string>

namespace crn {

using Json = nlohmann::ordered_json;

Json network_json(const ReactionNetwork& net);
Json analysis_json(const Analysis& a, const SimulationSummary* sim = nullptr);
Json simulation_json(const ReactionNetwork& net, const SimulationSummary& sim);

/// Objects one member per line, arrays inline, no padding after separators;
/// doubles with 17 significant digits, non-finite doubles as null.
std::string dump_json(const Json& j);

std::string analysis_text(const Analysis& a);
std::string siphons_text(const Analysis& a);
std::string certificates_text(const Analysis& a);
std::string birch_text(const Analysis& a);
std::string simulation_text(const ReactionNetwork& net, const SimulationSummary& sim);

}  // namespace crn
