#pragma once

#include "crn/network.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace crn {

/// Directed graph on deduplicated complexes, one edge per reaction.
struct ReactionDiagram {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> linkage_classes;  ///< sorted; ordered by smallest complex index
  std::vector<int> class_of;                      ///< linkage class of each complex
};

ReactionDiagram reaction_diagram(const ReactionNetwork& net);

/// Weakly connected components of the reaction diagram.
std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net);

/// Tarjan's algorithm. Components are sorted and ordered by smallest node.
std::vector<std::vector<int>> strongly_connected_components(int nodes, const std::vector<std::pair<int, int>>& edges);

struct WeakReversibility {
  bool weakly_reversible = true;
  std::optional<std::vector<int>> offending_class;  ///< complexes of the first class that is not strongly connected
};

WeakReversibility is_weakly_reversible(const ReactionNetwork& net);

/// Every reaction y -> y' has its reverse y' -> y.
bool is_reversible(const ReactionNetwork& net);

struct DeficiencyReport {
  int complexes = 0;
  int linkage_classes = 0;
  int rank = 0;  ///< dim S, exact
  int deficiency = 0;
};

DeficiencyReport deficiency(const ReactionNetwork& net);

/// Subnetwork of the complexes and reactions not involving any species of W,
/// on the species outside W, with the original rate constants.
struct ReducedNetwork {
  ReactionNetwork network;
  std::vector<int> species_map;   ///< reduced species index -> original index
  std::vector<int> reaction_map;  ///< reduced reaction index -> original index
};

/// Requires a weakly reversible network and a siphon W; throws AnalysisError otherwise.
ReducedNetwork w_reduced(const ReactionNetwork& net, const SpeciesSet& w);

}  // namespace crn
