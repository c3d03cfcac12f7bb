#pragma once
// One pass over every structural analysis for a network and one class.

#include "crn/certificates.hpp"
#include "crn/equilibria.hpp"
#include "crn/faces.hpp"
#include "crn/graph.hpp"
#include "crn/network.hpp"
#include "crn/simulator.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace crn {

enum class InitialSource { File, Override, Default };
std::string to_string(InitialSource s);

struct AnalysisOptions {
  int siphon_cap = kDefaultSiphonCap;
  bool equilibria = true;
};

struct SiphonCertificates {
  SpeciesSet w;
  std::optional<RepellingCertificate> repelling;  ///< facet siphons of weakly reversible networks
  std::optional<std::string> failure;             ///< why no certificate was produced for a facet
  bool verified = false;
  NonEmptiability non_emptiable;
};

struct Analysis {
  ReactionNetwork network;
  Eigen::VectorXd x0;
  InitialSource x0_source = InitialSource::Default;
  std::vector<std::string> notices;

  ReactionDiagram diagram;
  WeakReversibility weak_reversibility;
  bool reversible = false;
  DeficiencyReport deficiency;

  StoichClass cls;
  std::vector<SiphonReport> siphons;  ///< all siphons, enumeration order
  std::vector<SiphonCertificates> certificates;
  Boundedness boundedness;

  BalancingStatus balancing;
  std::optional<BirchPoint> birch;
  std::vector<BoundaryEquilibrium> boundary;
  std::optional<std::string> equilibria_note;  ///< why no Birch point was computed

  Verdict verdict;
};

/// Throws AnalysisError when the siphon search exceeds its cap.
Analysis analyze(const ReactionNetwork& net, const Eigen::VectorXd& x0, InitialSource source,
                 const AnalysisOptions& options = {});

/// Facet siphons of the analysed class, the channels a simulation tracks.
std::vector<SpeciesSet> facet_siphons(const Analysis& a);

struct SimulationSummary {
  double t_end = 0;
  double rtol = 0;
  double atol = 0;
  Trajectory trajectory;
  std::optional<OmegaEstimate> omega;
  std::optional<std::string> omega_note;  ///< why no estimate is available
  double band = 1e-2;
  std::vector<std::pair<SpeciesSet, std::optional<double>>> monitors;
};

SimulationSummary run_simulation(const ReactionNetwork& net, const Eigen::VectorXd& x0, double t_end,
                                 const SimulationOptions& options, const std::vector<SpeciesSet>& tracked,
                                 double band = 1e-2);

}  // namespace crn
