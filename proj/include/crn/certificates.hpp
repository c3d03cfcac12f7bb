#pragma once

// Structural persistence evidence: repelling-facet certificates, dynamic
// non-emptiability of siphons, conservativity, and the resulting verdicts.

#include "crn/equilibria.hpp"
#include "crn/faces.hpp"
#include "crn/graph.hpp"
#include "crn/network.hpp"
#include "crn/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crn {

struct LinkageWitness {
  int linkage_class = 0;
  std::vector<int> complexes;
  int minimal_complex = -1;             ///< complex whose W-part is below every other in the class
  std::optional<int> witness_reaction;  ///< minimal_complex -> y' increasing every W species; none if all gammas vanish
};

struct RepellingCertificate {
  SpeciesSet w;
  RationalVector direction;        ///< v|_W, one entry per element of w, all >= 0, primitive integer
  SpeciesSet constant_species;     ///< elements of W with v_i = 0
  std::vector<Rational> gamma;     ///< per reaction: y'_k|_W - y_k|_W = gamma_k v|_W
  std::vector<LinkageWitness> classes;
};

struct CertificateFailure {
  std::string reason;
};

/// Builds the one-dimensional projection of S onto the W coordinates, its sign
/// normalisation, the per-reaction multipliers and per-linkage-class witnesses.
/// Requires F_W to be a facet of `cls`; returns a failure otherwise.
std::variant<RepellingCertificate, CertificateFailure> repelling_certificate(const ReactionNetwork& net,
                                                                            const StoichClass& cls,
                                                                            const SpeciesSet& w);

/// Exact re-check of every identity the certificate claims.
bool verify_certificate(const ReactionNetwork& net, const RepellingCertificate& cert);

/// sum_{i in W} x_i f_i(x)
double repelling_quantity(const ReactionNetwork& net, const Eigen::VectorXd& x, const SpeciesSet& w);

/// 2^0, 2^-2, ..., 2^-40
std::vector<Rational> default_epsilon_schedule();

struct NonEmptiability {
  bool non_emptiable = false;
  std::optional<Rational> epsilon;  ///< first scheduled epsilon with an infeasible cone problem
  int reactions_considered = 0;
};

/// Decides C(W) ∩ F_eps(W) = {0} over the reactions whose source meets W, for
/// each epsilon of the (decreasing) schedule, with exact rational LPs.
NonEmptiability non_emptiable_check(const ReactionNetwork& net, const SpeciesSet& w,
                                    const std::vector<Rational>& schedule = default_epsilon_schedule());

struct Boundedness {
  bool conservative = false;
  RationalVector weights;  ///< strictly positive m with m·(y'_k - y_k) = 0, primitive integer
};

Boundedness boundedness_evidence(const ReactionNetwork& net);

enum class VerdictKind { Persistent, GacHolds, Inconclusive };

std::string to_string(VerdictKind kind);

struct Hypothesis {
  std::string name;
  bool satisfied = false;
  std::string evidence;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  bool persistent = false;
  bool gac = false;
  bool two_dimensional_shortcut = false;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> reasons;
  std::vector<std::string> assumptions;  ///< external results the verdict relies on
  std::string summary;                   ///< one line for text reports
};

/// Everything the verdict consumes, computed by the other modules.
struct VerdictInputs {
  const ReactionNetwork* net = nullptr;
  int dim_p = 0;
  WeakReversibility weak_reversibility;
  Boundedness boundedness;
  const std::vector<SiphonReport>* siphons = nullptr;
  const BalancingStatus* balancing = nullptr;
  std::vector<std::pair<SpeciesSet, bool>> facet_certificates;  ///< facet siphon, certificate verified
};

Verdict verdict(const VerdictInputs& in);

/// Computes every input from scratch with the network's own rate constants.
Verdict verdict(const ReactionNetwork& net, const StoichClass& cls);

}  // namespace crn
