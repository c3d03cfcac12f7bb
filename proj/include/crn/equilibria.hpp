#pragma once

#include "crn/faces.hpp"
#include "crn/network.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace crn {

/// Per complex: (inflow) - (outflow), both sums over source monomials
/// kappa_k x^{y_k}. Zero everywhere exactly at complex-balanced x.
/// Requires x > 0.
Eigen::VectorXd complex_balance_residual(const ReactionNetwork& net, const Eigen::VectorXd& x);

struct PairResidual {
  int first = 0;   ///< complex index, first < second
  int second = 0;
  double residual = 0;  ///< (rate first->second) - (rate second->first)
};

/// One entry per reversible pair. Throws AnalysisError when the network is not reversible.
std::vector<PairResidual> detailed_balance_residual(const ReactionNetwork& net, const Eigen::VectorXd& x);

enum class KernelMethod { Auto, SpanningTrees, Nullspace };

/// Positive kernel of the rate-weighted Laplacian of one linkage class: entry j
/// is the sum over spanning trees directed towards complex j of the product of
/// their edge rates. Order follows `linkage_class`.
Eigen::VectorXd tree_constants(const ReactionNetwork& net, const std::vector<int>& linkage_class,
                               KernelMethod method = KernelMethod::Auto);

inline constexpr double kLogBalanceTolerance = 1e-9;

struct ComplexBalanceSolve {
  std::optional<Eigen::VectorXd> equilibrium;  ///< set iff complex-balancing
  double log_residual = 0;                     ///< max-norm residual of the log-linear system
};

/// Requires a weakly reversible network (throws AnalysisError otherwise).
ComplexBalanceSolve find_complex_balanced_equilibrium(const ReactionNetwork& net);

enum class ComplexBalancing { Yes, No, GuaranteedByDeficiencyZero };
enum class DetailedBalancing { Yes, No, NotReversible };

std::string to_string(ComplexBalancing v);
std::string to_string(DetailedBalancing v);

struct BalancingStatus {
  ComplexBalancing complex_balancing = ComplexBalancing::No;
  std::optional<Eigen::VectorXd> complex_witness;
  double complex_log_residual = 0;
  double complex_residual_at_witness = 0;  ///< max |complex_balance_residual|, sanity check
  DetailedBalancing detailed_balancing = DetailedBalancing::NotReversible;
  std::optional<Eigen::VectorXd> detailed_witness;
  double detailed_log_residual = 0;
  std::string reason;  ///< why complex-balancing was ruled out, if it was
};

BalancingStatus balancing_status(const ReactionNetwork& net);

struct BirchOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;  ///< relative to the norm of the conserved totals
  std::optional<Eigen::VectorXd> initial_multipliers;
};

struct BirchPoint {
  Eigen::VectorXd x;
  int newton_iterations = 0;
  double conservation_residual = 0;   ///< max |C x - C x0|
  double orthogonality_residual = 0;  ///< max_k |<ln x - ln x*, y'_k - y_k>|
  double complex_balance_residual = 0;
};

/// The unique x in int(P) with ln x - ln x* orthogonal to S, by damped Newton on
/// the conservation multipliers. Throws AnalysisError on non-convergence.
BirchPoint birch_point(const ReactionNetwork& net, const Eigen::VectorXd& x_star, const StoichClass& cls,
                       const BirchOptions& options = {});

struct BoundaryEquilibrium {
  SpeciesSet w;
  Eigen::VectorXd z;
  double rhs_residual = 0;  ///< max |f(z)|
  double rhs_scale = 1;     ///< max reaction rate at z, floored at 1
  BirchPoint reduced;       ///< Birch point of the W-reduced system on W^c
};

/// For every canonical siphon W with a nonempty face: z = 0 on W and the
/// W-reduced Birch point (in the class identified with F_W) off W.
/// Requires a weakly reversible network and a complex-balanced x*.
std::vector<BoundaryEquilibrium> boundary_equilibria(const ReactionNetwork& net, const StoichClass& cls,
                                                     const std::vector<SiphonReport>& siphons,
                                                     const Eigen::VectorXd& x_star);

}  // namespace crn
