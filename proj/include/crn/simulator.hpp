#pragma once

#include "crn/network.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <vector>

namespace crn {

struct SimulationOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0;  ///< 0 picks one from the initial slope
  double max_step = 0;      ///< 0 means t_end / 200, which keeps >= 20 samples in a 10% tail
  long max_steps = 5'000'000;
  std::vector<SpeciesSet> tracked_siphons;  ///< repelling-quantity channels
};

struct StepStatistics {
  long accepted = 0;
  long rejected_error = 0;
  long rejected_positivity = 0;
  long rhs_evaluations = 0;
};

/// Accepted steps of an integration with their monitor channels.
struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x;
  StepStatistics stats;

  Eigen::MatrixXd conservation;        ///< rows: conservation laws used for drift
  std::vector<Eigen::VectorXd> drift;  ///< per sample: C x(t) - C x0
  std::vector<double> min_coordinate;  ///< per sample
  std::vector<SpeciesSet> tracked;
  std::vector<std::vector<double>> repelling;  ///< [tracked siphon][sample]

  std::size_t size() const { return t.size(); }
  /// max over samples and laws of |C x(t) - C x0|
  double max_drift() const;
};

/// Dormand-Prince 5(4) with adaptive steps. Steps that would push a coordinate
/// below -atol are rejected and retried at half the step.
/// Throws std::invalid_argument on bad input and SimulationError on failure.
Trajectory simulate(const ReactionNetwork& net, const Eigen::VectorXd& x0, double t_end,
                    const SimulationOptions& options = {});

struct OmegaEstimate {
  std::vector<std::size_t> tail;  ///< sample indices in the tail window
  Eigen::VectorXd candidate;      ///< mean of the tail samples
  SpeciesSet zero_set;            ///< coordinates of the candidate below the threshold
  bool converged = false;
  double diameter = 0;            ///< max-norm diameter of the tail
};

/// Tail = samples in the last `tail_fraction` of the time span; needs at least 10.
OmegaEstimate omega_estimate(const Trajectory& traj, double tail_fraction = 0.1, double zero_threshold = 1e-7);

/// Minimum of sum_{i in W} x_i f_i(x) over samples with |x|_W| < band, if any.
std::optional<double> monitor_repelling(const ReactionNetwork& net, const Trajectory& traj, const SpeciesSet& w,
                                        double band);

/// Header `t,x_<name>...,min_x,drift_<j>...,rep_<A_B>...`, one row per accepted step.
void write_csv(std::ostream& out, const ReactionNetwork& net, const Trajectory& traj);

}  // namespace crn
