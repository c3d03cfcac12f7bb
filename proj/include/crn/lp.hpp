#pragma once

#include "crn/rational.hpp"

#include <optional>
#include <vector>

namespace crn {

/// maximize c·x  subject to  A_eq x = b_eq,  A_le x <= b_le,  0 <= x <= upper,
/// and x_j = 0 for every j in fixed_zero.
struct LpProblem {
  RationalVector objective;
  RationalMatrix eq_matrix;
  RationalVector eq_rhs;
  RationalMatrix le_matrix;
  RationalVector le_rhs;
  std::vector<std::optional<Rational>> upper;  ///< empty or one entry per variable
  std::vector<Eigen::Index> fixed_zero;

  /// Problem over `n` variables with a zero objective and no constraints.
  static LpProblem with_variables(Eigen::Index n);

  Eigen::Index variables() const { return objective.size(); }

  void add_equality(const RationalVector& row, const Rational& rhs);
  void add_inequality(const RationalVector& row, const Rational& rhs);
};

enum class LpStatus { Infeasible, Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;        ///< meaningful when Optimal
  RationalVector point;  ///< meaningful when Optimal
};

/// Two-phase primal simplex over exact rationals with Bland's rule.
/// Optimal points are re-verified against every constraint by substitution;
/// a failed verification throws std::logic_error.
LpResult lp_solve(const LpProblem& problem);

/// Phase one only: is the constraint set non-empty?
bool lp_feasible(const LpProblem& problem);

}  // namespace crn
