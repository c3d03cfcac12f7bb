#include "crn/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace crn {

LpProblem LpProblem::with_variables(Eigen::Index n) {
  LpProblem p;
  p.objective = RationalVector::Zero(n);
  p.eq_matrix = RationalMatrix(0, n);
  p.eq_rhs = RationalVector(0);
  p.le_matrix = RationalMatrix(0, n);
  p.le_rhs = RationalVector(0);
  return p;
}

void LpProblem::add_equality(const RationalVector& row, const Rational& rhs) {
  eq_matrix.conservativeResize(eq_matrix.rows() + 1, variables());
  eq_matrix.row(eq_matrix.rows() - 1) = row.transpose();
  eq_rhs.conservativeResize(eq_rhs.size() + 1);
  eq_rhs(eq_rhs.size() - 1) = rhs;
}

void LpProblem::add_inequality(const RationalVector& row, const Rational& rhs) {
  le_matrix.conservativeResize(le_matrix.rows() + 1, variables());
  le_matrix.row(le_matrix.rows() - 1) = row.transpose();
  le_rhs.conservativeResize(le_rhs.size() + 1);
  le_rhs(le_rhs.size() - 1) = rhs;
}

namespace {

void check_shape(const LpProblem& p) {
  const auto n = p.variables();
  if (p.eq_matrix.cols() != n || p.eq_matrix.rows() != p.eq_rhs.size() || p.le_matrix.cols() != n ||
      p.le_matrix.rows() != p.le_rhs.size() || (!p.upper.empty() && static_cast<Eigen::Index>(p.upper.size()) != n))
    throw std::invalid_argument("lp_solve: inconsistent problem dimensions");
  for (auto j : p.fixed_zero)
    if (j < 0 || j >= n) throw std::invalid_argument("lp_solve: fixed-zero index out of range");
}

// Dense simplex tableau for  min cost·z  s.t.  T z = rhs, z >= 0.
class Tableau {
 public:
  Tableau(RationalMatrix a, RationalVector rhs) : a_(std::move(a)), rhs_(std::move(rhs)) {
    for (Eigen::Index i = 0; i < a_.rows(); ++i)
      if (rhs_(i) < 0) {
        a_.row(i) *= Rational(-1);
        rhs_(i) = -rhs_(i);
      }
  }

  // Returns false when infeasible. On success the basis contains no artificials.
  bool phase_one() {
    const Eigen::Index m = a_.rows();
    const Eigen::Index n = a_.cols();
    structural_ = n;
    RationalMatrix ext = RationalMatrix::Zero(m, n + m);
    ext.leftCols(n) = a_;
    ext.rightCols(m) = RationalMatrix::Identity(m, m);
    a_ = std::move(ext);
    basis_.resize(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis_[static_cast<std::size_t>(i)] = n + i;

    RationalVector cost = RationalVector::Zero(n + m);
    cost.tail(m).setOnes();
    if (!optimise(cost)) throw std::logic_error("phase one cannot be unbounded");
    Rational infeas = 0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= n) infeas += rhs_(i);
    if (infeas != 0) return false;

    // Drive remaining (zero-valued) artificials out of the basis; drop redundant rows.
    for (Eigen::Index i = 0; i < a_.rows();) {
      if (basis_[static_cast<std::size_t>(i)] < n) {
        ++i;
        continue;
      }
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j)
        if (a_(i, j) != 0) {
          enter = j;
          break;
        }
      if (enter >= 0) {
        pivot(i, enter);
        ++i;
      } else {
        remove_row(i);
      }
    }
    a_.conservativeResize(a_.rows(), n);
    return true;
  }

  // Minimise cost over the current feasible basis. Returns false if unbounded.
  bool optimise(const RationalVector& cost) {
    const Eigen::Index m = a_.rows();
    const Eigen::Index n = a_.cols();
    for (;;) {
      // reduced cost d_j = c_j - c_B · column_j  (tableau is kept in canonical form)
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n && enter < 0; ++j) {
        if (is_basic(j)) continue;
        Rational d = cost(j);
        for (Eigen::Index i = 0; i < m; ++i)
          if (a_(i, j) != 0) d -= cost(basis_[static_cast<std::size_t>(i)]) * a_(i, j);
        if (d < 0) enter = j;
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (a_(i, enter) <= 0) continue;
        const Rational ratio = rhs_(i) / a_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  RationalVector solution(Eigen::Index n) const {
    RationalVector z = RationalVector::Zero(n);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < n) z(basis_[i]) = rhs_(static_cast<Eigen::Index>(i));
    return z;
  }

 private:
  bool is_basic(Eigen::Index j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Rational inv = Rational(1) / a_(r, c);
    a_.row(r) *= inv;
    rhs_(r) *= inv;
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (i == r || a_(i, c) == 0) continue;
      const Rational f = a_(i, c);
      a_.row(i) -= f * a_.row(r);
      rhs_(i) -= f * rhs_(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  void remove_row(Eigen::Index r) {
    const Eigen::Index m = a_.rows();
    for (Eigen::Index i = r; i + 1 < m; ++i) {
      a_.row(i) = a_.row(i + 1);
      rhs_(i) = rhs_(i + 1);
    }
    a_.conservativeResize(m - 1, a_.cols());
    rhs_.conservativeResize(m - 1);
    basis_.erase(basis_.begin() + r);
  }

  RationalMatrix a_;
  RationalVector rhs_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index structural_ = 0;
};

struct StandardForm {
  RationalMatrix a;
  RationalVector rhs;
  RationalVector cost;                // minimisation cost over all columns
  std::vector<Eigen::Index> columns;  // original variable of each structural column
};

StandardForm standardise(const LpProblem& p) {
  const Eigen::Index n = p.variables();
  std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  for (auto j : p.fixed_zero) fixed[static_cast<std::size_t>(j)] = true;

  StandardForm sf;
  for (Eigen::Index j = 0; j < n; ++j)
    if (!fixed[static_cast<std::size_t>(j)]) sf.columns.push_back(j);
  const auto kept = static_cast<Eigen::Index>(sf.columns.size());

  std::vector<std::pair<Eigen::Index, Rational>> caps;
  if (!p.upper.empty())
    for (Eigen::Index k = 0; k < kept; ++k)
      if (const auto& u = p.upper[static_cast<std::size_t>(sf.columns[static_cast<std::size_t>(k)])]) caps.emplace_back(k, *u);

  const Eigen::Index m_eq = p.eq_matrix.rows();
  const Eigen::Index m_le = p.le_matrix.rows();
  const auto m_cap = static_cast<Eigen::Index>(caps.size());
  const Eigen::Index slacks = m_le + m_cap;
  const Eigen::Index rows = m_eq + slacks;

  sf.a = RationalMatrix::Zero(rows, kept + slacks);
  sf.rhs = RationalVector::Zero(rows);
  for (Eigen::Index k = 0; k < kept; ++k) {
    const auto j = sf.columns[static_cast<std::size_t>(k)];
    sf.a.block(0, k, m_eq, 1) = p.eq_matrix.col(j);
    sf.a.block(m_eq, k, m_le, 1) = p.le_matrix.col(j);
  }
  sf.rhs.head(m_eq) = p.eq_rhs;
  sf.rhs.segment(m_eq, m_le) = p.le_rhs;
  for (Eigen::Index i = 0; i < m_le; ++i) sf.a(m_eq + i, kept + i) = 1;
  for (Eigen::Index c = 0; c < m_cap; ++c) {
    sf.a(m_eq + m_le + c, caps[static_cast<std::size_t>(c)].first) = 1;
    sf.a(m_eq + m_le + c, kept + m_le + c) = 1;
    sf.rhs(m_eq + m_le + c) = caps[static_cast<std::size_t>(c)].second;
  }
  sf.cost = RationalVector::Zero(kept + slacks);
  for (Eigen::Index k = 0; k < kept; ++k) sf.cost(k) = -p.objective(sf.columns[static_cast<std::size_t>(k)]);
  return sf;
}

void verify(const LpProblem& p, const RationalVector& x) {
  auto fail = [](const char* what) { throw std::logic_error(std::string("lp_solve: returned point violates ") + what); };
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0) fail("non-negativity");
    if (!p.upper.empty() && p.upper[static_cast<std::size_t>(j)] && x(j) > *p.upper[static_cast<std::size_t>(j)])
      fail("an upper bound");
  }
  for (auto j : p.fixed_zero)
    if (x(j) != 0) fail("a fixed zero");
  if (p.eq_matrix.rows() > 0 && RationalVector(p.eq_matrix * x) != p.eq_rhs) fail("an equality");
  for (Eigen::Index i = 0; i < p.le_matrix.rows(); ++i)
    if (Rational(p.le_matrix.row(i).dot(x.transpose())) > p.le_rhs(i)) fail("an inequality");
}

}  // namespace

LpResult lp_solve(const LpProblem& problem) {
  check_shape(problem);
  const auto sf = standardise(problem);
  Tableau tab(sf.a, sf.rhs);
  if (!tab.phase_one()) return {LpStatus::Infeasible, {}, {}};
  if (!tab.optimise(sf.cost)) return {LpStatus::Unbounded, {}, {}};

  const RationalVector z = tab.solution(sf.a.cols());
  LpResult out;
  out.status = LpStatus::Optimal;
  out.point = RationalVector::Zero(problem.variables());
  for (std::size_t k = 0; k < sf.columns.size(); ++k) out.point(sf.columns[k]) = z(static_cast<Eigen::Index>(k));
  verify(problem, out.point);
  out.value = problem.objective.size() ? Rational(problem.objective.dot(out.point)) : Rational(0);
  return out;
}

bool lp_feasible(const LpProblem& problem) {
  check_shape(problem);
  const auto sf = standardise(problem);
  Tableau tab(sf.a, sf.rhs);
  return tab.phase_one();
}

}  // namespace crn
