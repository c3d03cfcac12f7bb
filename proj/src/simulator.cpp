#include "crn/simulator.hpp"

#include "crn/error.hpp"
#include "crn/parser.hpp"
#include "crn/rational.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace crn {

double Trajectory::max_drift() const {
  double m = 0;
  for (const auto& d : drift)
    if (d.size()) m = std::max(m, d.cwiseAbs().maxCoeff());
  return m;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Field evaluation that tolerates the small negative excursions (>= -atol)
// permitted by the positivity rule: coordinates are clamped at zero.
Eigen::VectorXd field(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  return mass_action_rhs(net, x.cwiseMax(0.0));
}

void record(const ReactionNetwork& net, Trajectory& tr, double t, const Eigen::VectorXd& x, const Eigen::VectorXd& totals0) {
  tr.t.push_back(t);
  tr.x.push_back(x);
  tr.drift.push_back(tr.conservation * x - totals0);
  tr.min_coordinate.push_back(x.size() ? x.minCoeff() : 0.0);
  for (std::size_t s = 0; s < tr.tracked.size(); ++s) {
    const Eigen::VectorXd xc = x.cwiseMax(0.0);
    const Eigen::VectorXd f = mass_action_rhs(net, xc);
    double q = 0;
    for (int i : tr.tracked[s]) q += xc(i) * f(i);
    tr.repelling[s].push_back(q);
  }
}

}  // namespace

Trajectory simulate(const ReactionNetwork& net, const Eigen::VectorXd& x0, double t_end, const SimulationOptions& opt) {
  const auto n = static_cast<Eigen::Index>(net.num_species());
  if (x0.size() != n) throw std::invalid_argument("x0 length does not match species count");
  if (!x0.allFinite() || !(x0.array() > 0).all()) throw std::invalid_argument("simulate requires a strictly positive x0");
  if (!(opt.rtol >= 1e-12 && opt.rtol <= 1e-3)) throw std::invalid_argument("rtol must lie in [1e-12, 1e-3]");
  if (!(opt.atol > 0)) throw std::invalid_argument("atol must be positive");
  if (!(t_end >= 0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite and non-negative");
  for (const auto& w : opt.tracked_siphons)
    for (int i : w)
      if (i < 0 || i >= n) throw std::invalid_argument("tracked siphon index out of range");

  Trajectory tr;
  tr.conservation = to_double(orthogonal_complement_rows(stoichiometric_matrix<Rational>(net)));
  tr.tracked = opt.tracked_siphons;
  tr.repelling.resize(tr.tracked.size());
  const Eigen::VectorXd totals0 = tr.conservation * x0;
  record(net, tr, 0.0, x0, totals0);
  if (t_end == 0 || n == 0) return tr;

  const double max_step = opt.max_step > 0 ? opt.max_step : t_end / 200.0;
  auto scale = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (opt.atol + opt.rtol * a.cwiseAbs().cwiseMax(b.cwiseAbs()).array()).matrix();
  };

  Eigen::VectorXd x = x0;
  double t = 0;
  Eigen::VectorXd k1 = field(net, x);
  ++tr.stats.rhs_evaluations;
  double h = opt.initial_step;
  if (h <= 0) {
    const Eigen::VectorXd sc = scale(x, x);
    const double d0 = std::sqrt((x.array() / sc.array()).square().mean());
    const double d1 = std::sqrt((k1.array() / sc.array()).square().mean());
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min(h, max_step);

  Eigen::VectorXd k2, k3, k4, k5, k6, k7, y, err;
  while (t < t_end) {
    if (tr.stats.accepted + tr.stats.rejected_error + tr.stats.rejected_positivity >= opt.max_steps)
      throw SimulationError("maximum number of steps exceeded", t, to_std(x));
    if (t + h >= t_end) h = t_end - t;
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw SimulationError("step size underflow", t, to_std(x));

    k2 = field(net, x + h * a21 * k1);
    k3 = field(net, x + h * (a31 * k1 + a32 * k2));
    k4 = field(net, x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = field(net, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = field(net, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = field(net, y);
    tr.stats.rhs_evaluations += 6;
    if (!y.allFinite() || !k7.allFinite()) throw SimulationError("non-finite state", t, to_std(x));

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double norm = std::sqrt((err.array() / scale(x, y).array()).square().mean());

    if (norm > 1.0) {
      ++tr.stats.rejected_error;
      h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
      continue;
    }
    if ((y.array() < -opt.atol).any()) {
      ++tr.stats.rejected_positivity;
      h *= 0.5;
      continue;
    }

    t = (t + h >= t_end || t_end - (t + h) < 1e-14 * t_end) ? t_end : t + h;
    x = y;
    k1 = k7;
    ++tr.stats.accepted;
    record(net, tr, t, x, totals0);

    const double grow = norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h = std::min(h * grow, max_step);
  }
  return tr;
}

OmegaEstimate omega_estimate(const Trajectory& traj, double tail_fraction, double zero_threshold) {
  if (traj.size() == 0) throw std::invalid_argument("omega_estimate: empty trajectory");
  if (!(tail_fraction > 0 && tail_fraction <= 1)) throw std::invalid_argument("omega_estimate: tail_fraction must lie in (0, 1]");
  const double t0 = traj.t.front();
  const double t1 = traj.t.back();
  const double cut = t1 - tail_fraction * (t1 - t0);

  OmegaEstimate out;
  for (std::size_t s = 0; s < traj.size(); ++s)
    if (traj.t[s] >= cut) out.tail.push_back(s);
  if (out.tail.size() < 10)
    throw std::invalid_argument("omega_estimate: insufficient samples in the tail (" + std::to_string(out.tail.size()) + " < 10)");

  const auto n = traj.x.front().size();
  out.candidate = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, INFINITY), hi = Eigen::VectorXd::Constant(n, -INFINITY);
  for (auto s : out.tail) {
    out.candidate += traj.x[s];
    lo = lo.cwiseMin(traj.x[s]);
    hi = hi.cwiseMax(traj.x[s]);
  }
  out.candidate /= static_cast<double>(out.tail.size());
  out.diameter = n ? (hi - lo).maxCoeff() : 0.0;
  out.converged = out.diameter < 10 * zero_threshold;
  for (Eigen::Index i = 0; i < n; ++i)
    if (out.candidate(i) < zero_threshold) out.zero_set.push_back(static_cast<int>(i));
  return out;
}

std::optional<double> monitor_repelling(const ReactionNetwork& net, const Trajectory& traj, const SpeciesSet& w, double band) {
  std::optional<double> best;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::VectorXd x = traj.x[s].cwiseMax(0.0);
    double dist2 = 0;
    for (int i : w) dist2 += x(i) * x(i);
    if (std::sqrt(dist2) >= band) continue;
    const Eigen::VectorXd f = mass_action_rhs(net, x);
    double q = 0;
    for (int i : w) q += x(i) * f(i);
    best = best ? std::min(*best, q) : q;
  }
  return best;
}

void write_csv(std::ostream& out, const ReactionNetwork& net, const Trajectory& traj) {
  out << "t";
  for (const auto& s : net.species()) out << ",x_" << s.name;
  out << ",min_x";
  for (Eigen::Index j = 0; j < traj.conservation.rows(); ++j) out << ",drift_" << j;
  for (const auto& w : traj.tracked) {
    out << ",rep";
    for (int i : w) out << "_" << net.species_name(i);
  }
  out << '\n';
  for (std::size_t s = 0; s < traj.size(); ++s) {
    out << format_double(traj.t[s]);
    for (Eigen::Index i = 0; i < traj.x[s].size(); ++i) out << ',' << format_double(traj.x[s](i));
    out << ',' << format_double(traj.min_coordinate[s]);
    for (Eigen::Index j = 0; j < traj.drift[s].size(); ++j) out << ',' << format_double(traj.drift[s](j));
    for (const auto& ch : traj.repelling) out << ',' << format_double(ch[s]);
    out << '\n';
  }
}

}  // namespace crn
