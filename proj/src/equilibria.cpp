#include "crn/equilibria.hpp"

#include "crn/error.hpp"
#include "crn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace crn {

namespace {

void require_positive(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  if (x.size() != net.num_species()) throw std::invalid_argument("state dimension does not match species count");
  if (!(x.array() > 0).all()) throw std::invalid_argument("balancing residuals require a strictly positive state");
}

// 0 for empty vectors (Eigen asserts on them)
double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Min-norm least squares; returns the solution and the max-norm residual.
std::pair<Eigen::VectorXd, double> log_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() == 0) return {Eigen::VectorXd::Zero(a.cols()), 0.0};
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  Eigen::VectorXd sol = cod.solve(b);
  const double res = (a * sol - b).lpNorm<Eigen::Infinity>();
  return {sol, res};
}

}  // namespace

Eigen::VectorXd complex_balance_residual(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  require_positive(net, x);
  const Eigen::VectorXd rates = rate_vector(net, x);
  Eigen::VectorXd res = Eigen::VectorXd::Zero(net.num_complexes());
  for (int k = 0; k < net.num_reactions(); ++k) {
    const auto& r = net.reactions()[static_cast<std::size_t>(k)];
    res(r.product) += rates(k);
    res(r.source) -= rates(k);
  }
  return res;
}

std::vector<PairResidual> detailed_balance_residual(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  require_positive(net, x);
  if (!is_reversible(net)) throw AnalysisError("detailed balancing requires a reversible network");
  const Eigen::VectorXd rates = rate_vector(net, x);
  std::map<std::pair<int, int>, double> flux;
  for (int k = 0; k < net.num_reactions(); ++k) {
    const auto& r = net.reactions()[static_cast<std::size_t>(k)];
    const auto key = std::minmax(r.source, r.product);
    flux[key] += r.source < r.product ? rates(k) : -rates(k);
  }
  std::vector<PairResidual> out;
  for (const auto& [key, v] : flux) out.push_back({key.first, key.second, v});
  return out;
}

namespace {

// Aggregated edge weights inside one linkage class, local indices.
std::vector<std::map<int, double>> class_edges(const ReactionNetwork& net, const std::vector<int>& cls) {
  std::map<int, int> local;
  for (std::size_t i = 0; i < cls.size(); ++i) local[cls[i]] = static_cast<int>(i);
  std::vector<std::map<int, double>> out(cls.size());
  for (const auto& r : net.reactions()) {
    const auto s = local.find(r.source);
    if (s == local.end()) continue;
    out[static_cast<std::size_t>(s->second)][local.at(r.product)] += r.rate;
  }
  return out;
}

constexpr std::size_t kTreeBudget = 1u << 20;

Eigen::VectorXd kernel_by_trees(const std::vector<std::map<int, double>>& edges) {
  const int n = static_cast<int>(edges.size());
  Eigen::VectorXd k = Eigen::VectorXd::Zero(n);
  std::vector<std::vector<std::pair<int, double>>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : edges[static_cast<std::size_t>(i)]) out[static_cast<std::size_t>(i)].emplace_back(j, w);

  for (int root = 0; root < n; ++root) {
    // every non-root node picks one outgoing edge; keep choices whose pointers all lead to root
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
      if (i != root) others.push_back(i);
    std::vector<std::size_t> choice(others.size(), 0);
    bool dead = std::any_of(others.begin(), others.end(), [&](int i) { return out[static_cast<std::size_t>(i)].empty(); });
    std::vector<int> next(static_cast<std::size_t>(n), -1);
    std::vector<int> state(static_cast<std::size_t>(n));
    while (!dead) {
      double weight = 1;
      for (std::size_t a = 0; a < others.size(); ++a) {
        const auto& [to, w] = out[static_cast<std::size_t>(others[a])][choice[a]];
        next[static_cast<std::size_t>(others[a])] = to;
        weight *= w;
      }
      // 0 unvisited, 1 on current path, 2 reaches root
      std::fill(state.begin(), state.end(), 0);
      state[static_cast<std::size_t>(root)] = 2;
      bool tree = true;
      for (int start : others) {
        std::vector<int> path;
        int v = start;
        while (state[static_cast<std::size_t>(v)] == 0) {
          state[static_cast<std::size_t>(v)] = 1;
          path.push_back(v);
          v = next[static_cast<std::size_t>(v)];
        }
        if (state[static_cast<std::size_t>(v)] == 1) {
          tree = false;
          break;
        }
        for (int p : path) state[static_cast<std::size_t>(p)] = 2;
      }
      if (tree) k(root) += weight;

      std::size_t a = 0;
      for (; a < others.size(); ++a) {
        if (++choice[a] < out[static_cast<std::size_t>(others[a])].size()) break;
        choice[a] = 0;
      }
      if (a == others.size()) break;
    }
  }
  return k;
}

Eigen::VectorXd kernel_by_nullspace(const std::vector<std::map<int, double>>& edges) {
  const auto n = static_cast<Eigen::Index>(edges.size());
  // d c_j / dt = sum_i w_ij c_i - (sum_l w_jl) c_j
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (const auto& [j, w] : edges[static_cast<std::size_t>(i)]) {
      lap(j, i) += w;
      lap(i, i) -= w;
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
  const Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() != 1) throw AnalysisError("linkage class Laplacian kernel is not one-dimensional");
  Eigen::VectorXd k = ker.col(0);
  if (k.sum() < 0) k = -k;
  if (!(k.array() > 0).all()) throw AnalysisError("linkage class Laplacian kernel is not strictly positive");
  return k / k.maxCoeff();
}

}  // namespace

Eigen::VectorXd tree_constants(const ReactionNetwork& net, const std::vector<int>& linkage_class, KernelMethod method) {
  if (linkage_class.empty()) return {};
  const auto edges = class_edges(net, linkage_class);
  if (linkage_class.size() == 1) return Eigen::VectorXd::Ones(1);
  if (method == KernelMethod::Auto) {
    double combos = 1;
    for (const auto& e : edges) combos *= static_cast<double>(std::max<std::size_t>(e.size(), 1));
    method = linkage_class.size() <= 12 && combos * static_cast<double>(linkage_class.size()) <= kTreeBudget
                 ? KernelMethod::SpanningTrees
                 : KernelMethod::Nullspace;
  }
  if (method == KernelMethod::Nullspace) return kernel_by_nullspace(edges);
  const Eigen::VectorXd k = kernel_by_trees(edges);
  if (!(k.array() > 0).all()) throw AnalysisError("linkage class is not strongly connected: some tree constant vanishes");
  return k;
}

ComplexBalanceSolve find_complex_balanced_equilibrium(const ReactionNetwork& net) {
  if (!is_weakly_reversible(net).weakly_reversible)
    throw AnalysisError("complex-balanced equilibria exist only for weakly reversible networks");
  const auto classes = linkage_classes(net);
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (const auto& cls : classes) {
    const Eigen::VectorXd k = tree_constants(net, cls);
    std::size_t ref = 0;
    for (std::size_t i = 1; i < cls.size(); ++i)
      if (complex_less(net.complexes()[static_cast<std::size_t>(cls[i])], net.complexes()[static_cast<std::size_t>(cls[ref])])) ref = i;
    const Eigen::VectorXi& y_ref = net.complexes()[static_cast<std::size_t>(cls[ref])];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i == ref) continue;
      rows.push_back((net.complexes()[static_cast<std::size_t>(cls[i])] - y_ref).cast<double>());
      rhs.push_back(std::log(k(static_cast<Eigen::Index>(i))) - std::log(k(static_cast<Eigen::Index>(ref))));
    }
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), net.num_species());
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  const auto [sol, res] = log_least_squares(a, b);
  ComplexBalanceSolve out;
  out.log_residual = res;
  if (res <= kLogBalanceTolerance) out.equilibrium = sol.array().exp().matrix();
  return out;
}

std::string to_string(ComplexBalancing v) {
  switch (v) {
    case ComplexBalancing::Yes: return "yes";
    case ComplexBalancing::No: return "no";
    case ComplexBalancing::GuaranteedByDeficiencyZero: return "guaranteed_by_deficiency_zero";
  }
  return "?";
}

std::string to_string(DetailedBalancing v) {
  switch (v) {
    case DetailedBalancing::Yes: return "yes";
    case DetailedBalancing::No: return "no";
    case DetailedBalancing::NotReversible: return "not_reversible";
  }
  return "?";
}

BalancingStatus balancing_status(const ReactionNetwork& net) {
  BalancingStatus st;
  if (is_reversible(net)) {
    std::map<std::pair<int, int>, std::pair<double, double>> pairs;
    for (const auto& r : net.reactions()) {
      auto& p = pairs[std::minmax(r.source, r.product)];
      (r.source < r.product ? p.first : p.second) += r.rate;
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(pairs.size()), net.num_species());
    Eigen::VectorXd b(static_cast<Eigen::Index>(pairs.size()));
    Eigen::Index row = 0;
    for (const auto& [key, k] : pairs) {
      // k_f x^{y} = k_b x^{y'}  <=>  <y' - y, ln x> = ln(k_f / k_b)
      a.row(row) = (net.complexes()[static_cast<std::size_t>(key.second)] - net.complexes()[static_cast<std::size_t>(key.first)])
                       .cast<double>()
                       .transpose();
      b(row) = std::log(k.first) - std::log(k.second);
      ++row;
    }
    const auto [sol, res] = log_least_squares(a, b);
    st.detailed_log_residual = res;
    if (res <= kLogBalanceTolerance) {
      st.detailed_balancing = DetailedBalancing::Yes;
      st.detailed_witness = sol.array().exp().matrix();
    } else {
      st.detailed_balancing = DetailedBalancing::No;
    }
  }

  if (!is_weakly_reversible(net).weakly_reversible) {
    st.reason = "network is not weakly reversible";
    return st;
  }
  const auto solve = find_complex_balanced_equilibrium(net);
  st.complex_log_residual = solve.log_residual;
  const bool zero_deficiency = deficiency(net).deficiency == 0;
  if (solve.equilibrium) {
    st.complex_witness = solve.equilibrium;
    const Eigen::VectorXd rates = rate_vector(net, *solve.equilibrium);
    const double scale = std::max(1.0, max_abs(rates));
    st.complex_residual_at_witness = max_abs(complex_balance_residual(net, *solve.equilibrium)) / scale;
    st.complex_balancing = zero_deficiency ? ComplexBalancing::GuaranteedByDeficiencyZero : ComplexBalancing::Yes;
  } else {
    if (zero_deficiency) throw std::logic_error("zero-deficiency weakly reversible network failed the log-space balance test");
    st.reason = "rate constants admit no complex-balanced equilibrium (log residual " + std::to_string(solve.log_residual) + ")";
  }
  return st;
}

BirchPoint birch_point(const ReactionNetwork& net, const Eigen::VectorXd& x_star, const StoichClass& cls,
                       const BirchOptions& options) {
  const auto n = static_cast<Eigen::Index>(net.num_species());
  if (x_star.size() != n || cls.x0.size() != n) throw std::invalid_argument("birch_point: dimension mismatch");
  if (!(x_star.array() > 0).all()) throw std::invalid_argument("birch_point: x* must be strictly positive");

  const Eigen::MatrixXd c = to_double(cls.conservation);
  const Eigen::VectorXd x0 = to_double(cls.x0);
  const Eigen::VectorXd b = c * x0;
  const Eigen::ArrayXd log_star = x_star.array().log();
  double scale = b.norm();
  if (scale == 0) scale = (c.cwiseAbs() * x0).norm();
  if (scale == 0) scale = 1;

  auto state = [&](const Eigen::VectorXd& lambda) -> Eigen::VectorXd {
    return (log_star + (c.transpose() * lambda).array()).exp().matrix();
  };
  auto potential = [&](const Eigen::VectorXd& lambda, const Eigen::VectorXd& x) { return x.sum() - b.dot(lambda); };

  BirchPoint out;
  Eigen::VectorXd lambda = options.initial_multipliers.value_or(Eigen::VectorXd::Zero(c.rows()));
  if (lambda.size() != c.rows()) throw std::invalid_argument("birch_point: initial multipliers have the wrong size");
  Eigen::VectorXd x = state(lambda);
  Eigen::VectorXd g = c * x - b;
  int it = 0;
  // C x cannot be resolved below the rounding floor of its own terms
  auto target = [&](const Eigen::VectorXd& xs) {
    return std::max(options.tolerance * scale, 64 * std::numeric_limits<double>::epsilon() * (c.cwiseAbs() * xs).norm());
  };
  while (c.rows() > 0 && !(g.norm() <= target(x))) {
    if (it >= options.max_iterations || !x.allFinite())
      throw AnalysisError("Birch point Newton iteration did not converge after " + std::to_string(it) +
                          " iterations (residual " + std::to_string(g.norm()) + "); check the complex-balanced input");
    const Eigen::MatrixXd jac = c * x.asDiagonal() * c.transpose();
    const Eigen::VectorXd step = jac.ldlt().solve(-g);
    const double phi = potential(lambda, x);
    const double slope = g.dot(step);
    double t = 1;
    Eigen::VectorXd trial_lambda, trial_x;
    for (int halvings = 0;; ++halvings) {
      trial_lambda = lambda + t * step;
      trial_x = state(trial_lambda);
      const bool usable = trial_x.allFinite() && trial_x.minCoeff() >= 1e-300;
      if (usable && potential(trial_lambda, trial_x) <= phi + 1e-4 * t * slope) break;
      // near the root phi stalls in rounding; the residual still says whether the step helps
      if (usable && (c * trial_x - b).norm() <= 0.5 * g.norm()) break;
      if (usable && halvings > 60) break;
      if (halvings > 1100) throw AnalysisError("Birch point line search failed");
      t *= 0.5;
    }
    lambda = trial_lambda;
    x = trial_x;
    g = c * x - b;
    ++it;
  }
  out.x = x;
  out.newton_iterations = it;
  out.conservation_residual = c.rows() ? g.lpNorm<Eigen::Infinity>() : 0.0;
  const Eigen::VectorXd dlog = (x.array().log() - log_star).matrix();
  for (int k = 0; k < net.num_reactions(); ++k)
    out.orthogonality_residual = std::max(out.orthogonality_residual, std::abs(dlog.dot(net.reaction_vector(k).cast<double>())));
  out.complex_balance_residual = max_abs(complex_balance_residual(net, x));
  return out;
}

std::vector<BoundaryEquilibrium> boundary_equilibria(const ReactionNetwork& net, const StoichClass& cls,
                                                     const std::vector<SiphonReport>& siphons,
                                                     const Eigen::VectorXd& x_star) {
  std::vector<BoundaryEquilibrium> out;
  for (const auto& rep : siphons) {
    if (!rep.face || rep.face->canonical != rep.w) continue;
    if (cls.conservation.rows() && cls.conservation * rep.face->interior_point != cls.totals())
      throw std::logic_error("face point outside the stoichiometric class");
    const ReducedNetwork red = w_reduced(net, rep.w);
    const auto m = static_cast<Eigen::Index>(red.species_map.size());

    Eigen::VectorXd star(m);
    RationalVector x0(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      star(j) = x_star(red.species_map[static_cast<std::size_t>(j)]);
      x0(j) = rep.face->interior_point(red.species_map[static_cast<std::size_t>(j)]);
    }
    BoundaryEquilibrium be;
    be.w = rep.w;
    if (m > 0) {
      const StoichClass red_cls = make_stoich_class(red.network, x0);
      be.reduced = birch_point(red.network, star, red_cls);
    } else {
      be.reduced.x = Eigen::VectorXd(0);
    }
    be.z = Eigen::VectorXd::Zero(net.num_species());
    for (Eigen::Index j = 0; j < m; ++j) be.z(red.species_map[static_cast<std::size_t>(j)]) = be.reduced.x(j);
    const Eigen::VectorXd rates = rate_vector(net, be.z);
    be.rhs_scale = std::max(1.0, max_abs(rates));
    be.rhs_residual = max_abs(mass_action_rhs(net, be.z));
    out.push_back(std::move(be));
  }
  return out;
}

}  // namespace crn
