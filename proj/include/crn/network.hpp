#pragma once

#include "crn/rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct Species {
  int index = 0;
  std::string name;
};

/// Stoichiometric coefficients of a complex, one non-negative entry per species.
using Complex = Eigen::VectorXi;

/// Reaction as supplied by a caller: explicit source and product complexes.
struct ReactionSpec {
  Complex source;
  Complex product;
  double rate = 1.0;
};

/// Reaction stored by the network: indices into the deduplicated complex list.
struct Reaction {
  int source = 0;
  int product = 0;
  double rate = 1.0;
};

/// Lexicographic order on coefficient vectors.
bool complex_less(const Complex& a, const Complex& b);

/// Immutable mass-action reaction network.
///
/// Complexes are deduplicated network-wide by exact coefficient equality and
/// indexed in order of first appearance (source before product).
class ReactionNetwork {
 public:
  ReactionNetwork() = default;
  ReactionNetwork(std::vector<std::string> species_names, const std::vector<ReactionSpec>& reactions);

  int num_species() const { return static_cast<int>(species_.size()); }
  int num_reactions() const { return static_cast<int>(reactions_.size()); }
  int num_complexes() const { return static_cast<int>(complexes_.size()); }

  const std::vector<Species>& species() const { return species_; }
  const std::string& species_name(int i) const { return species_.at(static_cast<std::size_t>(i)).name; }
  /// -1 when absent.
  int species_index(const std::string& name) const;

  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Complex& source(int k) const { return complexes_[static_cast<std::size_t>(reactions_[static_cast<std::size_t>(k)].source)]; }
  const Complex& product(int k) const { return complexes_[static_cast<std::size_t>(reactions_[static_cast<std::size_t>(k)].product)]; }
  double rate(int k) const { return reactions_[static_cast<std::size_t>(k)].rate; }

  /// y'_k - y_k
  Eigen::VectorXi reaction_vector(int k) const { return product(k) - source(k); }

  /// Same network with replaced rate constants (one per reaction).
  ReactionNetwork with_rates(const std::vector<double>& rates) const;

  /// Reaction specs in stored order, suitable for rebuilding a network.
  std::vector<ReactionSpec> reaction_specs() const;

  /// "2A + B", or "0" for the empty complex.
  std::string complex_label(int c) const;
  std::string reaction_label(int k) const;

 private:
  std::vector<Species> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
};

/// Integer N x R matrix whose column k is y'_k - y_k.
template <typename Scalar = int>
MatrixX<Scalar> stoichiometric_matrix(const ReactionNetwork& net) {
  MatrixX<Scalar> m(net.num_species(), net.num_reactions());
  for (int k = 0; k < net.num_reactions(); ++k) {
    const Eigen::VectorXi v = net.reaction_vector(k);
    for (int i = 0; i < net.num_species(); ++i) m(i, k) = Scalar(v(i));
  }
  return m;
}

/// x^y by exponentiation by squaring; 0^0 = 1.
template <typename Scalar>
Scalar int_pow(Scalar base, int exponent) {
  Scalar result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

template <typename Derived>
typename Derived::Scalar monomial(const Eigen::MatrixBase<Derived>& x, const Complex& y) {
  typename Derived::Scalar m(1);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) != 0) m *= int_pow(typename Derived::Scalar(x(i)), y(i));
  return m;
}

namespace detail {
template <typename Derived>
void check_state(const ReactionNetwork& net, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != net.num_species()) throw std::invalid_argument("state dimension does not match species count");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) < 0) throw std::invalid_argument("negative concentration for species " + net.species_name(static_cast<int>(i)));
}
}  // namespace detail

/// Per-reaction mass-action rates kappa_k x^{y_k}.
template <typename Derived>
VectorX<typename Derived::Scalar> rate_vector(const ReactionNetwork& net, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  detail::check_state(net, x);
  VectorX<Scalar> r(net.num_reactions());
  for (int k = 0; k < net.num_reactions(); ++k) r(k) = Scalar(net.rate(k)) * monomial(x, net.source(k));
  return r;
}

/// f(x) = sum_k kappa_k x^{y_k} (y'_k - y_k).
template <typename Derived>
VectorX<typename Derived::Scalar> mass_action_rhs(const ReactionNetwork& net, const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const VectorX<Scalar> rates = rate_vector(net, x);
  VectorX<Scalar> f = VectorX<Scalar>::Zero(net.num_species());
  for (int k = 0; k < net.num_reactions(); ++k) {
    if (rates(k) == Scalar(0)) continue;
    const Eigen::VectorXi v = net.reaction_vector(k);
    for (int i = 0; i < net.num_species(); ++i)
      if (v(i) != 0) f(i) += rates(k) * Scalar(v(i));
  }
  return f;
}

/// Indices of species with a nonzero coefficient.
std::vector<int> support(const Complex& y);

/// Sorted, duplicate-free species indices.
using SpeciesSet = std::vector<int>;

/// Sorts and deduplicates.
SpeciesSet make_species_set(std::vector<int> indices);
bool meets(const Complex& y, const SpeciesSet& w);

/// "{A,B}"; names appear in alphabetical order, as in species_names
std::string format_set(const ReactionNetwork& net, const SpeciesSet& w);
std::vector<std::string> species_names(const ReactionNetwork& net, const SpeciesSet& w);

}  // namespace crn
