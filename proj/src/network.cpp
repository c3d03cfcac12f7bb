#include "crn/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace crn {

bool complex_less(const Complex& a, const Complex& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<int> support(const Complex& y) {
  std::vector<int> s;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) != 0) s.push_back(static_cast<int>(i));
  return s;
}

SpeciesSet make_species_set(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

bool meets(const Complex& y, const SpeciesSet& w) {
  for (int i : w)
    if (y(i) != 0) return true;
  return false;
}

std::string format_set(const ReactionNetwork& net, const SpeciesSet& w) {
  std::string s = "{";
  const auto names = species_names(net, w);
  for (std::size_t j = 0; j < names.size(); ++j) s += (j ? "," : "") + names[j];
  return s + "}";
}

std::vector<std::string> species_names(const ReactionNetwork& net, const SpeciesSet& w) {
  std::vector<std::string> out;
  for (int i : w) out.push_back(net.species_name(i));
  std::sort(out.begin(), out.end());
  return out;
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species_names, const std::vector<ReactionSpec>& reactions) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < species_names.size(); ++i) {
    if (species_names[i].empty()) throw std::invalid_argument("empty species name");
    if (!seen.insert(species_names[i]).second)
      throw std::invalid_argument("duplicate species name '" + species_names[i] + "'");
    species_.push_back({static_cast<int>(i), std::move(species_names[i])});
  }
  const auto n = static_cast<Eigen::Index>(species_.size());

  auto intern = [&](const Complex& y) {
    if (y.size() != n) throw std::invalid_argument("complex length does not match species count");
    if ((y.array() < 0).any()) throw std::invalid_argument("negative stoichiometric coefficient");
    for (std::size_t c = 0; c < complexes_.size(); ++c)
      if (complexes_[c] == y) return static_cast<int>(c);
    complexes_.push_back(y);
    return static_cast<int>(complexes_.size() - 1);
  };

  for (const auto& spec : reactions) {
    if (!(spec.rate > 0) || !std::isfinite(spec.rate)) throw std::invalid_argument("rate constants must be finite and positive");
    const int s = intern(spec.source);
    const int p = intern(spec.product);
    if (s == p) throw std::invalid_argument("source equals product");
    reactions_.push_back({s, p, spec.rate});
  }
}

int ReactionNetwork::species_index(const std::string& name) const {
  for (const auto& s : species_)
    if (s.name == name) return s.index;
  return -1;
}

ReactionNetwork ReactionNetwork::with_rates(const std::vector<double>& rates) const {
  if (static_cast<int>(rates.size()) != num_reactions())
    throw std::invalid_argument("expected " + std::to_string(num_reactions()) + " rate constants, got " +
                                std::to_string(rates.size()));
  ReactionNetwork copy = *this;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(rates[k] > 0) || !std::isfinite(rates[k])) throw std::invalid_argument("rate constants must be finite and positive");
    copy.reactions_[k].rate = rates[k];
  }
  return copy;
}

std::vector<ReactionSpec> ReactionNetwork::reaction_specs() const {
  std::vector<ReactionSpec> out;
  for (int k = 0; k < num_reactions(); ++k) out.push_back({source(k), product(k), rate(k)});
  return out;
}

std::string ReactionNetwork::complex_label(int c) const {
  const Complex& y = complexes_.at(static_cast<std::size_t>(c));
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < num_species(); ++i) {
    if (y(i) == 0) continue;
    if (!first) os << " + ";
    if (y(i) != 1) os << y(i);
    os << species_name(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string ReactionNetwork::reaction_label(int k) const {
  const auto& r = reactions_.at(static_cast<std::size_t>(k));
  return complex_label(r.source) + " -> " + complex_label(r.product);
}

}  // namespace crn
