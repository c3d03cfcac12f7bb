#include "crn/graph.hpp"

#include "crn/error.hpp"
#include "crn/faces.hpp"

#include <algorithm>
#include <numeric>

namespace crn {

namespace {

int find_root(std::vector<int>& parent, int a) {
  while (parent[static_cast<std::size_t>(a)] != a) {
    parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    a = parent[static_cast<std::size_t>(a)];
  }
  return a;
}

std::vector<std::vector<int>> group_and_sort(std::vector<std::vector<int>> groups) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

}  // namespace

std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net) {
  const int n = net.num_complexes();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& r : net.reactions()) {
    const int a = find_root(parent, r.source);
    const int b = find_root(parent, r.product);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < n; ++c) {
    const int root = find_root(parent, c);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(c);
  }
  return group_and_sort(std::move(groups));
}

ReactionDiagram reaction_diagram(const ReactionNetwork& net) {
  ReactionDiagram d;
  d.nodes = net.num_complexes();
  for (const auto& r : net.reactions()) d.edges.emplace_back(r.source, r.product);
  d.linkage_classes = linkage_classes(net);
  d.class_of.assign(static_cast<std::size_t>(d.nodes), -1);
  for (std::size_t l = 0; l < d.linkage_classes.size(); ++l)
    for (int c : d.linkage_classes[l]) d.class_of[static_cast<std::size_t>(c)] = static_cast<int>(l);
  return d;
}

std::vector<std::vector<int>> strongly_connected_components(int nodes, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  for (const auto& [a, b] : edges) adj[static_cast<std::size_t>(a)].push_back(b);

  std::vector<int> index(static_cast<std::size_t>(nodes), -1), low(static_cast<std::size_t>(nodes), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(nodes), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  // explicit DFS stack of (node, next edge position)
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < nodes; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto vs = static_cast<std::size_t>(v);
      if (next == 0 && index[vs] < 0) {
        index[vs] = low[vs] = counter++;
        stack.push_back(v);
        on_stack[vs] = true;
      }
      if (next < adj[vs].size()) {
        const int w = adj[vs][next++];
        const auto ws = static_cast<std::size_t>(w);
        if (index[ws] < 0) {
          call.emplace_back(w, 0);
        } else if (on_stack[ws]) {
          low[vs] = std::min(low[vs], index[ws]);
        }
        continue;
      }
      if (low[vs] == index[vs]) {
        std::vector<int> comp;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != v);
        comps.push_back(std::move(comp));
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return group_and_sort(std::move(comps));
}

WeakReversibility is_weakly_reversible(const ReactionNetwork& net) {
  const auto d = reaction_diagram(net);
  const auto sccs = strongly_connected_components(d.nodes, d.edges);
  std::vector<int> scc_of(static_cast<std::size_t>(d.nodes));
  for (std::size_t s = 0; s < sccs.size(); ++s)
    for (int c : sccs[s]) scc_of[static_cast<std::size_t>(c)] = static_cast<int>(s);
  for (const auto& cls : d.linkage_classes)
    for (int c : cls)
      if (scc_of[static_cast<std::size_t>(c)] != scc_of[static_cast<std::size_t>(cls.front())]) return {false, cls};
  return {true, std::nullopt};
}

bool is_reversible(const ReactionNetwork& net) {
  for (const auto& r : net.reactions()) {
    const bool has_reverse = std::any_of(net.reactions().begin(), net.reactions().end(), [&](const Reaction& q) {
      return q.source == r.product && q.product == r.source;
    });
    if (!has_reverse) return false;
  }
  return true;
}

DeficiencyReport deficiency(const ReactionNetwork& net) {
  DeficiencyReport d;
  d.complexes = net.num_complexes();
  d.linkage_classes = static_cast<int>(linkage_classes(net).size());
  d.rank = static_cast<int>(exact_rank(stoichiometric_matrix<Rational>(net)));
  d.deficiency = d.complexes - d.linkage_classes - d.rank;
  if (d.deficiency < 0) throw std::logic_error("negative deficiency: rank computation is inconsistent");
  return d;
}

ReducedNetwork w_reduced(const ReactionNetwork& net, const SpeciesSet& w) {
  if (!is_weakly_reversible(net).weakly_reversible) throw AnalysisError("W-reduction requires a weakly reversible network");
  if (w.empty() || !is_siphon(net, w)) throw AnalysisError("W-reduction requires a siphon, " + format_set(net, w) + " is not one");

  ReducedNetwork out;
  std::vector<std::string> names;
  for (int i = 0; i < net.num_species(); ++i)
    if (!std::binary_search(w.begin(), w.end(), i)) {
      out.species_map.push_back(i);
      names.push_back(net.species_name(i));
    }
  auto restrict_to = [&](const Complex& y) {
    Complex r(static_cast<Eigen::Index>(out.species_map.size()));
    for (std::size_t j = 0; j < out.species_map.size(); ++j) r(static_cast<Eigen::Index>(j)) = y(out.species_map[j]);
    return r;
  };
  std::vector<ReactionSpec> specs;
  for (int k = 0; k < net.num_reactions(); ++k) {
    if (meets(net.source(k), w) || meets(net.product(k), w)) continue;
    specs.push_back({restrict_to(net.source(k)), restrict_to(net.product(k)), net.rate(k)});
    out.reaction_map.push_back(k);
  }
  out.network = ReactionNetwork(std::move(names), specs);
  return out;
}

}  // namespace crn
