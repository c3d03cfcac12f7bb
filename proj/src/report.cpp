#include "crn/report.hpp"

#include "crn/parser.hpp"
#include "crn/rational.hpp"

#include <cmath>
#include <sstream>

namespace crn {

namespace {

Json names(const ReactionNetwork& net, const SpeciesSet& w) { return Json(species_names(net, w)); }

Json rational_array(const RationalVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Json species_map(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  Json out = Json::object();
  for (int i = 0; i < net.num_species(); ++i) out[net.species_name(i)] = x(i);
  return out;
}

Json species_map(const ReactionNetwork& net, const RationalVector& x) {
  Json out = Json::object();
  for (int i = 0; i < net.num_species(); ++i) out[net.species_name(i)] = to_string(x(i));
  return out;
}

Json birch_json(const ReactionNetwork& net, const BirchPoint& b) {
  return Json{{"x", species_map(net, b.x)},
              {"newton_iterations", b.newton_iterations},
              {"conservation_residual", b.conservation_residual},
              {"orthogonality_residual", b.orthogonality_residual},
              {"complex_balance_residual", b.complex_balance_residual}};
}

void dump(std::ostream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << "  " << Json(it.key()).dump() << ':';
        dump(out, it.value(), depth + 1);
      }
      out << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      out << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << ',';
        first = false;
        dump(out, e, depth);
      }
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v))
        out << format_double(v);
      else
        out << "null";
      return;
    }
    default: out << j.dump(); return;
  }
}

std::string fmt(double v) { return format_double(v); }

std::string vec_text(const Eigen::VectorXd& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + fmt(x(i));
  return s + ")";
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream out;
  dump(out, j, 0);
  out << '\n';
  return out.str();
}

Json network_json(const ReactionNetwork& net) {
  Json species = Json::array();
  for (const auto& s : net.species()) species.push_back(s.name);
  Json complexes = Json::array();
  for (int c = 0; c < net.num_complexes(); ++c) complexes.push_back(net.complex_label(c));
  Json reactions = Json::array();
  for (int k = 0; k < net.num_reactions(); ++k)
    reactions.push_back(Json{{"source", net.complex_label(net.reactions()[static_cast<std::size_t>(k)].source)},
                             {"product", net.complex_label(net.reactions()[static_cast<std::size_t>(k)].product)},
                             {"rate", net.rate(k)}});
  return Json{{"species", species}, {"complexes", complexes}, {"reactions", reactions}};
}

Json analysis_json(const Analysis& a, const SimulationSummary* sim) {
  const auto& net = a.network;
  Json root;
  root["network"] = network_json(net);

  Json classes = Json::array();
  for (const auto& lc : a.diagram.linkage_classes) {
    Json c = Json::array();
    for (int v : lc) c.push_back(net.complex_label(v));
    classes.push_back(c);
  }
  Json offending = nullptr;
  if (a.weak_reversibility.offending_class) {
    offending = Json::array();
    for (int v : *a.weak_reversibility.offending_class) offending.push_back(net.complex_label(v));
  }
  root["graph"] = Json{{"linkage_classes", classes},
                       {"weakly_reversible", a.weak_reversibility.weakly_reversible},
                       {"not_strongly_connected", offending},
                       {"reversible", a.reversible},
                       {"deficiency", a.deficiency.deficiency},
                       {"complex_count", a.deficiency.complexes},
                       {"linkage_class_count", a.deficiency.linkage_classes},
                       {"stoichiometric_rank", a.deficiency.rank}};

  Json basis = Json::array();
  for (Eigen::Index r = 0; r < a.cls.conservation.rows(); ++r)
    basis.push_back(rational_array(a.cls.conservation.row(r).transpose()));
  Json faces = Json::array();
  for (const auto& rep : a.siphons) {
    Json f{{"siphon", names(net, rep.w)}, {"kind", to_string(rep.kind)}};
    if (rep.face) {
      f["dim"] = rep.face->dim;
      f["canonical"] = names(net, rep.face->canonical);
      f["interior_point"] = species_map(net, rep.face->interior_point);
    } else {
      f["dim"] = nullptr;
      f["canonical"] = nullptr;
      f["interior_point"] = nullptr;
    }
    faces.push_back(std::move(f));
  }
  root["classes"] = Json::array({Json{{"x0", species_map(net, a.x0)},
                                      {"x0_source", to_string(a.x0_source)},
                                      {"dim_P", a.cls.dim},
                                      {"conservation_basis", basis},
                                      {"totals", rational_array(a.cls.totals())},
                                      {"faces", faces}}});

  Json siphons = Json::array();
  Json minimal = Json::array();
  for (const auto& rep : a.siphons) {
    siphons.push_back(names(net, rep.w));
    if (rep.is_minimal) minimal.push_back(names(net, rep.w));
  }
  root["siphons"] = siphons;
  root["minimal_siphons"] = minimal;

  Json repelling = Json::array();
  Json nonempt = Json::array();
  for (const auto& c : a.certificates) {
    if (c.repelling || c.failure) {
      Json r{{"siphon", names(net, c.w)}};
      if (c.repelling) {
        const auto& cert = *c.repelling;
        Json dir = Json::object();
        for (std::size_t j = 0; j < cert.w.size(); ++j)
          dir[net.species_name(cert.w[j])] = to_string(cert.direction(static_cast<Eigen::Index>(j)));
        Json gamma = Json::array();
        for (const auto& g : cert.gamma) gamma.push_back(to_string(g));
        Json witnesses = Json::array();
        for (const auto& lw : cert.classes) {
          Json cx = Json::array();
          for (int v : lw.complexes) cx.push_back(net.complex_label(v));
          witnesses.push_back(Json{{"linkage_class", cx},
                                   {"minimal_complex", net.complex_label(lw.minimal_complex)},
                                   {"witness_reaction", lw.witness_reaction ? Json(net.reaction_label(*lw.witness_reaction)) : Json(nullptr)}});
        }
        r["verified"] = c.verified;
        r["direction"] = dir;
        r["constant_species"] = names(net, cert.constant_species);
        r["gamma"] = gamma;
        r["linkage_classes"] = witnesses;
      } else {
        r["verified"] = false;
        r["failure"] = *c.failure;
      }
      repelling.push_back(std::move(r));
    }
    nonempt.push_back(Json{{"siphon", names(net, c.w)},
                           {"result", c.non_emptiable.non_emptiable ? "non_emptiable" : "unknown"},
                           {"epsilon", c.non_emptiable.epsilon ? Json(to_string(*c.non_emptiable.epsilon)) : Json(nullptr)},
                           {"reactions_considered", c.non_emptiable.reactions_considered}});
  }
  Json hyps = Json::array();
  for (const auto& h : a.verdict.hypotheses)
    hyps.push_back(Json{{"name", h.name}, {"satisfied", h.satisfied}, {"evidence", h.evidence}});
  root["certificates"] = Json{
      {"repelling", repelling},
      {"non_emptiable", nonempt},
      {"boundedness", Json{{"conservative", a.boundedness.conservative},
                           {"weights", a.boundedness.conservative ? rational_array(a.boundedness.weights) : Json(nullptr)}}},
      {"verdict", Json{{"kind", to_string(a.verdict.kind)},
                       {"persistent", a.verdict.persistent},
                       {"gac", a.verdict.gac},
                       {"two_dimensional_shortcut", a.verdict.two_dimensional_shortcut},
                       {"summary", a.verdict.summary},
                       {"hypotheses", hyps},
                       {"reasons", a.verdict.reasons},
                       {"assumptions", a.verdict.assumptions}}}};

  Json boundary = Json::array();
  for (const auto& be : a.boundary)
    boundary.push_back(Json{{"siphon", names(net, be.w)},
                            {"z", species_map(net, be.z)},
                            {"rhs_residual", be.rhs_residual},
                            {"rhs_scale", be.rhs_scale}});
  const auto& bal = a.balancing;
  root["equilibria"] = Json{
      {"balancing", Json{{"complex_balancing", to_string(bal.complex_balancing)},
                         {"complex_log_residual", bal.complex_log_residual},
                         {"detailed_balancing", to_string(bal.detailed_balancing)},
                         {"detailed_log_residual", bal.detailed_log_residual},
                         {"reason", bal.reason.empty() ? Json(nullptr) : Json(bal.reason)}}},
      {"birch_point", a.birch ? birch_json(net, *a.birch) : Json(nullptr)},
      {"boundary_equilibria", boundary},
      {"note", a.equilibria_note ? Json(*a.equilibria_note) : Json(nullptr)}};

  if (sim) root["simulation"] = simulation_json(net, *sim);
  root["notices"] = a.notices;
  return root;
}

Json simulation_json(const ReactionNetwork& net, const SimulationSummary& sim) {
  const auto& tr = sim.trajectory;
  Json monitors = Json::array();
  for (const auto& [w, m] : sim.monitors)
    monitors.push_back(Json{{"siphon", names(net, w)}, {"band", sim.band}, {"min_repelling", m ? Json(*m) : Json(nullptr)}});
  double min_coordinate = tr.min_coordinate.empty() ? 0.0 : tr.min_coordinate.front();
  for (double v : tr.min_coordinate) min_coordinate = std::min(min_coordinate, v);
  Json j{{"t_end", sim.t_end},
         {"rtol", sim.rtol},
         {"atol", sim.atol},
         {"samples", tr.size()},
         {"steps", Json{{"accepted", tr.stats.accepted},
                        {"rejected_error", tr.stats.rejected_error},
                        {"rejected_positivity", tr.stats.rejected_positivity},
                        {"rhs_evaluations", tr.stats.rhs_evaluations}}},
         {"final_state", species_map(net, tr.x.back())},
         {"max_conservation_drift", tr.max_drift()},
         {"min_coordinate", min_coordinate}};
  if (sim.omega) {
    j["omega_converged"] = sim.omega->converged;
    j["omega_diameter"] = sim.omega->diameter;
    j["omega_candidate"] = species_map(net, sim.omega->candidate);
    j["omega_zero_set"] = names(net, sim.omega->zero_set);
  } else {
    j["omega_converged"] = nullptr;
    j["omega_note"] = sim.omega_note.value_or("");
  }
  j["monitors"] = monitors;
  return j;
}

std::string siphons_text(const Analysis& a) {
  std::ostringstream out;
  const auto& net = a.network;
  out << "siphons (" << a.siphons.size() << "), dim P = " << a.cls.dim << "\n";
  for (const auto& rep : a.siphons) {
    out << "  " << format_set(net, rep.w) << (rep.is_minimal ? " minimal" : "") << ": " << to_string(rep.kind);
    if (rep.face) {
      out << ", face dim " << rep.face->dim;
      if (rep.face->canonical != rep.w) out << ", W* = " << format_set(net, rep.face->canonical);
    }
    out << "\n";
  }
  return out.str();
}

std::string certificates_text(const Analysis& a) {
  std::ostringstream out;
  const auto& net = a.network;
  for (const auto& c : a.certificates) {
    out << "siphon " << format_set(net, c.w) << "\n";
    if (c.repelling) {
      const auto& cert = *c.repelling;
      out << "  repelling certificate" << (c.verified ? " (verified)" : " (FAILED verification)") << ", v|_W =";
      for (Eigen::Index j = 0; j < cert.direction.size(); ++j) out << ' ' << to_string(cert.direction(j));
      out << "\n";
      for (const auto& lw : cert.classes) {
        out << "    class of " << net.complex_label(lw.minimal_complex) << ": ";
        if (lw.witness_reaction)
          out << "witness " << net.reaction_label(*lw.witness_reaction) << "\n";
        else
          out << "W-neutral\n";
      }
    } else if (c.failure) {
      out << "  no repelling certificate: " << *c.failure << "\n";
    }
    out << "  non-emptiability: "
        << (c.non_emptiable.non_emptiable ? "non-emptiable at eps = " + to_string(*c.non_emptiable.epsilon) : "unknown")
        << "\n";
  }
  out << "boundedness: "
      << (a.boundedness.conservative ? "conservative" : "unverified (no strictly positive conservation law)");
  if (a.boundedness.conservative) {
    out << ", m =";
    for (Eigen::Index i = 0; i < a.boundedness.weights.size(); ++i) out << ' ' << to_string(a.boundedness.weights(i));
  }
  out << "\nverdict: " << a.verdict.summary << "\n";
  return out.str();
}

std::string birch_text(const Analysis& a) {
  std::ostringstream out;
  const auto& net = a.network;
  if (!a.birch) {
    out << "no Birch point: " << a.equilibria_note.value_or("not computed") << "\n";
    return out.str();
  }
  out << "Birch point " << vec_text(a.birch->x) << "\n";
  out << "  conservation residual " << fmt(a.birch->conservation_residual) << ", complex-balance residual "
      << fmt(a.birch->complex_balance_residual) << "\n";
  for (const auto& be : a.boundary)
    out << "boundary equilibrium W = " << format_set(net, be.w) << ": z = " << vec_text(be.z) << ", |f(z)| = "
        << fmt(be.rhs_residual) << "\n";
  return out.str();
}

std::string analysis_text(const Analysis& a) {
  std::ostringstream out;
  const auto& net = a.network;
  for (const auto& n : a.notices) out << "notice: " << n << "\n";
  out << "species " << net.num_species() << ", complexes " << a.deficiency.complexes << ", reactions "
      << net.num_reactions() << "\n";
  out << "linkage classes " << a.deficiency.linkage_classes << ", rank " << a.deficiency.rank << ", deficiency "
      << a.deficiency.deficiency << "\n";
  out << "weakly reversible: " << (a.weak_reversibility.weakly_reversible ? "yes" : "no")
      << ", reversible: " << (a.reversible ? "yes" : "no") << "\n";
  out << "x0 " << vec_text(a.x0) << " (" << to_string(a.x0_source) << ")\n";
  out << siphons_text(a);
  out << "complex balancing: " << to_string(a.balancing.complex_balancing)
      << ", detailed balancing: " << to_string(a.balancing.detailed_balancing) << "\n";
  out << birch_text(a);
  out << certificates_text(a);
  return out.str();
}

std::string simulation_text(const ReactionNetwork& net, const SimulationSummary& sim) {
  std::ostringstream out;
  const auto& tr = sim.trajectory;
  out << "t_end " << fmt(sim.t_end) << ", accepted steps " << tr.stats.accepted << ", rejected "
      << tr.stats.rejected_error + tr.stats.rejected_positivity << "\n";
  out << "final state " << vec_text(tr.x.back()) << "\n";
  out << "max conservation drift " << fmt(tr.max_drift()) << "\n";
  if (sim.omega)
    out << "omega estimate " << vec_text(sim.omega->candidate) << (sim.omega->converged ? " (converged)" : " (not converged)")
        << ", zero set " << format_set(net, sim.omega->zero_set) << "\n";
  else
    out << "omega estimate unavailable: " << sim.omega_note.value_or("") << "\n";
  for (const auto& [w, m] : sim.monitors)
    out << "repelling monitor " << format_set(net, w) << ": " << (m ? fmt(*m) : std::string("no sample within band")) << "\n";
  return out.str();
}

}  // namespace crn
