#include "crn/analysis.hpp"

#include "crn/error.hpp"

#include <stdexcept>

namespace crn {

std::string to_string(InitialSource s) {
  switch (s) {
    case InitialSource::File: return "file";
    case InitialSource::Override: return "override";
    case InitialSource::Default: return "default";
  }
  return "?";
}

Analysis analyze(const ReactionNetwork& net, const Eigen::VectorXd& x0, InitialSource source,
                 const AnalysisOptions& options) {
  Analysis a;
  a.network = net;
  a.x0 = x0;
  a.x0_source = source;
  if (source == InitialSource::Default)
    a.notices.push_back("no x0 given; using x0 = (1, ..., 1). Face kinds can depend on the class chosen.");

  a.diagram = reaction_diagram(net);
  a.weak_reversibility = is_weakly_reversible(net);
  a.reversible = is_reversible(net);
  a.deficiency = deficiency(net);
  a.cls = make_stoich_class(net, x0);
  a.siphons = classify_all(net, a.cls, options.siphon_cap);
  a.boundedness = boundedness_evidence(net);

  for (const auto& rep : a.siphons) {
    SiphonCertificates c;
    c.w = rep.w;
    if (rep.kind == FaceKind::Facet) {
      if (!a.weak_reversibility.weakly_reversible) {
        c.failure = "network not weakly reversible";
      } else {
        auto cert = repelling_certificate(net, a.cls, rep.w);
        if (auto* ok = std::get_if<RepellingCertificate>(&cert)) {
          c.verified = verify_certificate(net, *ok);
          c.repelling = std::move(*ok);
        } else {
          c.failure = std::get<CertificateFailure>(cert).reason;
        }
      }
    }
    c.non_emptiable = non_emptiable_check(net, rep.w);
    a.certificates.push_back(std::move(c));
  }

  a.balancing = balancing_status(net);
  if (options.equilibria) {
    if (!a.weak_reversibility.weakly_reversible) {
      a.equilibria_note = "not weakly reversible";
    } else if (!a.balancing.complex_witness) {
      a.equilibria_note = "not complex-balancing: " + a.balancing.reason;
    } else {
      a.birch = birch_point(net, *a.balancing.complex_witness, a.cls);
      a.boundary = boundary_equilibria(net, a.cls, a.siphons, *a.balancing.complex_witness);
    }
  }

  VerdictInputs in;
  in.net = &net;
  in.dim_p = a.cls.dim;
  in.weak_reversibility = a.weak_reversibility;
  in.boundedness = a.boundedness;
  in.siphons = &a.siphons;
  in.balancing = &a.balancing;
  for (const auto& c : a.certificates)
    if (c.repelling || c.failure) in.facet_certificates.emplace_back(c.w, c.verified);
  a.verdict = verdict(in);
  return a;
}

std::vector<SpeciesSet> facet_siphons(const Analysis& a) {
  std::vector<SpeciesSet> out;
  for (const auto& rep : a.siphons)
    if (rep.kind == FaceKind::Facet) out.push_back(rep.w);
  return out;
}

SimulationSummary run_simulation(const ReactionNetwork& net, const Eigen::VectorXd& x0, double t_end,
                                 const SimulationOptions& options, const std::vector<SpeciesSet>& tracked, double band) {
  SimulationSummary s;
  s.t_end = t_end;
  s.rtol = options.rtol;
  s.atol = options.atol;
  s.band = band;
  SimulationOptions opt = options;
  opt.tracked_siphons = tracked;
  s.trajectory = simulate(net, x0, t_end, opt);
  try {
    s.omega = omega_estimate(s.trajectory);
  } catch (const std::invalid_argument& e) {
    s.omega_note = e.what();
  }
  for (const auto& w : tracked) s.monitors.emplace_back(w, monitor_repelling(net, s.trajectory, w, band));
  return s;
}

}  // namespace crn
