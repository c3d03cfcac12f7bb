#include "crn/certificates.hpp"

#include "crn/lp.hpp"

#include <algorithm>
#include <sstream>

namespace crn {

namespace {

RationalMatrix w_rows(const ReactionNetwork& net, const SpeciesSet& w) {
  const RationalMatrix gamma = stoichiometric_matrix<Rational>(net);
  RationalMatrix out(static_cast<Eigen::Index>(w.size()), gamma.cols());
  for (std::size_t j = 0; j < w.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = gamma.row(w[j]);
  return out;
}

Eigen::VectorXi restrict_to(const Complex& y, const SpeciesSet& w) {
  Eigen::VectorXi r(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) r(static_cast<Eigen::Index>(j)) = y(w[j]);
  return r;
}

bool precedes_eq(const Eigen::VectorXi& a, const Eigen::VectorXi& b) { return (a.array() <= b.array()).all(); }

std::optional<Rational> multiplier(const RationalVector& column, const RationalVector& v) {
  Eigen::Index pivot = -1;
  for (Eigen::Index i = 0; i < v.size() && pivot < 0; ++i)
    if (v(i) != 0) pivot = i;
  if (pivot < 0) return column.isZero() ? std::optional<Rational>(0) : std::nullopt;
  const Rational g = column(pivot) / v(pivot);
  if (RationalVector(g * v) != column) return std::nullopt;
  return g;
}

}  // namespace

std::variant<RepellingCertificate, CertificateFailure> repelling_certificate(const ReactionNetwork& net,
                                                                            const StoichClass& cls,
                                                                            const SpeciesSet& w) {
  if (w.empty()) return CertificateFailure{"W must be nonempty"};
  const auto face = face_canonicalize(cls, w);
  const FaceKind kind = face_kind(face, cls.dim);
  if (kind != FaceKind::Facet) return CertificateFailure{"face of " + format_set(net, w) + " is " + to_string(kind) + ", not a facet"};

  const RationalMatrix gw = w_rows(net, w);
  if (exact_rank(gw) != 1) return CertificateFailure{"pi_S not one-dimensional"};

  RepellingCertificate cert;
  cert.w = w;
  for (Eigen::Index k = 0; k < gw.cols(); ++k)
    if (!gw.col(k).isZero()) {
      cert.direction = primitive_integer(RationalVector(gw.col(k)));
      break;
    }
  for (Eigen::Index i = 0; i < cert.direction.size(); ++i) {
    if (cert.direction(i) < 0) return CertificateFailure{"internal consistency: projection of S onto W is not one-signed"};
    if (cert.direction(i) == 0) cert.constant_species.push_back(w[static_cast<std::size_t>(i)]);
  }
  for (Eigen::Index k = 0; k < gw.cols(); ++k) {
    const auto g = multiplier(RationalVector(gw.col(k)), cert.direction);
    if (!g) return CertificateFailure{"internal consistency: reaction vector not parallel to the W direction"};
    cert.gamma.push_back(*g);
  }

  const auto classes = linkage_classes(net);
  for (std::size_t l = 0; l < classes.size(); ++l) {
    LinkageWitness lw;
    lw.linkage_class = static_cast<int>(l);
    lw.complexes = classes[l];
    auto projected = [&](int c) { return restrict_to(net.complexes()[static_cast<std::size_t>(c)], w); };

    for (int c : lw.complexes) {
      const auto pc = projected(c);
      if (std::all_of(lw.complexes.begin(), lw.complexes.end(), [&](int o) { return precedes_eq(pc, projected(o)); })) {
        lw.minimal_complex = c;
        break;
      }
    }
    if (lw.minimal_complex < 0) return CertificateFailure{"internal consistency: linkage class has no minimal complex on W"};
    const auto minimum = projected(lw.minimal_complex);

    bool moves = false;
    for (int k = 0; k < net.num_reactions(); ++k) {
      const int src = net.reactions()[static_cast<std::size_t>(k)].source;
      if (!std::binary_search(lw.complexes.begin(), lw.complexes.end(), src)) continue;
      if (cert.gamma[static_cast<std::size_t>(k)] != 0) moves = true;
      if (!lw.witness_reaction && cert.gamma[static_cast<std::size_t>(k)] > 0 && projected(src) == minimum) {
        lw.witness_reaction = k;
        lw.minimal_complex = src;
      }
    }
    if (moves && !lw.witness_reaction)
      return CertificateFailure{"no witness reaction in linkage class " + std::to_string(l) +
                                " (a reaction from a minimal complex increasing every species of W)"};
    if (!moves) lw.witness_reaction.reset();
    cert.classes.push_back(std::move(lw));
  }
  return cert;
}

bool verify_certificate(const ReactionNetwork& net, const RepellingCertificate& cert) {
  const RationalMatrix gw = w_rows(net, cert.w);
  if (cert.direction.size() != static_cast<Eigen::Index>(cert.w.size())) return false;
  if (static_cast<int>(cert.gamma.size()) != net.num_reactions()) return false;
  for (Eigen::Index i = 0; i < cert.direction.size(); ++i)
    if (cert.direction(i) < 0) return false;
  if (cert.direction.isZero()) return false;
  for (int k = 0; k < net.num_reactions(); ++k)
    if (RationalVector(gw.col(k)) != RationalVector(cert.gamma[static_cast<std::size_t>(k)] * cert.direction)) return false;
  for (const auto& lw : cert.classes) {
    const auto min_w = restrict_to(net.complexes()[static_cast<std::size_t>(lw.minimal_complex)], cert.w);
    for (int c : lw.complexes)
      if (!precedes_eq(min_w, restrict_to(net.complexes()[static_cast<std::size_t>(c)], cert.w))) return false;
    if (lw.witness_reaction) {
      const int k = *lw.witness_reaction;
      if (net.reactions()[static_cast<std::size_t>(k)].source != lw.minimal_complex) return false;
      const Eigen::VectorXi diff = restrict_to(net.reaction_vector(k), cert.w);
      for (Eigen::Index i = 0; i < diff.size(); ++i)
        if (cert.direction(i) != 0 && diff(i) <= 0) return false;
    }
  }
  return true;
}

double repelling_quantity(const ReactionNetwork& net, const Eigen::VectorXd& x, const SpeciesSet& w) {
  const Eigen::VectorXd f = mass_action_rhs(net, x);
  double q = 0;
  for (int i : w) q += x(i) * f(i);
  return q;
}

std::vector<Rational> default_epsilon_schedule() {
  std::vector<Rational> eps;
  Rational e = 1;
  for (int p = 0; p <= 40; p += 2) {
    eps.push_back(e);
    e /= 4;
  }
  return eps;
}

NonEmptiability non_emptiable_check(const ReactionNetwork& net, const SpeciesSet& w, const std::vector<Rational>& schedule) {
  std::vector<int> ks;
  for (int k = 0; k < net.num_reactions(); ++k)
    if (meets(net.source(k), w)) ks.push_back(k);
  NonEmptiability out;
  out.reactions_considered = static_cast<int>(ks.size());
  const auto n = static_cast<Eigen::Index>(ks.size());

  // ordered pairs (a, b) with y_a|_W strictly below y_b|_W
  std::vector<std::pair<Eigen::Index, Eigen::Index>> dominated;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto ya = restrict_to(net.source(ks[static_cast<std::size_t>(a)]), w);
      const auto yb = restrict_to(net.source(ks[static_cast<std::size_t>(b)]), w);
      if (precedes_eq(ya, yb) && ya != yb) dominated.emplace_back(a, b);
    }

  for (const auto& eps : schedule) {
    LpProblem p = LpProblem::with_variables(n);
    p.add_equality(RationalVector::Ones(n), 1);
    for (int i : w) {
      RationalVector row(n);
      for (Eigen::Index a = 0; a < n; ++a) row(a) = net.reaction_vector(ks[static_cast<std::size_t>(a)])(i);
      p.add_inequality(row, 0);
    }
    for (const auto& [a, b] : dominated) {
      RationalVector row = RationalVector::Zero(n);
      row(b) += 1;
      row(a) -= eps;
      p.add_inequality(row, 0);
    }
    if (!lp_feasible(p)) {
      out.non_emptiable = true;
      out.epsilon = eps;
      return out;
    }
  }
  return out;
}

Boundedness boundedness_evidence(const ReactionNetwork& net) {
  const Eigen::Index n = net.num_species();
  Boundedness out;
  if (n == 0) {
    out.conservative = true;
    out.weights = RationalVector(0);
    return out;
  }
  // variables (m_0..m_{n-1}, t): maximise t with m_i >= t, sum m = 1, m ⊥ S
  LpProblem p = LpProblem::with_variables(n + 1);
  p.objective(n) = 1;
  const RationalMatrix gamma = stoichiometric_matrix<Rational>(net);
  for (Eigen::Index k = 0; k < gamma.cols(); ++k) {
    RationalVector row = RationalVector::Zero(n + 1);
    row.head(n) = gamma.col(k);
    p.add_equality(row, 0);
  }
  RationalVector ones = RationalVector::Ones(n + 1);
  ones(n) = 0;
  p.add_equality(ones, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    RationalVector row = RationalVector::Zero(n + 1);
    row(i) = -1;
    row(n) = 1;
    p.add_inequality(row, 0);
  }
  const LpResult r = lp_solve(p);
  if (r.status == LpStatus::Optimal && r.value > 0) {
    out.conservative = true;
    out.weights = primitive_integer(RationalVector(r.point.head(n)));
  }
  return out;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Persistent: return "persistent";
    case VerdictKind::GacHolds: return "gac_holds";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::string vector_text(const RationalVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v(i));
  return s + ")";
}

std::string face_reason(const ReactionNetwork& net, const SiphonReport& r) {
  std::ostringstream os;
  os << "siphon " << format_set(net, r.w) << " face is " << r.face->dim << "-dimensional, neither facet nor vertex";
  return os.str();
}

}  // namespace

Verdict verdict(const VerdictInputs& in) {
  const ReactionNetwork& net = *in.net;
  Verdict v;

  Hypothesis wr{"weakly reversible", in.weak_reversibility.weakly_reversible, ""};
  if (wr.satisfied) {
    wr.evidence = "every linkage class is strongly connected";
  } else {
    wr.evidence = "linkage class {";
    for (std::size_t i = 0; i < in.weak_reversibility.offending_class->size(); ++i)
      wr.evidence += (i ? ", " : "") + net.complex_label((*in.weak_reversibility.offending_class)[i]);
    wr.evidence += "} is not strongly connected";
  }

  Hypothesis bounded{"bounded trajectories", in.boundedness.conservative, ""};
  bounded.evidence = bounded.satisfied ? "positive conservation law m = " + vector_text(in.boundedness.weights)
                                       : "no strictly positive conservation law";

  Hypothesis facet_or_empty{"every siphon face is a facet or empty", true, ""};
  Hypothesis facet_vertex_empty{"every siphon face is a facet, vertex or empty", true, ""};
  std::vector<std::string> face_failures;
  bool has_vertex = false;
  for (const auto& r : *in.siphons) {
    facet_or_empty.evidence += (facet_or_empty.evidence.empty() ? "" : "; ") + format_set(net, r.w) + ": " + to_string(r.kind);
    if (r.kind != FaceKind::Facet && r.kind != FaceKind::Empty) facet_or_empty.satisfied = false;
    if (r.kind == FaceKind::Vertex) has_vertex = true;
    if (r.kind == FaceKind::Other || r.kind == FaceKind::Full) {
      facet_vertex_empty.satisfied = false;
      face_failures.push_back(face_reason(net, r));
    }
  }
  if (in.siphons->empty()) facet_or_empty.evidence = "no siphons";
  facet_vertex_empty.evidence = facet_or_empty.evidence;

  Hypothesis certs{"repelling certificate for every facet siphon", true, ""};
  for (const auto& [w, ok] : in.facet_certificates) {
    certs.evidence += (certs.evidence.empty() ? "" : "; ") + format_set(net, w) + (ok ? ": verified" : ": failed");
    certs.satisfied = certs.satisfied && ok;
  }
  if (in.facet_certificates.empty()) certs.evidence = "no facet siphons";

  const auto cb = in.balancing->complex_balancing;
  Hypothesis balanced{"complex-balancing", cb != ComplexBalancing::No, ""};
  balanced.evidence = cb == ComplexBalancing::GuaranteedByDeficiencyZero ? "weakly reversible with deficiency zero"
                      : cb == ComplexBalancing::Yes                      ? "positive complex-balanced equilibrium found"
                                                                         : in.balancing->reason;

  v.hypotheses = {wr, bounded, facet_or_empty, facet_vertex_empty, certs, balanced};

  const bool persistent_theorem = wr.satisfied && bounded.satisfied && facet_or_empty.satisfied && certs.satisfied;
  v.gac = balanced.satisfied && facet_vertex_empty.satisfied && certs.satisfied;
  v.persistent = persistent_theorem || v.gac;
  v.two_dimensional_shortcut = v.gac && in.dim_p <= 2;

  if (v.persistent) v.assumptions.push_back("boundary omega-limit points lie in the interiors of siphon faces");
  if (v.gac) {
    v.assumptions.push_back("trajectories of complex-balancing systems are bounded and converge to the set of equilibria");
    if (has_vertex) v.assumptions.push_back("vertices of P are not omega-limit points of interior trajectories");
  }

  if (v.gac) {
    v.kind = VerdictKind::GacHolds;
    v.summary = "GAC holds (Theorem: facet, vertex or empty siphon faces of a complex-balancing system)";
    if (v.two_dimensional_shortcut) v.summary += "; classes are at most two-dimensional";
    return v;
  }
  if (persistent_theorem) {
    v.kind = VerdictKind::Persistent;
    v.summary = "persistent (Theorem: facet-or-empty siphons)";
    if (!balanced.satisfied) v.reasons.push_back("GAC not established: " + balanced.evidence);
    return v;
  }

  v.kind = VerdictKind::Inconclusive;
  for (const auto& f : face_failures) v.reasons.push_back(f);
  if (!wr.satisfied) v.reasons.push_back("not weakly reversible: " + wr.evidence);
  if (!certs.satisfied) v.reasons.push_back("repelling certificate failed: " + certs.evidence);
  if (face_failures.empty() && !facet_or_empty.satisfied && !balanced.satisfied)
    v.reasons.push_back("vertex siphon faces are covered only for complex-balancing systems: " + balanced.evidence);
  if (!bounded.satisfied) v.reasons.push_back("boundedness unverified: no strictly positive conservation law");
  if (v.reasons.empty()) v.reasons.push_back("hypotheses not met");
  v.summary = "inconclusive: " + v.reasons.front();
  return v;
}

Verdict verdict(const ReactionNetwork& net, const StoichClass& cls) {
  const auto siphons = classify_all(net, cls);
  const auto balancing = balancing_status(net);
  VerdictInputs in;
  in.net = &net;
  in.dim_p = cls.dim;
  in.weak_reversibility = is_weakly_reversible(net);
  in.boundedness = boundedness_evidence(net);
  in.siphons = &siphons;
  in.balancing = &balancing;
  for (const auto& r : siphons)
    if (r.kind == FaceKind::Facet) {
      const auto cert = repelling_certificate(net, cls, r.w);
      const auto* ok = std::get_if<RepellingCertificate>(&cert);
      in.facet_certificates.emplace_back(r.w, ok && verify_certificate(net, *ok));
    }
  return verdict(in);
}

}  // namespace crn
