#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/certificates.hpp"
#include "crn/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <random>

using namespace crn;

namespace {

SpeciesSet by_name(const ReactionNetwork& net, std::initializer_list<const char*> names) {
  std::vector<int> idx;
  for (const char* n : names) idx.push_back(net.species_index(n));
  return make_species_set(idx);
}

// some reaction with source meeting W leaves every W count unchanged
bool has_w_neutral_reaction(const ReactionNetwork& net, const SpeciesSet& w) {
  for (int k = 0; k < net.num_reactions(); ++k) {
    if (!meets(net.source(k), w)) continue;
    const auto v = net.reaction_vector(k);
    bool neutral = true;
    for (int i : w) neutral = neutral && v(i) == 0;
    if (neutral) return true;
  }
  return false;
}

int reaction_index(const ReactionNetwork& net, const std::string& label) {
  for (int k = 0; k < net.num_reactions(); ++k)
    if (net.reaction_label(k) == label) return k;
  return -1;
}

StoichClass ones_class(const ReactionNetwork& net) { return make_stoich_class(net, Eigen::VectorXd::Ones(net.num_species())); }

ReactionNetwork add_reverses(const ReactionNetwork& net) {
  auto specs = net.reaction_specs();
  const auto n = specs.size();
  for (std::size_t k = 0; k < n; ++k) {
    bool has = false;
    for (std::size_t j = 0; j < n; ++j) has |= specs[j].source == specs[k].product && specs[j].product == specs[k].source;
    if (!has) specs.push_back({specs[k].product, specs[k].source, 1.0});
  }
  std::vector<std::string> names;
  for (const auto& s : net.species()) names.push_back(s.name);
  return ReactionNetwork(names, specs);
}

}  // namespace

TEST_CASE("repelling certificate for the triangle facet") {
  const auto tri = fixtures::two_linkage_triangle();
  const auto res = repelling_certificate(tri, ones_class(tri), by_name(tri, {"A"}));
  REQUIRE(std::holds_alternative<RepellingCertificate>(res));
  const auto& cert = std::get<RepellingCertificate>(res);
  REQUIRE(cert.direction.size() == 1);
  CHECK(cert.direction(0) == 1);
  CHECK(cert.constant_species.empty());
  CHECK(cert.gamma[static_cast<std::size_t>(reaction_index(tri, "2A -> A + B"))] == -1);
  CHECK(cert.gamma[static_cast<std::size_t>(reaction_index(tri, "A + B -> 2A"))] == 1);
  CHECK(cert.gamma[static_cast<std::size_t>(reaction_index(tri, "B -> C"))] == 0);
  CHECK(cert.gamma[static_cast<std::size_t>(reaction_index(tri, "C -> B"))] == 0);
  REQUIRE(cert.classes.size() == 2);
  CHECK(tri.complex_label(cert.classes[0].minimal_complex) == "A + B");
  REQUIRE(cert.classes[0].witness_reaction);
  CHECK(tri.reaction_label(*cert.classes[0].witness_reaction) == "A + B -> 2A");
  CHECK(!cert.classes[1].witness_reaction);
  CHECK(verify_certificate(tri, cert));
}

TEST_CASE("certificate identities hold exactly") {
  const std::vector<ReactionNetwork> nets = {fixtures::two_linkage_triangle(2, 3, 5, 7), fixtures::net(fixtures::kTetrahedronChain),
                                             fixtures::deficiency_one_triangle({1, 2, 1, 3, 1, 1}),
                                             fixtures::net("3 A + B <-> 2 A + C\nC <-> B\n")};
  for (const auto& net : nets) {
    const auto cls = ones_class(net);
    int facets = 0;
    for (const auto& rep : classify_all(net, cls)) {
      if (rep.kind != FaceKind::Facet) continue;
      ++facets;
      const auto res = repelling_certificate(net, cls, rep.w);
      REQUIRE(std::holds_alternative<RepellingCertificate>(res));
      const auto& cert = std::get<RepellingCertificate>(res);
      CHECK(verify_certificate(net, cert));
      // independent recomputation of y'_k|_W - y_k|_W = gamma_k v|_W
      for (int k = 0; k < net.num_reactions(); ++k) {
        const Complex d = net.reaction_vector(k);
        for (std::size_t j = 0; j < cert.w.size(); ++j)
          CHECK(Rational(d(cert.w[j])) == cert.gamma[static_cast<std::size_t>(k)] * cert.direction(static_cast<Eigen::Index>(j)));
      }
      for (const auto& lw : cert.classes) {
        const Complex& ymin = net.complexes()[static_cast<std::size_t>(lw.minimal_complex)];
        for (int c : lw.complexes)
          for (int i : cert.w) CHECK(ymin(i) <= net.complexes()[static_cast<std::size_t>(c)](i));
        if (lw.witness_reaction) {
          CHECK(net.reactions()[static_cast<std::size_t>(*lw.witness_reaction)].source == lw.minimal_complex);
          CHECK(cert.gamma[static_cast<std::size_t>(*lw.witness_reaction)] > 0);
        }
      }
      // a tampered certificate is rejected
      auto bad = cert;
      bad.gamma[0] += 1;
      CHECK(!verify_certificate(net, bad));
    }
    CHECK(facets >= 1);
  }
}

TEST_CASE("certificate preconditions") {
  const auto orth = fixtures::net(fixtures::kOpenOrthant);
  const auto res = repelling_certificate(orth, ones_class(orth), by_name(orth, {"A", "B"}));
  REQUIRE(std::holds_alternative<CertificateFailure>(res));
  CHECK(std::get<CertificateFailure>(res).reason.find("not a facet") != std::string::npos);
  // a facet of a network without the increasing reaction
  const auto chain = fixtures::net("2 A -> A + B\nB <-> C\n");
  const auto r2 = repelling_certificate(chain, ones_class(chain), by_name(chain, {"A"}));
  REQUIRE(std::holds_alternative<CertificateFailure>(r2));
  CHECK(std::get<CertificateFailure>(r2).reason.find("no witness reaction") != std::string::npos);
}

TEST_CASE("repelling quantity") {
  const auto tri = fixtures::two_linkage_triangle();
  const auto w = by_name(tri, {"A"});
  CHECK(repelling_quantity(tri, Eigen::Vector3d(0, 1, 2), w) == 0.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 10.0), frac(0.0, 1e-3);
  for (int s = 0; s < 200; ++s) {
    const double b = u(rng), c = u(rng);
    const double eps = frac(rng) * std::min(b, c) + 1e-12;
    const double q = repelling_quantity(tri, Eigen::Vector3d(eps, b, c), w);
    CHECK(q > 0);
    // x_a^2 (x_b - x_a) with unit rates
    CHECK(q == doctest::Approx(eps * eps * (b - eps)).epsilon(1e-12));
  }
}

TEST_CASE("dynamic non-emptiability") {
  const auto tri = fixtures::two_linkage_triangle();
  const auto ne = non_emptiable_check(tri, by_name(tri, {"A"}));
  CHECK(ne.non_emptiable);
  REQUIRE(ne.epsilon);
  CHECK(*ne.epsilon == Rational(1, 4));
  CHECK(ne.reactions_considered == 2);

  const auto ab = fixtures::net("A -> B\n");
  const auto nb = non_emptiable_check(ab, by_name(ab, {"B"}));
  CHECK(nb.non_emptiable);
  CHECK(*nb.epsilon == 1);

  const auto schedule = default_epsilon_schedule();
  REQUIRE(schedule.size() == 21);
  CHECK(schedule.front() == 1);
  CHECK(schedule.back() == Rational(1, Integer(1) << 40));

  // degenerate instance: W-neutral reactions only, recorded not asserted
  const auto neutral = fixtures::net("A + B <-> A + C\n");
  const auto nn = non_emptiable_check(neutral, by_name(neutral, {"A"}));
  MESSAGE("W-neutral instance: " << std::string(nn.non_emptiable ? "non-emptiable" : "unknown"));
}

TEST_CASE("boundedness evidence") {
  const auto tri = fixtures::two_linkage_triangle();
  const auto b = boundedness_evidence(tri);
  CHECK(b.conservative);
  CHECK(b.weights == (RationalVector(3) << 1, 1, 1).finished());
  CHECK(!boundedness_evidence(fixtures::net(fixtures::kOpenOrthant)).conservative);
  CHECK(!boundedness_evidence(fixtures::net("A <-> 2 A\n")).conservative);
  const auto dimer = boundedness_evidence(fixtures::net("2 A <-> B\n"));
  CHECK(dimer.conservative);
  CHECK(dimer.weights == (RationalVector(2) << 1, 2).finished());
  const auto split = boundedness_evidence(fixtures::net("A -> B + C\n"));
  CHECK(split.conservative);
  CHECK(split.weights == (RationalVector(3) << 2, 1, 1).finished());
  // a conservation law exists but none is strictly positive
  CHECK(!boundedness_evidence(fixtures::net("0 <-> A + B\n")).conservative);
}

TEST_CASE("verdicts on the worked networks") {
  const auto five = fixtures::deficiency_one_triangle({1, 2, 1, 3, 1, 1});
  const auto v5 = verdict(five, ones_class(five));
  CHECK(v5.kind == VerdictKind::Persistent);
  CHECK(v5.persistent);
  CHECK(!v5.gac);
  CHECK(v5.summary == "persistent (Theorem: facet-or-empty siphons)");
  for (const auto& h : v5.hypotheses)
    if (h.name != "complex-balancing" && h.name != "every siphon face is a facet, vertex or empty") CHECK(h.satisfied);

  const auto tet = fixtures::net(fixtures::kTetrahedronChain);
  const auto v3 = verdict(tet, ones_class(tet));
  CHECK(v3.kind == VerdictKind::GacHolds);
  CHECK(v3.persistent);
  CHECK(!v3.two_dimensional_shortcut);

  const auto tri = fixtures::two_linkage_triangle();
  const auto v1 = verdict(tri, ones_class(tri));
  CHECK(v1.kind == VerdictKind::GacHolds);
  CHECK(v1.two_dimensional_shortcut);

  const auto orth = fixtures::net(fixtures::kOpenOrthant);
  const auto v4 = verdict(orth, ones_class(orth));
  CHECK(v4.kind == VerdictKind::Inconclusive);
  CHECK(v4.summary == "inconclusive: siphon {A,B} face is 1-dimensional, neither facet nor vertex");
  bool mentions_bounded = false;
  for (const auto& r : v4.reasons) mentions_bounded |= r.find("boundedness unverified") != std::string::npos;
  CHECK(mentions_bounded);

  const auto chain = fixtures::net("A -> B\nB -> C\n");
  CHECK(verdict(chain, ones_class(chain)).kind == VerdictKind::Inconclusive);
}

TEST_CASE("persistent needs boundedness evidence") {
  const auto five = fixtures::deficiency_one_triangle({1, 2, 1, 3, 1, 1});
  const auto cls = ones_class(five);
  const auto siphons = classify_all(five, cls);
  const auto balancing = balancing_status(five);
  VerdictInputs in;
  in.net = &five;
  in.dim_p = cls.dim;
  in.weak_reversibility = is_weakly_reversible(five);
  in.boundedness = boundedness_evidence(five);
  in.siphons = &siphons;
  in.balancing = &balancing;
  in.facet_certificates = {{siphons[0].w, true}};
  CHECK(verdict(in).kind == VerdictKind::Persistent);
  in.boundedness = Boundedness{};
  const auto v = verdict(in);
  CHECK(v.kind == VerdictKind::Inconclusive);
  CHECK(v.summary == "inconclusive: boundedness unverified: no strictly positive conservation law");
  in.boundedness = boundedness_evidence(five);
  in.facet_certificates = {{siphons[0].w, false}};
  CHECK(verdict(in).kind == VerdictKind::Inconclusive);
}

TEST_CASE("adding reverse reactions keeps persistence when face kinds are unchanged") {
  const std::vector<ReactionNetwork> nets = {
      fixtures::net("2 A -> A + B\nA + B -> 2 A\nB -> C\nC -> D\nD -> B\n"), fixtures::net("A -> B\nB -> C\nC -> A\n"),
      fixtures::deficiency_one_triangle({1, 2, 1, 3, 1, 1}), fixtures::two_linkage_triangle(), fixtures::net(fixtures::kTetrahedronChain),
      fixtures::net("2 A -> A + B\nA + B -> A + C\nA + C -> 2 A\nB <-> C\n")};
  for (const auto& net : nets) {
    const auto rev = add_reverses(net);
    const auto cls = ones_class(net);
    const auto cls_rev = ones_class(rev);
    const auto before = verdict(net, cls);
    const auto after = verdict(rev, cls_rev);
    const auto ka = classify_all(net, cls), kb = classify_all(rev, cls_rev);
    bool same = ka.size() == kb.size();
    for (std::size_t i = 0; same && i < ka.size(); ++i) same = ka[i].w == kb[i].w && ka[i].kind == kb[i].kind;
    if (same && before.persistent) CHECK(after.persistent);
  }
}

TEST_CASE("facet siphons of weakly reversible random networks are non-emptiable") {
  std::mt19937_64 rng(77);
  int facets = 0, neutral = 0;
  for (int trial = 0; trial < 300 && facets < 40; ++trial) {
    const auto base = oracle::random_network(rng, {.max_species = 5, .max_reactions = 4, .max_coefficient = 2});
    const auto net = add_reverses(base);
    const auto cls = ones_class(net);
    for (const auto& rep : classify_all(net, cls)) {
      if (rep.kind != FaceKind::Facet || rep.face->canonical != rep.w) continue;
      ++facets;
      const auto cert = repelling_certificate(net, cls, rep.w);
      CHECK(std::holds_alternative<RepellingCertificate>(cert));
      const auto ne = non_emptiable_check(net, rep.w);
      if (has_w_neutral_reaction(net, rep.w)) {
        // outside the facet argument: alpha on a neutral reaction sits in both cones
        ++neutral;
        continue;
      }
      CHECK_MESSAGE(ne.non_emptiable, serialize_document(to_document(net)) << " W=" << format_set(net, rep.w));
    }
  }
  CHECK(facets - neutral >= 10);
  MESSAGE(neutral << " of " << facets << " facets had W-neutral reactions");
}

TEST_CASE("W-neutral reaction on a facet leaves non-emptiability undecided") {
  const auto net = fixtures::net("2 S3 <-> S3\n0 <-> 2 S0\nS3 <-> 2 S0 + S3\n");
  const auto cls = make_stoich_class(net, Eigen::Vector2d(1, 1));
  const SpeciesSet w = by_name(net, {"S3"});
  CHECK(face_kind(face_canonicalize(cls, w), cls.dim) == FaceKind::Facet);
  CHECK(!non_emptiable_check(net, w).non_emptiable);
}
