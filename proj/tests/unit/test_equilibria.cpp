#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/equilibria.hpp"
#include "crn/error.hpp"
#include "crn/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <numeric>
#include <random>

using namespace crn;

namespace {

double max_rate(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = rate_vector(net, x);
  return r.size() ? std::max(1.0, r.cwiseAbs().maxCoeff()) : 1.0;
}

// weakly reversible deficiency-zero family used by the random tests
ReactionNetwork random_rates(const ReactionNetwork& net, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<double> rates;
  for (int k = 0; k < net.num_reactions(); ++k) rates.push_back(u(rng));
  return net.with_rates(rates);
}

}  // namespace

TEST_CASE("complex-balance residual") {
  const auto tri = fixtures::two_linkage_triangle();
  CHECK(complex_balance_residual(tri, Eigen::Vector3d(1, 1, 1)).cwiseAbs().maxCoeff() == 0.0);
  const auto ab12 = fixtures::net("A <-> B ; k = 1, 2\n");
  CHECK(complex_balance_residual(ab12, Eigen::Vector2d(2, 1)).cwiseAbs().maxCoeff() == 0.0);
  const auto ab = fixtures::net("A <-> B ; k = 1, 1\n");
  const Eigen::VectorXd r = complex_balance_residual(ab, Eigen::Vector2d(2, 1));
  CHECK(r(0) == -1.0);
  CHECK(r(1) == 1.0);
  CHECK_THROWS_AS(complex_balance_residual(ab, Eigen::Vector2d(0, 1)), std::invalid_argument);
}

TEST_CASE("detailed-balance residual") {
  const auto ab12 = fixtures::net("A <-> B ; k = 1, 2\n");
  const auto pairs = detailed_balance_residual(ab12, Eigen::Vector2d(2, 1));
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].residual == 0.0);
  const auto tri = fixtures::two_linkage_triangle();
  const auto tp = detailed_balance_residual(tri, Eigen::Vector3d(1, 1, 1));
  CHECK(tp.size() == 2);
  for (const auto& p : tp) CHECK(p.residual == 0.0);
  CHECK_THROWS_AS(detailed_balance_residual(fixtures::net("A -> B"), Eigen::Vector2d(1, 1)), AnalysisError);
}

TEST_CASE("tree constants solve the Laplacian kernel") {
  // in-trees of the 3-cycle: K_A = k2 k3, K_B = k3 k1, K_C = k1 k2
  const auto cyc = fixtures::net("A -> B ; k = 2\nB -> C ; k = 3\nC -> A ; k = 5\n");
  const Eigen::VectorXd k = tree_constants(cyc, {0, 1, 2}, KernelMethod::SpanningTrees);
  CHECK(k(0) == doctest::Approx(15));
  CHECK(k(1) == doctest::Approx(10));
  CHECK(k(2) == doctest::Approx(6));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 40; ++trial) {
    // random strongly connected class: a cycle plus chords
    const int m = 2 + trial % 6;
    std::string text;
    for (int i = 0; i < m; ++i)
      text += "X" + std::to_string(i) + " -> X" + std::to_string((i + 1) % m) + " ; k = " + format_double(u(rng)) + "\n";
    for (int i = 0; i + 2 < m; i += 2)
      text += "X" + std::to_string(i + 2) + " -> X" + std::to_string(i) + " ; k = " + format_double(u(rng)) + "\n";
    const auto net = fixtures::net(text);
    std::vector<int> cls(static_cast<std::size_t>(net.num_complexes()));
    std::iota(cls.begin(), cls.end(), 0);
    const Eigen::MatrixXd lap = oracle::class_laplacian(net, cls);
    const Eigen::VectorXd trees = tree_constants(net, cls, KernelMethod::SpanningTrees);
    const Eigen::VectorXd kernel = tree_constants(net, cls, KernelMethod::Nullspace);
    CHECK(trees.minCoeff() > 0);
    CHECK((lap * trees).cwiseAbs().maxCoeff() <= 1e-10 * trees.cwiseAbs().maxCoeff() * lap.cwiseAbs().maxCoeff());
    // same ray
    const Eigen::VectorXd a = trees / trees.sum(), b = kernel / kernel.sum();
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("complex-balanced equilibrium from rates") {
  const auto tri = fixtures::two_linkage_triangle();
  const auto sol = find_complex_balanced_equilibrium(tri);
  REQUIRE(sol.equilibrium);
  const Eigen::VectorXd& x = *sol.equilibrium;
  CHECK(x(1) / x(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x(2) / x(1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto five = fixtures::deficiency_one_triangle({1, 2, 1, 3, 1, 1});
  const auto no = find_complex_balanced_equilibrium(five);
  CHECK(!no.equilibrium);
  CHECK(no.log_residual > kLogBalanceTolerance);
  const auto st = balancing_status(five);
  CHECK(st.complex_balancing == ComplexBalancing::No);

  CHECK_THROWS_AS(find_complex_balanced_equilibrium(fixtures::net("A -> B\n")), AnalysisError);
}

TEST_CASE("deficiency zero weakly reversible networks are complex-balancing for random rates") {
  std::mt19937_64 rng(12);
  const std::vector<ReactionNetwork> family = {
      fixtures::two_linkage_triangle(), fixtures::net(fixtures::kTetrahedronChain), fixtures::net(fixtures::kOpenOrthant),
      fixtures::net("A -> B\nB -> C\nC -> A\n"), fixtures::net("2 A -> B\nB -> A + C\nA + C -> 2 A\nD <-> 0\n"),
      fixtures::net("A + B <-> C\nC -> D\nD -> A + B\n")};
  for (const auto& base : family) {
    REQUIRE(deficiency(base).deficiency == 0);
    for (int trial = 0; trial < 10; ++trial) {
      const auto net = random_rates(base, rng);
      const auto st = balancing_status(net);
      REQUIRE(st.complex_balancing == ComplexBalancing::GuaranteedByDeficiencyZero);
      REQUIRE(st.complex_witness);
      const Eigen::VectorXd& x = *st.complex_witness;
      CHECK(complex_balance_residual(net, x).cwiseAbs().maxCoeff() <= 1e-8 * max_rate(net, x));
    }
  }
}

TEST_CASE("detailed balancing implies complex balancing") {
  std::mt19937_64 rng(13);
  const std::vector<ReactionNetwork> family = {fixtures::two_linkage_triangle(), fixtures::net(fixtures::kTetrahedronChain),
                                               fixtures::net(fixtures::kOpenOrthant),
                                               fixtures::deficiency_one_triangle({1, 1, 1, 1, 1, 1})};
  for (const auto& base : family) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto net = random_rates(base, rng);
      const auto st = balancing_status(net);
      if (st.detailed_balancing == DetailedBalancing::Yes) {
        CHECK(st.complex_balancing != ComplexBalancing::No);
        const Eigen::VectorXd& x = *st.detailed_witness;
        for (const auto& p : detailed_balance_residual(net, x)) CHECK(std::abs(p.residual) <= 1e-8 * max_rate(net, x));
        CHECK(complex_balance_residual(net, x).cwiseAbs().maxCoeff() <= 1e-8 * max_rate(net, x));
      }
    }
    // unit rates: every fixture here is detailed balanced at (1, ..., 1)
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(base.num_species());
    for (const auto& p : detailed_balance_residual(base, ones)) CHECK(p.residual == 0.0);
    CHECK(complex_balance_residual(base, ones).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Birch points") {
  const auto tri = fixtures::two_linkage_triangle();
  const Eigen::VectorXd star = *find_complex_balanced_equilibrium(tri).equilibrium;
  const auto b3 = birch_point(tri, star, make_stoich_class(tri, Eigen::Vector3d(2, 0.5, 0.5)));
  CHECK((b3.x - Eigen::Vector3d(1, 1, 1)).cwiseAbs().maxCoeff() <= 1e-12);
  const auto b1 = birch_point(tri, star, make_stoich_class(tri, Eigen::Vector3d(0.2, 0.3, 0.5)));
  CHECK((b1.x - Eigen::Vector3d::Constant(1.0 / 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const auto ab = fixtures::net("A <-> B ; k = 4, 4\n");
  const auto bab = birch_point(ab, *find_complex_balanced_equilibrium(ab).equilibrium, make_stoich_class(ab, Eigen::Vector2d(1, 1)));
  CHECK((bab.x - Eigen::Vector2d(1, 1)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Birch point invariants and uniqueness") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.05, 5.0), lam(-3.0, 3.0);
  const std::vector<ReactionNetwork> family = {fixtures::two_linkage_triangle(), fixtures::net(fixtures::kTetrahedronChain),
                                               fixtures::net("2 A -> B\nB -> A + C\nA + C -> 2 A\n"),
                                               fixtures::net("A + B <-> C\nC -> D\nD -> A + B\n")};
  for (const auto& base : family) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto net = random_rates(base, rng);
      const Eigen::VectorXd star = *balancing_status(net).complex_witness;
      Eigen::VectorXd x0(net.num_species());
      for (auto& v : x0) v = u(rng);
      const auto cls = make_stoich_class(net, x0);
      const auto bp = birch_point(net, star, cls);
      CHECK(bp.x.minCoeff() > 0);
      CHECK(mass_action_rhs(net, bp.x).cwiseAbs().maxCoeff() <= 1e-10 * max_rate(net, bp.x));
      CHECK(bp.orthogonality_residual <= 1e-10);
      const Eigen::MatrixXd c = to_double(cls.conservation);
      CHECK((c * bp.x - c * x0).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, (c * x0).norm()) * 10);
      for (int start = 0; start < 5; ++start) {
        BirchOptions opt;
        Eigen::VectorXd l(c.rows());
        for (auto& v : l) v = lam(rng);
        opt.initial_multipliers = l;
        const auto again = birch_point(net, star, cls, opt);
        CHECK((again.x - bp.x).cwiseAbs().maxCoeff() <= 1e-8);
      }
    }
  }
}

TEST_CASE("boundary equilibria of the triangle follow the closed form") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double k1 = u(rng), k2 = u(rng), k3 = u(rng), k4 = u(rng);
    const auto net = fixtures::two_linkage_triangle(k1, k2, k3, k4);
    const double t = 1 + trial % 3;
    const auto cls = make_stoich_class(net, Eigen::Vector3d(t / 3, t / 3, t / 3));
    const auto siphons = classify_all(net, cls);
    const auto be = boundary_equilibria(net, cls, siphons, *balancing_status(net).complex_witness);
    REQUIRE(be.size() == 1);
    CHECK(be[0].z(0) == 0.0);
    CHECK(be[0].z(1) == doctest::Approx(k4 * t / (k3 + k4)).epsilon(1e-12));
    CHECK(be[0].z(2) == doctest::Approx(k3 * t / (k3 + k4)).epsilon(1e-12));
    CHECK(be[0].rhs_residual <= 1e-10 * be[0].rhs_scale);
  }
}

TEST_CASE("boundary equilibrium of the tetrahedron is the reduced Birch point") {
  const auto tet = fixtures::net("2 A <-> A + B ; k = 1, 2\nB <-> C ; k = 3, 1\nC <-> D ; k = 1, 2\n");
  const auto cls = make_stoich_class(tet, Eigen::Vector4d(1, 1, 1, 1));
  const auto siphons = classify_all(tet, cls);
  const auto be = boundary_equilibria(tet, cls, siphons, *balancing_status(tet).complex_witness);
  REQUIRE(be.size() == 1);
  // B <-> C <-> D with k = 3,1 and 1,2: x_c = 3 x_b, x_d = x_c / 2, total 4
  const double xb = 4.0 / (1 + 3 + 1.5);
  CHECK(be[0].z(0) == 0.0);
  CHECK(be[0].z(1) == doctest::Approx(xb).epsilon(1e-12));
  CHECK(be[0].z(2) == doctest::Approx(3 * xb).epsilon(1e-12));
  CHECK(be[0].z(3) == doctest::Approx(1.5 * xb).epsilon(1e-12));
  CHECK(mass_action_rhs(tet, be[0].z).cwiseAbs().maxCoeff() <= 1e-10 * be[0].rhs_scale);
}
