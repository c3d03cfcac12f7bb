#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crn/analysis.hpp"
#include "crn/report.hpp"
#include "fixtures.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef CRNPERSIST_PATH
#error "CRNPERSIST_PATH must be defined"
#endif

using namespace crn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("crnpersist_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string& args) {
  const auto out = scratch() / "stdout", err = scratch() / "stderr";
  const std::string cmd = std::string("'") + CRNPERSIST_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string fixture(const std::string& name) { return "'" + fixtures::path(name) + "'"; }

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

Analysis analyze_fixture(const std::string& name) {
  const auto p = fixtures::load(name);
  return analyze(p.network, *p.x0, InitialSource::File);
}

}  // namespace

TEST_CASE("JSON report of the deficiency-one triangle") {
  const auto a = analyze_fixture("deficiency_one_triangle");
  const std::string j = dump_json(analysis_json(a));
  CHECK(contains(j, "\"siphons\":[[\"A\"],[\"A\",\"B\",\"C\"]]"));
  CHECK(contains(j, "\"deficiency\":1"));
  CHECK(contains(j, "\"kind\":\"persistent\""));
  // round trip through a JSON parser keeps the top-level layout
  const auto parsed = Json::parse(j);
  std::vector<std::string> keys;
  for (const auto& [k, v] : parsed.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"network", "graph", "classes", "siphons", "minimal_siphons", "certificates",
                                         "equilibria", "notices"});
  CHECK(parsed["equilibria"]["birch_point"].is_null());
}

TEST_CASE("JSON report of the triangle") {
  const auto a = analyze_fixture("two_linkage_triangle");
  const auto j = analysis_json(a);
  const std::string s = dump_json(j);
  CHECK(contains(s, "\"kind\":\"facet\""));
  CHECK(j["classes"][0]["dim_P"] == 2);
  CHECK(j["classes"][0]["faces"][0]["siphon"] == Json::array({"A"}));
  CHECK(j["certificates"]["verdict"]["kind"] == "gac_holds");
  const auto& be = j["equilibria"]["boundary_equilibria"][0];
  CHECK(be["z"]["A"] == 0.0);
  CHECK(be["z"]["B"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(be["z"]["C"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  for (const char* x : {"A", "B", "C"})
    CHECK(j["equilibria"]["birch_point"]["x"][x].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("text verdicts") {
  CHECK(contains(certificates_text(analyze_fixture("deficiency_one_triangle")), "verdict: persistent"));
  CHECK(contains(certificates_text(analyze_fixture("two_linkage_triangle")), "verdict: GAC holds"));
  const auto open = analyze_fixture("open_orthant");
  CHECK(contains(certificates_text(open), "verdict: inconclusive"));
  CHECK(contains(siphons_text(open), "{A,B}"));
}

TEST_CASE("analyze and its subcommands exit cleanly on fixtures") {
  for (const char* name : {"two_linkage_triangle", "tetrahedron_chain", "open_orthant", "deficiency_one_triangle", "decay",
                           "symmetric_pair", "three_cycle", "chain_drain"}) {
    for (const char* sub : {"analyze", "siphons", "certify"}) {
      const auto r = cli(std::string(sub) + " " + fixture(name));
      CHECK_MESSAGE(r.code == 0, name << " " << sub << ": " << r.err);
      const auto rj = cli(std::string(sub) + " --json " + fixture(name));
      CHECK_MESSAGE(rj.code == 0, name << " " << sub << " --json: " << rj.err);
      CHECK(Json::accept(rj.out));
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(cli("analyze '" + (scratch() / "missing.crn").string() + "'").code == 2);
  CHECK(cli("analyze '" + write_temp("bad.crn", "A -> -> B\n").string() + "'").code == 2);
  CHECK(cli("analyze " + fixture("decay") + " --x0 A=1").code == 2);
  CHECK(cli("analyze " + fixture("decay") + " --x0 A=1,B=0").code == 2);
  CHECK(cli("analyze " + fixture("decay") + " --rates 1,2").code == 2);
  const auto birch = cli("birch " + fixture("deficiency_one_triangle"));
  CHECK(birch.code == 3);
  CHECK(contains(birch.err, "no Birch point"));
  const auto blowup = cli("simulate '" + write_temp("blowup.crn", "2 A -> 3 A ; k = 1\n").string() + "' --x0 A=1 --t-end 5");
  CHECK(blowup.code == 4);
  CHECK(contains(blowup.err, "simulation failed"));
}

TEST_CASE("rate override") {
  const auto r = cli("analyze --json " + fixture("deficiency_one_triangle") + " --rates 1,1,1,1,1,1");
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["network"]["reactions"][1]["rate"] == 1.0);
  CHECK(j["certificates"]["verdict"]["kind"] == "gac_holds");
}

TEST_CASE("birch subcommand") {
  const auto tri = cli("birch --json " + fixture("two_linkage_triangle"));
  REQUIRE(tri.code == 0);
  const auto j = Json::parse(tri.out);
  for (const char* x : {"A", "B", "C"}) CHECK(j["equilibria"]["birch_point"]["x"][x].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  const auto& z = j["equilibria"]["boundary_equilibria"][0]["z"];
  CHECK(z["A"] == 0.0);
  CHECK(z["B"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  const auto pair = Json::parse(cli("birch --json " + fixture("symmetric_pair")).out);
  CHECK(pair["equilibria"]["birch_point"]["x"]["A"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair["equilibria"]["birch_point"]["x"]["B"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulate subcommand") {
  const auto tri = cli("simulate " + fixture("two_linkage_triangle") + " --x0 A=2.9,B=0.05,C=0.05 --t-end 50");
  REQUIRE(tri.code == 0);
  const auto j = Json::parse(tri.out);
  CHECK(j["omega_converged"] == true);
  CHECK(j["omega_zero_set"] == Json::array());
  CHECK(j["final_state"]["A"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(j["max_conservation_drift"].get<double>() <= 1e-8);

  const auto decay = Json::parse(cli("simulate " + fixture("decay") + " --t-end 40").out);
  CHECK(decay["omega_zero_set"] == Json::array({"A"}));

  const auto csv = scratch() / "zero.csv";
  const auto zero = cli("simulate " + fixture("two_linkage_triangle") + " --t-end 0 --csv '" + csv.string() + "'");
  REQUIRE(zero.code == 0);
  const auto text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.rfind("t,x_A,x_B,x_C,", 0) == 0);
  CHECK(Json::parse(zero.out)["omega_converged"].is_null());
}

TEST_CASE("default initial condition is announced") {
  const auto path = write_temp("no_x0.crn", "A <-> B\n");
  const auto text = cli("analyze '" + path.string() + "'");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "using x0 = (1, ..., 1)"));
  const auto json = cli("analyze --json '" + path.string() + "'");
  CHECK(contains(json.err, "using x0 = (1, ..., 1)"));
  CHECK(Json::parse(json.out)["classes"][0]["x0_source"] == "default");
  const auto over = cli("analyze --json '" + path.string() + "' --x0 A=2,B=3");
  CHECK(Json::parse(over.out)["classes"][0]["x0_source"] == "override");
}

TEST_CASE("output is byte identical across runs") {
  for (const char* sub : {"analyze --json", "certify", "simulate --t-end 20"}) {
    const auto a = cli(std::string(sub) + " " + fixture("two_linkage_triangle"));
    const auto b = cli(std::string(sub) + " " + fixture("two_linkage_triangle"));
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const auto file = scratch() / "report.json";
  CHECK(cli("analyze --json -o '" + file.string() + "' " + fixture("open_orthant")).code == 0);
  CHECK(slurp(file) == cli("analyze --json " + fixture("open_orthant")).out);
}

TEST_CASE("empty network") {
  const auto path = write_temp("empty.crn", "");
  for (const char* sub : {"analyze", "siphons", "birch", "certify"}) CHECK(cli(std::string(sub) + " '" + path.string() + "'").code == 0);
  const auto j = Json::parse(cli("analyze --json '" + path.string() + "'").out);
  CHECK(j["siphons"] == Json::array());
  CHECK(j["graph"]["deficiency"] == 0);
}
