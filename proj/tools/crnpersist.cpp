// crnpersist: structural persistence analysis of mass-action reaction networks.
//
// exit codes: 0 ok, 2 parse/input error, 3 analysis failure, 4 simulation error

#include "crn/analysis.hpp"
#include "crn/error.hpp"
#include "crn/parser.hpp"
#include "crn/report.hpp"
#include "crn/simulator.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitParse = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitSimulation = 4;

struct ExitError {
  int code;
  std::string message;
};

struct Config {
  std::string subcommand;
  std::string input;
  std::string x0;
  std::string rates;
  bool json = false;
  std::string output;
  bool minimal = false;
  double t_end = 100;
  double rtol = 1e-8;
  double atol = 1e-10;
  double band = 1e-2;
  std::string csv;
};

double parse_number(const std::string& text, const std::string& what) {
  double v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v))
    throw ExitError{kExitParse, "invalid number '" + text + "' in " + what};
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Eigen::VectorXd parse_x0(const crn::ReactionNetwork& net, const std::string& spec) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(net.num_species(), -1.0);
  for (const auto& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ExitError{kExitParse, "--x0 entry '" + item + "' is not name=value"};
    const std::string name = trim(item.substr(0, eq));
    const int i = net.species_index(name);
    if (i < 0) throw ExitError{kExitParse, "--x0 names unknown species '" + name + "'"};
    if (x(i) != -1.0) throw ExitError{kExitParse, "--x0 assigns '" + name + "' twice"};
    const double v = parse_number(item.substr(eq + 1), "--x0");
    if (!(v > 0)) throw ExitError{kExitParse, "--x0 value for '" + name + "' must be strictly positive"};
    x(i) = v;
  }
  for (int i = 0; i < net.num_species(); ++i)
    if (x(i) == -1.0) throw ExitError{kExitParse, "--x0 does not assign species '" + net.species_name(i) + "'"};
  return x;
}

struct Input {
  crn::ReactionNetwork net;
  Eigen::VectorXd x0;
  crn::InitialSource source;
};

Input load(const Config& cfg) {
  crn::ParsedNetwork parsed = [&] {
    try {
      return crn::load_network(cfg.input);
    } catch (const crn::ParseError& e) {
      throw ExitError{kExitParse, cfg.input + ": " + e.what()};
    } catch (const std::invalid_argument& e) {
      throw ExitError{kExitParse, cfg.input + ": " + e.what()};
    } catch (const std::runtime_error& e) {
      throw ExitError{kExitParse, e.what()};
    }
  }();
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";

  crn::ReactionNetwork net = parsed.network;
  if (!cfg.rates.empty()) {
    std::vector<double> rates;
    for (const auto& r : split(cfg.rates, ',')) rates.push_back(parse_number(r, "--rates"));
    if (static_cast<int>(rates.size()) != net.num_reactions())
      throw ExitError{kExitParse, "--rates gives " + std::to_string(rates.size()) + " values for " +
                                      std::to_string(net.num_reactions()) + " reactions"};
    try {
      net = net.with_rates(rates);
    } catch (const std::invalid_argument& e) {
      throw ExitError{kExitParse, std::string("--rates: ") + e.what()};
    }
  }
  if (!cfg.x0.empty()) return {net, parse_x0(net, cfg.x0), crn::InitialSource::Override};
  if (parsed.x0) return {net, *parsed.x0, crn::InitialSource::File};
  return {net, Eigen::VectorXd::Ones(net.num_species()), crn::InitialSource::Default};
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw ExitError{kExitParse, "cannot write " + cfg.output};
  out << text;
}

crn::Analysis run_analysis(const Input& in, bool equilibria) {
  try {
    crn::AnalysisOptions opt;
    opt.equilibria = equilibria;
    return crn::analyze(in.net, in.x0, in.source, opt);
  } catch (const std::exception& e) {
    throw ExitError{kExitAnalysis, std::string("analysis failed: ") + e.what()};
  }
}

int run(const Config& cfg) {
  const Input in = load(cfg);
  // text reports carry the notice themselves
  if (in.source == crn::InitialSource::Default && (cfg.json || cfg.subcommand == "simulate"))
    std::cerr << "notice: no x0 given; using x0 = (1, ..., 1). Face kinds can depend on the class chosen.\n";

  if (cfg.subcommand == "simulate") {
    std::vector<crn::SpeciesSet> tracked;
    try {
      crn::AnalysisOptions opt;
      opt.equilibria = false;
      tracked = crn::facet_siphons(crn::analyze(in.net, in.x0, in.source, opt));
    } catch (const std::exception& e) {
      std::cerr << "notice: repelling monitors disabled: " << e.what() << "\n";
    }
    crn::SimulationOptions so;
    so.rtol = cfg.rtol;
    so.atol = cfg.atol;
    crn::SimulationSummary sim;
    try {
      sim = crn::run_simulation(in.net, in.x0, cfg.t_end, so, tracked, cfg.band);
    } catch (const crn::SimulationError& e) {
      std::ostringstream msg;
      msg << "simulation failed at t = " << crn::format_double(e.time()) << ": " << e.what();
      throw ExitError{kExitSimulation, msg.str()};
    } catch (const std::exception& e) {
      throw ExitError{kExitSimulation, std::string("simulation failed: ") + e.what()};
    }
    if (!cfg.csv.empty()) {
      std::ofstream csv(cfg.csv);
      if (!csv) throw ExitError{kExitSimulation, "cannot write " + cfg.csv};
      crn::write_csv(csv, in.net, sim.trajectory);
    }
    crn::Json j = crn::simulation_json(in.net, sim);
    if (in.source == crn::InitialSource::Default) j["notice"] = "x0 defaulted to all ones";
    emit(cfg, crn::dump_json(j));  // the summary is always JSON
    return 0;
  }

  const bool wants_equilibria = cfg.subcommand == "analyze" || cfg.subcommand == "birch";
  const crn::Analysis a = run_analysis(in, wants_equilibria);

  if (cfg.subcommand == "birch" && !a.birch)
    throw ExitError{kExitAnalysis, "no Birch point: " + a.equilibria_note.value_or("not computed")};

  if (cfg.json) {
    emit(cfg, crn::dump_json(crn::analysis_json(a)));
    return 0;
  }
  std::string notices;
  for (const auto& n : a.notices) notices += "notice: " + n + "\n";
  if (cfg.subcommand == "analyze") {
    emit(cfg, crn::analysis_text(a));
  } else if (cfg.subcommand == "siphons") {
    std::string text = notices;
    if (cfg.minimal) {
      for (const auto& rep : a.siphons)
        if (rep.is_minimal) text += crn::format_set(a.network, rep.w) + "\n";
    } else {
      text += crn::siphons_text(a);
    }
    emit(cfg, text);
  } else if (cfg.subcommand == "certify") {
    emit(cfg, notices + crn::certificates_text(a));
  } else {
    emit(cfg, notices + crn::birch_text(a));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence and global-stability analysis of mass-action reaction networks"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool with_class) {
    sub->add_option("file", cfg.input, "network file (.crn)")->required();
    sub->add_flag("--json", cfg.json, "emit JSON instead of text");
    sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--rates", cfg.rates, "comma separated rate constants, one per expanded reaction");
    if (with_class) sub->add_option("--x0", cfg.x0, "initial condition, e.g. A=1,B=2 (overrides the file block)");
  };
  auto* analyze = app.add_subcommand("analyze", "full report: graph, siphons, faces, certificates, equilibria, verdict");
  common(analyze, true);
  auto* siphons = app.add_subcommand("siphons", "siphons and their face kinds");
  common(siphons, true);
  siphons->add_flag("--minimal", cfg.minimal, "list minimal siphons only (text)");
  auto* birch = app.add_subcommand("birch", "Birch point and boundary equilibria");
  common(birch, true);
  auto* certify = app.add_subcommand("certify", "repelling and non-emptiability certificates with the verdict");
  common(certify, true);
  auto* simulate = app.add_subcommand("simulate", "integrate the mass-action system; JSON summary, optional CSV");
  common(simulate, true);
  simulate->add_option("--t-end", cfg.t_end, "final time")->capture_default_str();
  simulate->add_option("--rtol", cfg.rtol, "relative tolerance")->capture_default_str();
  simulate->add_option("--atol", cfg.atol, "absolute tolerance")->capture_default_str();
  simulate->add_option("--band", cfg.band, "facet band for repelling monitors")->capture_default_str();
  simulate->add_option("--csv", cfg.csv, "write the trajectory here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

  try {
    return run(cfg);
  } catch (const ExitError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysis;
  }
}
