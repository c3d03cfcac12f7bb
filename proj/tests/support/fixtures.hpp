#pragma once

#include "crn/parser.hpp"

#include <string>

#ifndef CRN_FIXTURE_DIR
#error "CRN_FIXTURE_DIR must be defined"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(CRN_FIXTURE_DIR) + "/" + name + ".crn"; }

inline crn::ParsedNetwork load(const std::string& name) { return crn::load_network(path(name)); }

inline crn::ReactionNetwork net(const std::string& text) { return crn::parse_network(text).network; }

// rates listed forward, reverse for each reversible pair
inline crn::ReactionNetwork two_linkage_triangle(double k1 = 1, double k2 = 1, double k3 = 1, double k4 = 1) {
  return crn::parse_network("2 A <-> A + B ; k = " + crn::format_double(k1) + ", " + crn::format_double(k2) +
                            "\nB <-> C ; k = " + crn::format_double(k3) + ", " + crn::format_double(k4) + "\n")
      .network;
}

inline const char* const kTetrahedronChain = "2 A <-> A + B\nB <-> C\nC <-> D\n";
inline const char* const kOpenOrthant = "A <-> B\nB <-> A + B\nA + B <-> A + C\n";

inline crn::ReactionNetwork deficiency_one_triangle(const std::vector<double>& k) {
  std::string t = "A + C <-> 2 A ; k = " + crn::format_double(k[0]) + ", " + crn::format_double(k[1]) + "\n" +
                  "2 A <-> A + B ; k = " + crn::format_double(k[2]) + ", " + crn::format_double(k[3]) + "\n" +
                  "B <-> C ; k = " + crn::format_double(k[4]) + ", " + crn::format_double(k[5]) + "\n";
  return crn::parse_network(t).network;
}

}  // namespace fixtures
