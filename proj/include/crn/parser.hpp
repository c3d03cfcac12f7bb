#pragma once

// Text format for reaction networks (.crn):
//
//   # comment
//   2 A <-> A + B ; k = 1.0, 2.0
//   B -> C ; k = 0.5
//   0 -> A
//   x0: A = 1, B = 2
//
// A reversible arrow expands to two reactions, forward first. Missing rate
// constants default to 1.0 with a warning.

#include "crn/network.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crn {

struct Term {
  int coefficient = 1;
  std::string species;
  bool operator==(const Term&) const = default;
};

/// One reaction line as written. An empty side is the zero complex.
struct ReactionLine {
  std::vector<Term> lhs;
  std::vector<Term> rhs;
  bool reversible = false;
  std::vector<double> rates;  ///< 0, 1 or 2 entries as written
  bool operator==(const ReactionLine&) const = default;
};

struct NetworkDocument {
  std::vector<ReactionLine> reactions;
  std::vector<std::pair<std::string, double>> x0;
  bool operator==(const NetworkDocument&) const = default;
};

struct ParsedNetwork {
  ReactionNetwork network;
  std::optional<Eigen::VectorXd> x0;
  std::vector<std::string> warnings;
};

/// Throws ParseError with 1-based line and column.
NetworkDocument parse_document(std::string_view text);
std::string serialize_document(const NetworkDocument& doc);

/// Species are indexed in order of first appearance.
ParsedNetwork build_network(const NetworkDocument& doc);
ParsedNetwork parse_network(std::string_view text);
ParsedNetwork load_network(const std::filesystem::path& path);

/// Document with one irreversible line per reaction of `net`.
NetworkDocument to_document(const ReactionNetwork& net, const std::optional<Eigen::VectorXd>& x0 = std::nullopt);

/// 17 significant digits, shortest of %g style.
std::string format_double(double v);

}  // namespace crn
