#pragma once

// Siphons (semilocking sets) and the faces F_W = P ∩ Z_W of a positive
// stoichiometric compatibility class P = (x0 + S) ∩ R^N_{>=0}.
//
// All face decisions are exact: the class is stored over the rationals and
// emptiness / forced zeros are decided with the rational simplex solver.

#include "crn/network.hpp"
#include "crn/rational.hpp"

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace crn {

struct StoichClass {
  RationalVector x0;            ///< strictly positive
  RationalMatrix stoichiometry; ///< N x R, columns span S
  RationalMatrix conservation;  ///< rows span the orthogonal complement of S
  int dim = 0;                  ///< dim P = dim S

  RationalVector totals() const { return conservation * x0; }
};

/// Throws std::invalid_argument unless x0 is strictly positive with one entry per species.
StoichClass make_stoich_class(const ReactionNetwork& net, const RationalVector& x0);
StoichClass make_stoich_class(const ReactionNetwork& net, const Eigen::VectorXd& x0);
// fixed-size and expression arguments would otherwise be ambiguous
template <class Derived>
StoichClass make_stoich_class(const ReactionNetwork& net, const Eigen::MatrixBase<Derived>& x0) {
  if constexpr (std::is_same_v<typename Derived::Scalar, double>)
    return make_stoich_class(net, Eigen::VectorXd(x0));
  else
    return make_stoich_class(net, RationalVector(x0));
}

enum class FaceKind { Empty, Vertex, Facet, Other, Full };

std::string to_string(FaceKind kind);

/// A nonempty face with its canonical (largest) zero set.
struct Face {
  SpeciesSet canonical;           ///< W* ⊇ W: every species vanishing on all of F_W
  int dim = 0;                    ///< dim(S ∩ Z_{W*})
  RationalVector interior_point;  ///< a point of F_W positive exactly off W*
};

/// std::nullopt when F_W is empty (Z_W stoichiometrically unattainable).
std::optional<Face> face_canonicalize(const StoichClass& cls, const SpeciesSet& w);

/// Facet takes precedence when dim P = 1 (a facet is then also a point).
FaceKind face_kind(const std::optional<Face>& face, int dim_p);

/// Every reaction whose product meets W has a source meeting W.
/// Throws std::invalid_argument for an empty W.
bool is_siphon(const ReactionNetwork& net, const SpeciesSet& w);

enum class SiphonMode { Minimal, All };

inline constexpr int kDefaultSiphonCap = 24;

/// Depth-first branch-and-prune with unit propagation, sorted lexicographically.
/// Throws AnalysisError when the species count exceeds `max_species`.
std::vector<SpeciesSet> enumerate_siphons(const ReactionNetwork& net, SiphonMode mode,
                                          int max_species = kDefaultSiphonCap);

struct SiphonReport {
  SpeciesSet w;
  bool is_minimal = false;
  std::optional<Face> face;  ///< empty face when nullopt
  FaceKind kind = FaceKind::Empty;

  std::optional<int> face_dim() const { return face ? std::optional<int>(face->dim) : std::nullopt; }
};

/// One report per siphon (All mode), in enumeration order.
std::vector<SiphonReport> classify_all(const ReactionNetwork& net, const StoichClass& cls,
                                       int max_species = kDefaultSiphonCap);

}  // namespace crn
