#include "crn/faces.hpp"

#include "crn/error.hpp"
#include "crn/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace crn {

StoichClass make_stoich_class(const ReactionNetwork& net, const RationalVector& x0) {
  if (x0.size() != net.num_species()) throw std::invalid_argument("x0 length does not match species count");
  for (Eigen::Index i = 0; i < x0.size(); ++i)
    if (x0(i) <= 0) throw std::invalid_argument("x0 must be strictly positive");
  StoichClass cls;
  cls.x0 = x0;
  cls.stoichiometry = stoichiometric_matrix<Rational>(net);
  cls.conservation = orthogonal_complement_rows(cls.stoichiometry);
  cls.dim = static_cast<int>(net.num_species() - cls.conservation.rows());
  return cls;
}

StoichClass make_stoich_class(const ReactionNetwork& net, const Eigen::VectorXd& x0) {
  return make_stoich_class(net, to_rational(x0));
}

std::string to_string(FaceKind kind) {
  switch (kind) {
    case FaceKind::Empty: return "empty";
    case FaceKind::Vertex: return "vertex";
    case FaceKind::Facet: return "facet";
    case FaceKind::Other: return "other";
    case FaceKind::Full: return "full";
  }
  return "?";
}

namespace {

LpProblem face_problem(const StoichClass& cls, const SpeciesSet& w) {
  const Eigen::Index n = cls.x0.size();
  LpProblem p = LpProblem::with_variables(n);
  const RationalVector totals = cls.totals();
  for (Eigen::Index r = 0; r < cls.conservation.rows(); ++r) p.add_equality(cls.conservation.row(r).transpose(), totals(r));
  p.fixed_zero.assign(w.begin(), w.end());
  return p;
}

}  // namespace

std::optional<Face> face_canonicalize(const StoichClass& cls, const SpeciesSet& w) {
  const Eigen::Index n = cls.x0.size();
  for (int i : w)
    if (i < 0 || i >= n) throw std::invalid_argument("species index out of range");

  LpProblem p = face_problem(cls, w);
  const LpResult base = lp_solve(p);
  if (base.status == LpStatus::Infeasible) return std::nullopt;

  Face face;
  face.canonical = w;
  RationalVector sum = RationalVector::Zero(n);
  int positive_witnesses = 0;
  // probe over (x, t): maximise t subject to t <= x_i, t <= 1; bounded even when P is not
  LpProblem probe = LpProblem::with_variables(n + 1);
  const RationalVector totals = cls.totals();
  for (Eigen::Index r = 0; r < cls.conservation.rows(); ++r) {
    RationalVector row = RationalVector::Zero(n + 1);
    row.head(n) = cls.conservation.row(r).transpose();
    probe.add_equality(row, totals(r));
  }
  probe.fixed_zero.assign(w.begin(), w.end());
  probe.objective(n) = 1;
  probe.upper.assign(static_cast<std::size_t>(n + 1), std::nullopt);
  probe.upper[static_cast<std::size_t>(n)] = Rational(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::binary_search(w.begin(), w.end(), static_cast<int>(i))) continue;
    LpProblem q = probe;
    RationalVector row = RationalVector::Zero(n + 1);
    row(n) = 1;
    row(i) = -1;
    q.add_inequality(row, Rational(0));
    const LpResult r = lp_solve(q);
    if (r.status != LpStatus::Optimal) throw std::logic_error("face probe must have an optimum");
    if (r.value == 0) {
      face.canonical.push_back(static_cast<int>(i));
    } else {
      sum += r.point.head(n);
      ++positive_witnesses;
    }
  }
  face.canonical = make_species_set(face.canonical);
  face.interior_point = positive_witnesses ? RationalVector(sum / Rational(positive_witnesses)) : base.point;

  RationalMatrix rows(static_cast<Eigen::Index>(face.canonical.size()), cls.stoichiometry.cols());
  for (std::size_t j = 0; j < face.canonical.size(); ++j)
    rows.row(static_cast<Eigen::Index>(j)) = cls.stoichiometry.row(face.canonical[j]);
  face.dim = cls.dim - static_cast<int>(exact_rank(rows));
  return face;
}

FaceKind face_kind(const std::optional<Face>& face, int dim_p) {
  if (!face) return FaceKind::Empty;
  if (face->canonical.empty()) return FaceKind::Full;
  if (dim_p >= 1 && face->dim == dim_p - 1) return FaceKind::Facet;
  if (face->dim == 0) return FaceKind::Vertex;
  return FaceKind::Other;
}

bool is_siphon(const ReactionNetwork& net, const SpeciesSet& w) {
  if (w.empty()) throw std::invalid_argument("is_siphon: W must be nonempty");
  for (int k = 0; k < net.num_reactions(); ++k)
    if (meets(net.product(k), w) && !meets(net.source(k), w)) return false;
  return true;
}

namespace {

enum class Mark : signed char { Unknown, In, Out };

class SiphonSearch {
 public:
  explicit SiphonSearch(const ReactionNetwork& net) : net_(net) {
    for (int k = 0; k < net.num_reactions(); ++k) {
      sources_.push_back(support(net.source(k)));
      products_.push_back(support(net.product(k)));
    }
  }

  std::vector<SpeciesSet> run() {
    std::vector<Mark> marks(static_cast<std::size_t>(net_.num_species()), Mark::Unknown);
    branch(marks);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Forces source species in where only one candidate remains. False on conflict.
  bool propagate(std::vector<Mark>& marks) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < sources_.size(); ++k) {
        const bool produces_in = std::any_of(products_[k].begin(), products_[k].end(),
                                             [&](int i) { return marks[static_cast<std::size_t>(i)] == Mark::In; });
        if (!produces_in) continue;
        int unknown = -1;
        int unknown_count = 0;
        bool satisfied = false;
        for (int i : sources_[k]) {
          if (marks[static_cast<std::size_t>(i)] == Mark::In) satisfied = true;
          if (marks[static_cast<std::size_t>(i)] == Mark::Unknown) {
            unknown = i;
            ++unknown_count;
          }
        }
        if (satisfied) continue;
        if (unknown_count == 0) return false;
        if (unknown_count == 1) {
          marks[static_cast<std::size_t>(unknown)] = Mark::In;
          changed = true;
        }
      }
    }
    return true;
  }

  void branch(std::vector<Mark> marks) {
    if (!propagate(marks)) return;
    const auto next = std::find(marks.begin(), marks.end(), Mark::Unknown);
    if (next == marks.end()) {
      SpeciesSet w;
      for (std::size_t i = 0; i < marks.size(); ++i)
        if (marks[i] == Mark::In) w.push_back(static_cast<int>(i));
      if (!w.empty()) found_.push_back(std::move(w));
      return;
    }
    *next = Mark::In;
    branch(marks);
    *next = Mark::Out;
    branch(std::move(marks));
  }

  const ReactionNetwork& net_;
  std::vector<std::vector<int>> sources_;
  std::vector<std::vector<int>> products_;
  std::vector<SpeciesSet> found_;
};

bool is_subset(const SpeciesSet& a, const SpeciesSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::vector<SpeciesSet> minimal_only(const std::vector<SpeciesSet>& all) {
  std::vector<SpeciesSet> out;
  for (const auto& w : all) {
    const bool minimal = std::none_of(all.begin(), all.end(), [&](const SpeciesSet& v) { return v != w && is_subset(v, w); });
    if (minimal) out.push_back(w);
  }
  return out;
}

}  // namespace

std::vector<SpeciesSet> enumerate_siphons(const ReactionNetwork& net, SiphonMode mode, int max_species) {
  if (net.num_species() > max_species)
    throw AnalysisError("siphon enumeration is capped at " + std::to_string(max_species) + " species, network has " +
                        std::to_string(net.num_species()));
  auto all = SiphonSearch(net).run();
  return mode == SiphonMode::All ? all : minimal_only(all);
}

std::vector<SiphonReport> classify_all(const ReactionNetwork& net, const StoichClass& cls, int max_species) {
  const auto all = enumerate_siphons(net, SiphonMode::All, max_species);
  const auto minimal = minimal_only(all);
  std::vector<SiphonReport> out;
  for (const auto& w : all) {
    SiphonReport r;
    r.w = w;
    r.is_minimal = std::find(minimal.begin(), minimal.end(), w) != minimal.end();
    r.face = face_canonicalize(cls, w);
    r.kind = face_kind(r.face, cls.dim);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace crn
