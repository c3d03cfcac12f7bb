#pragma once

// Exact rational scalars and dense linear algebra over them.
//
// Everything here is templated on the scalar so the same elimination code
// runs over Rational (for polyhedral decisions) and over double (tests).

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace crn {

using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

/// Exact value of a finite double.
Rational to_rational(double value);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

RationalVector to_rational(const Eigen::VectorXd& v);
Eigen::VectorXd to_double(const RationalVector& v);
Eigen::MatrixXd to_double(const RationalMatrix& m);

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;             ///< reduced row echelon form
  std::vector<Eigen::Index> pivots;    ///< pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Exact when Scalar is an exact field.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{m, {}};
  auto& a = out.reduced;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Scalar inv = Scalar(1) / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == Scalar(0)) continue;
      const Scalar f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(row_reduce(m).pivots.size());
}

/// Basis of the right nullspace, one basis vector per column.
template <typename Derived>
MatrixX<typename Derived::Scalar> nullspace_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_reduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(cols, cols - static_cast<Eigen::Index>(ech.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], k) = -ech.reduced(static_cast<Eigen::Index>(r), f);
    ++k;
  }
  return basis;
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// (gcd of entries 1, first nonzero entry positive). Zero stays zero.
RationalVector primitive_integer(const RationalVector& v);

/// Rows span the left nullspace of `m`'s columns, i.e. the orthogonal
/// complement of the column span. Rows are primitive integer vectors.
RationalMatrix orthogonal_complement_rows(const RationalMatrix& m);

}  // namespace crn
