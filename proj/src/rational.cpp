#include "crn/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace crn {

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot convert non-finite value to a rational");
  return Rational(value);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

RationalVector to_rational(const Eigen::VectorXd& v) {
  RationalVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_rational(v(i));
  return out;
}

Eigen::VectorXd to_double(const RationalVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).convert_to<double>();
  return out;
}

Eigen::MatrixXd to_double(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
  return out;
}

RationalVector primitive_integer(const RationalVector& v) {
  Integer lcm_den = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) lcm_den = lcm(lcm_den, denominator(v(i)));
  Integer g = 0;
  std::vector<Integer> scaled(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    scaled[static_cast<std::size_t>(i)] = numerator(v(i)) * (lcm_den / denominator(v(i)));
    g = gcd(g, scaled[static_cast<std::size_t>(i)]);
  }
  RationalVector out = RationalVector::Zero(v.size());
  if (g == 0) return out;
  int sign = 0;
  for (const auto& s : scaled)
    if (s != 0) {
      sign = s > 0 ? 1 : -1;
      break;
    }
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(scaled[static_cast<std::size_t>(i)] / g * sign);
  return out;
}

RationalMatrix orthogonal_complement_rows(const RationalMatrix& m) {
  const RationalMatrix basis = nullspace_basis(RationalMatrix(m.transpose()));
  RationalMatrix rows(basis.cols(), m.rows());
  for (Eigen::Index k = 0; k < basis.cols(); ++k)
    rows.row(k) = primitive_integer(RationalVector(basis.col(k))).transpose();
  return rows;
}

}  // namespace crn
