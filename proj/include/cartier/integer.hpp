#ifndef CARTIER_INTEGER_HPP
#define CARTIER_INTEGER_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace cartier {

/// Arbitrary-precision integer used for every lattice computation.
/// Expression templates are disabled so the type composes with Eigen.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

/// Floor division for any integral scalar (C++ `/` truncates toward zero).
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

template <typename Scalar>
Scalar abs_value(const Scalar& a) {
  return a < 0 ? Scalar(-a) : a;
}

inline std::string to_string(const BigInt& value) { return value.str(); }

/// Narrowing conversion that refuses to lose information.
std::int64_t to_int64(const BigInt& value);

/// Converts a matrix of any integral scalar into an exact BigInt matrix.
template <typename Derived>
IntMatrix to_big(const Eigen::MatrixBase<Derived>& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = BigInt(m(i, j));
  return out;
}

}  // namespace cartier

#endif  // CARTIER_INTEGER_HPP
