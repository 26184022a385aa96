#ifndef CARTIER_VECTORS_HPP
#define CARTIER_VECTORS_HPP

#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace cartier {

using Int64Vector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// An integer vector of length g tagged with the lattice it lives in, so that
/// dual and primal coordinates cannot be mixed up silently.
template <typename Tag>
class LatticeVector : public Int64Vector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(Eigen::Index size) : Int64Vector(Int64Vector::Zero(size)) {}

  template <typename Other>
  LatticeVector(const Eigen::MatrixBase<Other>& other) : Int64Vector(other) {}

  template <typename Other>
  LatticeVector& operator=(const Eigen::MatrixBase<Other>& other) {
    Int64Vector::operator=(other);
    return *this;
  }

  static LatticeVector unit(Eigen::Index size, Eigen::Index k) {
    LatticeVector v(size);
    v(k) = 1;
    return v;
  }
};

struct WeightTag {};
struct RayTag {};

/// Coordinates in the dual basis e_k^* (edge weights, s, s_k).
using WeightVector = LatticeVector<WeightTag>;
/// Coordinates in the basis e_k (cone generators, rays v_Y).
using RayVector = LatticeVector<RayTag>;

/// Renders "e1+e2-e3" style text with 1-based indices; "0" for the zero vector.
std::string format_vector(const Int64Vector& v, const std::string& symbol = "e");

}  // namespace cartier

#endif  // CARTIER_VECTORS_HPP
