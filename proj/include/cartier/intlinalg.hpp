#ifndef CARTIER_INTLINALG_HPP
#define CARTIER_INTLINALG_HPP

// Exact integer linear algebra over Eigen dense matrices: Hermite and Smith
// normal forms, integer kernels, integral solvability and lattice tests.
//
// Every routine is templated on the scalar so small cases can run on
// std::int64_t while production paths use cartier::BigInt.  All routines are
// deterministic: pivots are chosen by smallest absolute value, ties broken by
// the lowest index.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cartier/integer.hpp"

namespace cartier::linalg {

/// Inputs with more entries than this are refused.
inline constexpr std::size_t kMaxEntries = 200'000'000;

inline void check_size(Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) > kMaxEntries)
    throw std::length_error("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the configured entry limit");
}

template <typename Scalar>
using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Transform { Skip, Compute };

/// Row-style Hermite normal form: H is upper echelon, pivots are positive and
/// entries above each pivot lie in [0, pivot).  When requested, U is
/// unimodular with U * M == H.
template <typename Scalar>
struct HermiteForm {
  Matrix<Scalar> H;
  Matrix<Scalar> U;
  std::vector<Eigen::Index> pivots;  // pivot column of row i, i < rank()

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
  /// The nonzero rows of H: the canonical basis of the row lattice.
  Matrix<Scalar> basis() const { return H.topRows(rank()); }
};

namespace detail {

// m.row(target) -= q * m.row(source), touching only the listed columns.
template <typename Scalar>
void row_axpy(RowMajorMatrix<Scalar>& m, Eigen::Index target, const Scalar& q,
              Eigen::Index source, const std::vector<Eigen::Index>& support) {
  for (Eigen::Index j : support) m(target, j) -= q * m(source, j);
}

template <typename Scalar>
std::vector<Eigen::Index> row_support(const RowMajorMatrix<Scalar>& m, Eigen::Index row,
                                      Eigen::Index from_col) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index j = from_col; j < m.cols(); ++j)
    if (m(row, j) != 0) support.push_back(j);
  return support;
}

template <typename Scalar>
void swap_rows(RowMajorMatrix<Scalar>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}

}  // namespace detail

template <typename Derived>
HermiteForm<typename Derived::Scalar> hermite_normal_form(const Eigen::MatrixBase<Derived>& m,
                                                          Transform transform = Transform::Compute) {
  using Scalar = typename Derived::Scalar;
  check_size(m.rows(), m.cols());
  const bool track = transform == Transform::Compute;
  RowMajorMatrix<Scalar> h = m;
  RowMajorMatrix<Scalar> u;
  if (track) u = RowMajorMatrix<Scalar>::Identity(m.rows(), m.rows());
  struct Support {
    std::vector<Eigen::Index> h, u;
  };
  auto support_of = [&](Eigen::Index row, Eigen::Index from_col) {
    Support s{detail::row_support(h, row, from_col), {}};
    if (track) s.u = detail::row_support(u, row, 0);
    return s;
  };
  auto apply = [&](Eigen::Index target, const Scalar& q, Eigen::Index source, const Support& s) {
    detail::row_axpy(h, target, q, source, s.h);
    if (track) detail::row_axpy(u, target, q, source, s.u);
  };

  HermiteForm<Scalar> out;
  const Eigen::Index rows = h.rows();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < h.cols() && r < rows; ++c) {
    bool has_pivot = false;
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best < 0 || abs_value(h(i, c)) < abs_value(h(best, c))) best = i;
      }
      if (best < 0) break;
      has_pivot = true;
      detail::swap_rows(h, r, best);
      if (track) detail::swap_rows(u, r, best);
      const auto support = support_of(r, c);
      bool clean = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        const Scalar q = h(i, c) / h(r, c);
        apply(i, q, r, support);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!has_pivot) continue;
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      if (track) u.row(r) = -u.row(r);
    }
    const auto support = support_of(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (h(i, c) == 0) continue;
      const Scalar q = floor_div(h(i, c), h(r, c));
      if (q != 0) apply(i, q, r, support);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.H = h;
  if (track) out.U = u;
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return hermite_normal_form(m, Transform::Skip).rank();
}

/// Canonical (Hermite) basis of the lattice generated by the rows of m.
template <typename Derived>
Matrix<typename Derived::Scalar> lattice_basis(const Eigen::MatrixBase<Derived>& m) {
  return hermite_normal_form(m, Transform::Skip).basis();
}

/// Basis of the integer kernel {x : m x = 0}, one vector per row, in Hermite
/// normal form.  The result always generates a saturated lattice.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix<Scalar>(0, 0);

  // Fast route: eliminate with the columns reversed.  When every pivot is 1
  // the free-variable basis is integral and, read in the original column
  // order, already in Hermite normal form.
  Matrix<Scalar> reversed = m.rowwise().reverse();
  const auto rev = hermite_normal_form(reversed, Transform::Skip);
  bool unit_pivots = true;
  for (Eigen::Index k = 0; k < rev.rank(); ++k) unit_pivots = unit_pivots && rev.H(k, rev.pivots[k]) == 1;
  if (unit_pivots) {
    std::vector<bool> is_pivot(n, false);
    for (auto c : rev.pivots) is_pivot[c] = true;
    const Eigen::Index dim = n - rev.rank();
    Matrix<Scalar> basis = Matrix<Scalar>::Zero(dim, n);
    Eigen::Index row = 0;
    for (Eigen::Index f = n - 1; f >= 0; --f) {  // descending f: ascending leading column
      if (is_pivot[f]) continue;
      basis(row, n - 1 - f) = 1;
      for (Eigen::Index i = 0; i < rev.rank(); ++i)
        if (rev.H(i, f) != 0) basis(row, n - 1 - rev.pivots[i]) = -rev.H(i, f);
      ++row;
    }
    return basis;
  }

  // General route: rows of U annihilated by m^T span the kernel.
  const auto hf = hermite_normal_form(m.transpose(), Transform::Compute);
  Matrix<Scalar> kernel_rows = hf.U.bottomRows(n - hf.rank());
  return lattice_basis(kernel_rows);
}

/// Solver for A x = b over the integers, reusable across right-hand sides.
///
/// Precomputes U * A^T = H; then A U^T = H^T is lower echelon and solved by
/// forward substitution.  Free coordinates are set to zero, which makes the
/// returned solution canonical.
template <typename Scalar>
class IntegerSystem {
 public:
  template <typename Derived>
  explicit IntegerSystem(const Eigen::MatrixBase<Derived>& a)
      : a_(a), form_(hermite_normal_form(a.transpose(), Transform::Compute)) {}

  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }
  Eigen::Index rank() const { return form_.rank(); }
  const Matrix<Scalar>& matrix() const { return a_; }

  template <typename Derived>
  std::optional<Vector<Scalar>> solve(const Eigen::MatrixBase<Derived>& b) const {
    if (b.size() != a_.rows())
      throw std::invalid_argument("right-hand side has " + std::to_string(b.size()) +
                                  " entries, system has " + std::to_string(a_.rows()) + " rows");
    const auto& h = form_.H;
    Vector<Scalar> y = Vector<Scalar>::Zero(a_.cols());
    for (Eigen::Index k = 0; k < form_.rank(); ++k) {
      const Eigen::Index p = form_.pivots[k];
      Scalar residual = b(p);
      for (Eigen::Index i = 0; i < k; ++i)
        if (h(i, p) != 0) residual -= h(i, p) * y(i);
      if (residual % h(k, p) != 0) return std::nullopt;
      y(k) = residual / h(k, p);
    }
    Vector<Scalar> x = form_.U.transpose() * y;
    if (a_ * x != b) return std::nullopt;
    return x;
  }

 private:
  Matrix<Scalar> a_;
  HermiteForm<Scalar> form_;
};

template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_integer(const Eigen::MatrixBase<DerivedA>& a,
                                                               const Eigen::MatrixBase<DerivedB>& b) {
  return IntegerSystem<typename DerivedA::Scalar>(a).solve(b);
}

/// True when v lies in the lattice generated by the rows of generators.
template <typename DerivedG, typename DerivedV>
bool lattice_contains(const Eigen::MatrixBase<DerivedG>& generators,
                      const Eigen::MatrixBase<DerivedV>& v) {
  if (generators.rows() == 0) return v.isZero();
  return solve_integer(generators.transpose(), v).has_value();
}

/// True when the row lattices of a and b coincide.
template <typename DerivedA, typename DerivedB>
bool same_lattice(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("lattices live in different ambient ranks");
  const auto ha = lattice_basis(a);
  const auto hb = lattice_basis(b);
  return ha.rows() == hb.rows() && ha == hb;
}

/// Rational span of the rows intersected with Z^n, as a Hermite basis.
template <typename Derived>
Matrix<typename Derived::Scalar> saturation(const Eigen::MatrixBase<Derived>& generators) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> orthogonal = kernel_basis(generators);
  if (orthogonal.rows() == 0)
    return Matrix<Scalar>::Identity(generators.cols(), generators.cols());
  return kernel_basis(orthogonal);
}

/// U * M * V == S with S diagonal, d_1 | d_2 | ... and every d_i > 0.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> S;
  Matrix<Scalar> U;
  Matrix<Scalar> V;
  std::vector<Scalar> invariant_factors;  // nonzero diagonal entries, in order
};

template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& m,
                                                      Transform transform = Transform::Compute) {
  using Scalar = typename Derived::Scalar;
  check_size(m.rows(), m.cols());
  const bool track = transform == Transform::Compute;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Matrix<Scalar> a = m;
  Matrix<Scalar> u, v;
  if (track) {
    u = Matrix<Scalar>::Identity(rows, rows);
    v = Matrix<Scalar>::Identity(cols, cols);
  }
  auto row_op = [&](Eigen::Index target, const Scalar& q, Eigen::Index source) {
    for (Eigen::Index j = 0; j < cols; ++j)
      if (a(source, j) != 0) a(target, j) -= q * a(source, j);
    if (track)
      for (Eigen::Index j = 0; j < rows; ++j)
        if (u(source, j) != 0) u(target, j) -= q * u(source, j);
  };
  auto col_op = [&](Eigen::Index target, const Scalar& q, Eigen::Index source) {
    for (Eigen::Index i = 0; i < rows; ++i)
      if (a(i, source) != 0) a(i, target) -= q * a(i, source);
    if (track)
      for (Eigen::Index i = 0; i < cols; ++i)
        if (v(i, source) != 0) v(i, target) -= q * v(i, source);
  };
  auto swap_rows = [&](Eigen::Index x, Eigen::Index y) {
    if (x == y) return;
    a.row(x).swap(a.row(y));
    if (track) u.row(x).swap(u.row(y));
  };
  auto swap_cols = [&](Eigen::Index x, Eigen::Index y) {
    if (x == y) return;
    a.col(x).swap(a.col(y));
    if (track) v.col(x).swap(v.col(y));
  };

  SmithForm<Scalar> out;
  const Eigen::Index diag = std::min(rows, cols);
  for (Eigen::Index t = 0; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index j = t; j < cols; ++j)
      for (Eigen::Index i = t; i < rows; ++i)
        if (a(i, j) != 0 && (bi < 0 || abs_value(a(i, j)) < abs_value(a(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < rows; ++i)
        if (a(i, t) != 0) {
          row_op(i, a(i, t) / a(t, t), t);
          dirty = dirty || a(i, t) != 0;
        }
      for (Eigen::Index j = t + 1; j < cols; ++j)
        if (a(t, j) != 0) {
          col_op(j, a(t, j) / a(t, t), t);
          dirty = dirty || a(t, j) != 0;
        }
      if (dirty) {
        // A smaller remainder survived in row or column t; promote it.
        Eigen::Index bi2 = t, bj2 = t;
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs_value(a(i, t)) < abs_value(a(bi2, bj2))) {
            bi2 = i;
            bj2 = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs_value(a(t, j)) < abs_value(a(bi2, bj2))) {
            bi2 = t;
            bj2 = j;
          }
        swap_rows(t, bi2);
        swap_cols(t, bj2);
        continue;
      }
      // Divisibility: every trailing entry must be a multiple of the pivot.
      Eigen::Index offender = -1;
      for (Eigen::Index i = t + 1; i < rows && offender < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offender = i;
            break;
          }
      if (offender < 0) break;
      row_op(t, Scalar(-1), offender);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      if (track) u.row(t) = -u.row(t);
    }
    out.invariant_factors.push_back(a(t, t));
  }
  out.S = a;
  if (track) {
    out.U = u;
    out.V = v;
  }
  return out;
}

}  // namespace cartier::linalg

#endif  // CARTIER_INTLINALG_HPP
