#include <gtest/gtest.h>

#include <random>

#include "cartier/intlinalg.hpp"

using namespace cartier;
using namespace cartier::linalg;

namespace {

IntMatrix big(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  const auto s = smith_normal_form(u, Transform::Skip);
  if (static_cast<Eigen::Index>(s.invariant_factors.size()) != u.rows()) return false;
  for (const auto& d : s.invariant_factors)
    if (d != 1) return false;
  return true;
}

/// Checks the Hermite shape: echelon, positive pivots, reduced above pivots.
bool is_hermite(const IntMatrix& h, const std::vector<Eigen::Index>& pivots) {
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const auto c = pivots[r];
    if (h(r, c) <= 0) return false;
    for (Eigen::Index j = 0; j < c; ++j)
      if (h(r, j) != 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    if (r > 0 && pivots[r] <= pivots[r - 1]) return false;
  }
  for (Eigen::Index r = static_cast<Eigen::Index>(pivots.size()); r < h.rows(); ++r)
    if (!h.row(r).isZero()) return false;
  return true;
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  const IntMatrix id = IntMatrix::Identity(4, 4);
  const auto f = hermite_normal_form(id, Transform::Compute);
  EXPECT_EQ(f.H, id);
  EXPECT_EQ(f.U, id);
}

TEST(Hermite, TwoByTwoHandExample) {
  const IntMatrix m = big({{2, 4}, {1, 3}});
  const auto f = hermite_normal_form(m, Transform::Compute);
  EXPECT_EQ(f.H, big({{1, 1}, {0, 2}}));
  EXPECT_EQ(f.U * m, f.H);
  EXPECT_TRUE(is_unimodular(f.U));
}

TEST(Hermite, ZeroMatrix) {
  const IntMatrix z = IntMatrix::Zero(3, 2);
  const auto f = hermite_normal_form(z, Transform::Compute);
  EXPECT_EQ(f.H, z);
  EXPECT_EQ(f.U, IntMatrix::Identity(3, 3));
  EXPECT_EQ(f.rank(), 0);
}

TEST(Hermite, RandomMatricesSatisfyContract) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    const int rows = 1 + iter % 6, cols = 1 + (iter / 6) % 6;
    const IntMatrix m = random_matrix(rng, rows, cols, 9);
    const auto f = hermite_normal_form(m, Transform::Compute);
    ASSERT_EQ(f.U * m, f.H);
    ASSERT_TRUE(is_unimodular(f.U));
    ASSERT_TRUE(is_hermite(f.H, f.pivots));
    // Canonical: row-equivalent input gives identical output.
    const IntMatrix mixed = f.U * m;
    ASSERT_EQ(hermite_normal_form(mixed, Transform::Skip).H, f.H);
  }
}

TEST(Hermite, MachineIntegersAgreeWithBigIntegers) {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    const IntMatrix m = random_matrix(rng, 4, 5, 5);
    Matrix<long long> small = Matrix<long long>::Zero(4, 5);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 5; ++j) small(i, j) = m(i, j).convert_to<long long>();
    ASSERT_EQ(to_big(hermite_normal_form(small).H), hermite_normal_form(m).H);
  }
}

TEST(Kernel, SingleRelation) {
  const IntMatrix m = big({{1, 1, -1}});
  const IntMatrix k = kernel_basis(m);
  ASSERT_EQ(k.rows(), 2);
  EXPECT_TRUE((m * k.transpose()).isZero());
  EXPECT_TRUE(same_lattice(k, big({{1, -1, 0}, {1, 0, 1}})));
}

TEST(Kernel, InvertibleMatrixHasNone) {
  EXPECT_EQ(kernel_basis(big({{2, 1}, {1, 1}})).rows(), 0);
}

TEST(Kernel, RandomKernelsAreSaturatedAndComplete) {
  std::mt19937 rng(3);
  for (int iter = 0; iter < 150; ++iter) {
    const int rows = 1 + iter % 4, cols = 2 + iter % 5;
    IntMatrix m = random_matrix(rng, rows, cols, 4);
    if (iter % 3 == 0) m.row(0) = m.row(0) * BigInt(3);
    const IntMatrix k = kernel_basis(m);
    ASSERT_TRUE((m * k.transpose()).isZero());
    ASSERT_EQ(k.rows(), cols - rank(m));
    if (k.rows() > 0) {
      for (const auto& d : smith_normal_form(k, Transform::Skip).invariant_factors) ASSERT_EQ(d, 1);
      ASSERT_EQ(lattice_basis(k), k);
    }
  }
}

TEST(Solve, ScalarCases) {
  EXPECT_EQ((*solve_integer(big({{2}}), IntVector::Constant(1, BigInt(4))))(0), 2);
  EXPECT_FALSE(solve_integer(big({{2}}), IntVector::Constant(1, BigInt(3))).has_value());
}

TEST(Solve, DimensionMismatchThrows) {
  EXPECT_THROW(solve_integer(big({{1, 2}}), IntVector::Zero(2)), std::invalid_argument);
}

TEST(Solve, AgreesWithBruteForceOnSmallSystems) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    const IntMatrix a = random_matrix(rng, 2, 2, 3);
    IntVector b(2);
    b << BigInt(static_cast<int>(rng() % 7) - 3), BigInt(static_cast<int>(rng() % 7) - 3);
    const auto x = solve_integer(a, b);
    if (x) ASSERT_EQ(a * *x, b);
    // Exhaustive search in a box; a solution in the box implies solvable.
    bool found = false;
    for (int x0 = -12; x0 <= 12 && !found; ++x0)
      for (int x1 = -12; x1 <= 12 && !found; ++x1) {
        IntVector y(2);
        y << BigInt(x0), BigInt(x1);
        found = a * y == b;
      }
    if (found) ASSERT_TRUE(x.has_value());
  }
}

TEST(Smith, DiagonalGcdLcm) {
  const auto s = smith_normal_form(big({{2, 0}, {0, 3}}), Transform::Compute);
  ASSERT_EQ(s.invariant_factors.size(), 2u);
  EXPECT_EQ(s.invariant_factors[0], 1);
  EXPECT_EQ(s.invariant_factors[1], 6);
}

TEST(Smith, RandomTransformsAreExact) {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 150; ++iter) {
    const IntMatrix m = random_matrix(rng, 1 + iter % 5, 1 + (iter / 5) % 5, 6);
    const auto s = smith_normal_form(m, Transform::Compute);
    ASSERT_EQ(s.U * m * s.V, s.S);
    ASSERT_TRUE(is_unimodular(s.U));
    ASSERT_TRUE(is_unimodular(s.V));
    for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
      ASSERT_GT(s.invariant_factors[i], 0);
      if (i + 1 < s.invariant_factors.size()) ASSERT_EQ(s.invariant_factors[i + 1] % s.invariant_factors[i], 0);
    }
    ASSERT_EQ(static_cast<Eigen::Index>(s.invariant_factors.size()), rank(m));
  }
}

TEST(Lattice, SaturationOfScaledVector) {
  const IntMatrix sat = saturation(big({{2, 4, 6}}));
  EXPECT_EQ(sat, big({{1, 2, 3}}));
  EXPECT_TRUE(lattice_contains(sat, IntVector(big({{1, 2, 3}}).row(0).transpose())));
  EXPECT_FALSE(lattice_contains(big({{2, 4, 6}}), IntVector(big({{1, 2, 3}}).row(0).transpose())));
}

TEST(Limits, OversizedInputIsRefused) {
  EXPECT_THROW(check_size(100'000, 100'000), std::length_error);
}
