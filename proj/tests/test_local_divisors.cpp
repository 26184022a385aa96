#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cartier/cones.hpp"
#include "cartier/errors.hpp"
#include "cartier/local_divisors.hpp"
#include "cartier/weights.hpp"

using namespace cartier;

namespace {

ColoredTree two_cherries() { return ColoredTree::from_newick("((1,2),(3,4))"); }

EdgeSubset Y(std::string_view key) { return parse_edge_subset(key); }

/// Complete = meets every path at least once; keep the inclusion-minimal ones.
std::vector<EdgeSubset> brute_force_mcs(const ColoredTree& t) {
  const int e = t.num_edges();
  std::vector<std::uint32_t> complete;
  for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
    bool ok = true;
    for (int label : t.labels().elements()) {
      bool hit = false;
      for (EdgeId x : t.path_from_root(t.colored_node(label))) hit = hit || ((mask >> x) & 1u);
      ok = ok && hit;
    }
    if (ok) complete.push_back(mask);
  }
  std::vector<EdgeSubset> out;
  for (auto m : complete) {
    bool minimal = true;
    for (auto other : complete) minimal = minimal && !(other != m && (other & m) == other);
    if (!minimal) continue;
    EdgeSubset y;
    for (int x = 0; x < e; ++x)
      if ((m >> x) & 1u) y.push_back(x);
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rational solve of ⟨u, v_Y⟩ = a_Y by Gaussian elimination; returns whether
/// an integral solution exists.
bool rational_oracle(const std::vector<RayVector>& rays, const std::vector<std::int64_t>& a) {
  const int rows = static_cast<int>(rays.size()), g = static_cast<int>(rays[0].size());
  std::vector<std::vector<BigRational>> m(rows, std::vector<BigRational>(g + 1));
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < g; ++k) m[i][k] = rays[i](k);
    m[i][g] = a[i];
  }
  int r = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < g && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const BigRational f = m[i][c] / m[r][c];
      for (int k = c; k <= g; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (m[i][g] != 0) return false;
  // Rays span the whole space, so the solution is unique.
  for (int i = 0; i < r; ++i) {
    const BigRational u = m[i][g] / m[i][pivot_col[i]];
    if (denominator(u) != 1) return false;
  }
  return true;
}

}  // namespace

TEST(MinimallyComplete, TwoCherries) {
  const auto got = minimally_complete_subsets(two_cherries());
  const std::vector<EdgeSubset> expected{Y("1,2"), Y("1,5,6"), Y("2,3,4"), Y("3,4,5,6")};
  EXPECT_EQ(got, expected);
}

TEST(MinimallyComplete, Star) {
  EXPECT_EQ(minimally_complete_subsets(ColoredTree::from_newick("(1,2,3)")),
            (std::vector<EdgeSubset>{Y("1,2,3")}));
}

TEST(MinimallyComplete, MatchesBruteForceAndRayCount) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      const auto got = minimally_complete_subsets(t);
      ASSERT_EQ(got, brute_force_mcs(t)) << t.newick();
      ASSERT_EQ(got.size(), ray_count(t));
      for (const auto& y : got) ASSERT_TRUE(is_minimally_complete(t, y));
    }
  EXPECT_FALSE(is_minimally_complete(two_cherries(), Y("1")));
  EXPECT_FALSE(is_minimally_complete(two_cherries(), Y("1,2,3")));
}

TEST(Rays, TwoCherries) {
  const auto t = two_cherries();
  RayVector e3(3), mixed(3);
  e3 << 0, 0, 1;
  mixed << 1, 1, -1;
  EXPECT_EQ(ray_of_subset(t, Y("1,2")), e3);
  EXPECT_EQ(ray_of_subset(t, Y("3,4,5,6")), mixed);
  EXPECT_THROW(ray_of_subset(t, Y("1")), InvalidInput);
}

TEST(Rays, BijectionOntoGenerators) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      std::set<std::vector<std::int64_t>> rays, gens;
      for (const auto& y : minimally_complete_subsets(t)) {
        const auto v = ray_of_subset(t, y);
        rays.emplace(v.data(), v.data() + v.size());
      }
      for (const auto& v : generators(t)) gens.emplace(v.data(), v.data() + v.size());
      ASSERT_EQ(rays, gens) << t.newick();
      ASSERT_EQ(rays.size(), minimally_complete_subsets(t).size());
    }
}

TEST(Dictionary, TwoCherries) {
  const auto t = two_cherries();
  EXPECT_EQ(partition_of_subset(t, Y("1,2")), Partition::parse("1,2|3,4"));
  EXPECT_EQ(partition_of_subset(t, Y("3,4,5,6")), Partition::singletons(4));
  EXPECT_EQ(subset_of_partition(t, Partition::parse("1,2|3,4")), Y("1,2"));
  EXPECT_EQ(subset_of_partition(t, Partition::singletons(4)), Y("3,4,5,6"));
  EXPECT_THROW(subset_of_partition(t, Partition::parse("1,3|2,4")), InvalidInput);
}

TEST(Dictionary, RoundTripAndCompatibility) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      std::set<std::string> from_subsets;
      for (const auto& y : minimally_complete_subsets(t)) {
        const auto p = partition_of_subset(t, y);
        ASSERT_EQ(subset_of_partition(t, p), y);
        from_subsets.insert(p.key());
      }
      std::set<std::string> compatible;
      for (const auto& p : set_partitions(Subset::full(n)))
        if (p.block_count() >= 2 && is_compatible(p, t)) compatible.insert(p.key());
      ASSERT_EQ(from_subsets, compatible) << t.newick();
    }
}

TEST(CartierGenerators, TwoCherriesTriple) {
  const auto gens = local_cartier_generators(two_cherries());
  ASSERT_EQ(gens.size(), 3u);
  // Coordinate order: the {1,2} vertex, the {3,4} vertex, then the principal vertex.
  EXPECT_EQ(gens[0], (LocalDivisorVector{{Y("2,3,4"), 1}, {Y("3,4,5,6"), 1}}));
  EXPECT_EQ(gens[1], (LocalDivisorVector{{Y("1,5,6"), 1}, {Y("3,4,5,6"), 1}}));
  EXPECT_EQ(gens[2], (LocalDivisorVector{{Y("1,2"), 1}, {Y("1,5,6"), 1}, {Y("2,3,4"), 1}, {Y("3,4,5,6"), 1}}));
}

TEST(CartierGenerators, StarHasOne) {
  const auto t = ColoredTree::from_newick("(1,2,3)");
  const auto gens = local_cartier_generators(t);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], (LocalDivisorVector{{Y("1,2,3"), 1}}));
}

TEST(CartierGenerators, SubtreeWeightIsWitness) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      const LocalModel model(t);
      const auto gens = local_cartier_generators(t);
      IntMatrix stacked(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(model.subsets().size()));
      for (int k = 0; k < t.num_uncolored(); ++k) {
        const auto decision = model.decide(gens[k]);
        ASSERT_TRUE(decision.cartier);
        ASSERT_EQ(*decision.witness, subtree_weight(t, t.node_of_coordinate(k)));
        stacked.row(k) = model.dense(gens[k]).transpose();
      }
      ASSERT_EQ(linalg::rank(stacked), t.num_uncolored());
    }
}

TEST(LocalCartier, TwoCherriesCondition) {
  // Order of subsets: {1,2}, {1,5,6}, {2,3,4}, {3,4,5,6}.
  const LocalModel model(two_cherries());
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          IntVector v(4);
          v << a, b, c, d;
          EXPECT_EQ(model.decide(v).cartier, a + d == b + c);
        }
  EXPECT_EQ(model.relations().rows(), 1);
}

TEST(LocalCartier, SingleDivisorIsNotCartier) {
  const auto decision = is_cartier_local(two_cherries(), {{Y("1,2"), 1}});
  EXPECT_FALSE(decision.cartier);
  ASSERT_TRUE(decision.violated_relation.has_value());
  EXPECT_FALSE(decision.witness.has_value());
}

TEST(LocalCartier, RejectsUnknownKey) {
  EXPECT_THROW(is_cartier_local(two_cherries(), {{Y("1,3"), 1}}), InvalidInput);
}

TEST(LocalCartier, AgreesWithRationalOracle) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      const LocalModel model(t);
      const auto count = model.subsets().size();
      for (int iter = 0; iter < 20; ++iter) {
        std::vector<std::int64_t> a(count);
        IntVector v(static_cast<Eigen::Index>(count));
        for (std::size_t i = 0; i < count; ++i) v(i) = a[i] = coeff(rng);
        // Bias half the samples toward Cartier vectors.
        if (iter % 2 == 0) {
          WeightVector u(t.num_uncolored());
          for (int k = 0; k < t.num_uncolored(); ++k) u(k) = coeff(rng);
          for (std::size_t i = 0; i < count; ++i) v(i) = a[i] = pair(u, model.rays()[i]);
        }
        const bool orth = model.orthogonal_to_relations(v);
        ASSERT_EQ(orth, model.solve_witness(v).has_value());
        ASSERT_EQ(orth, rational_oracle(model.rays(), a)) << t.newick();
      }
    }
}

TEST(LocalCartier, IntegerCoordinates) {
  std::mt19937 rng(29);
  for (const auto& t : enumerate_trees(5)) {
    const auto gens = local_cartier_generators(t);
    std::vector<BigInt> c(gens.size());
    LocalDivisorVector a;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      c[k] = static_cast<int>(rng() % 7) - 3;
      for (const auto& [y, v] : gens[k]) a[y] += c[k].convert_to<std::int64_t>() * v;
    }
    ASSERT_EQ(cartier_coordinates(t, a), c);
  }
  EXPECT_THROW(cartier_coordinates(two_cherries(), {{Y("1,2"), 1}}), NotCartier);
}
