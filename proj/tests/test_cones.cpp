#include <gtest/gtest.h>

#include <set>

#include "cartier/cones.hpp"
#include "cartier/errors.hpp"
#include "cartier/weights.hpp"

using namespace cartier;

namespace {

ColoredTree two_cherries() { return ColoredTree::from_newick("((1,2),(3,4))"); }

RayVector r(std::initializer_list<std::int64_t> c) {
  RayVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (auto x : c) v(i++) = x;
  return v;
}

std::set<std::vector<std::int64_t>> as_set(const std::vector<RayVector>& vs) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& v : vs) out.emplace(v.data(), v.data() + v.size());
  return out;
}

/// Product formula over principal subtrees, computed from the subtrees
/// themselves rather than from the tree recursion.
std::uint64_t product_formula(const ColoredTree& t) {
  if (t.num_uncolored() == 0) return 0;
  std::uint64_t r = 1;
  for (const auto& sub : principal_subtrees(t)) r *= product_formula(sub) + 1;
  return r;
}

}  // namespace

TEST(Generators, TwoCherries) {
  const auto gens = generators(two_cherries());
  EXPECT_EQ(as_set(gens), as_set({r({1, 0, 0}), r({0, 1, 0}), r({0, 0, 1}), r({1, 1, -1})}));
  EXPECT_TRUE(std::is_sorted(gens.begin(), gens.end(), [](const RayVector& a, const RayVector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }));
}

TEST(Generators, Star) {
  const auto gens = generators(ColoredTree::from_newick("(1,2,3)"));
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], r({1}));
}

TEST(Generators, DeepTreeWithTwoRaysPerBranch) {
  // Each principal subtree is a two-level tree with r_i = 2.
  const auto t = ColoredTree::from_newick("(((1,2),3),((4,5),6))");
  EXPECT_EQ(generators(t).size(), 9u);
  EXPECT_EQ(ray_count(t), 9u);
}

TEST(Pairing, Examples) {
  const auto s = total_weight(two_cherries());
  for (const auto& v : generators(two_cherries())) EXPECT_EQ(pair(s, v), 1);
  EXPECT_EQ(pair(label_weights(two_cherries())[0], r({1, 0, 0})), 0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(pair(WeightVector::unit(4, k), RayVector::unit(4, k)), 1);
  EXPECT_THROW(pair(WeightVector(2), RayVector(3)), InvalidInput);
}

TEST(RayCount, MatchesGeneratorsAndProductFormula) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_trees(n)) {
      const auto gens = generators(t);
      ASSERT_EQ(gens.size(), ray_count(t));
      ASSERT_EQ(ray_count(t), product_formula(t));
      ASSERT_EQ(as_set(gens).size(), gens.size());
      const auto s = total_weight(t);
      for (const auto& v : gens) ASSERT_EQ(pair(s, v), 1);
    }
}

TEST(InCone, SmallCases) {
  const std::vector<Int64Vector> rays{r({1, 0}), r({0, 1})};
  EXPECT_TRUE(in_cone(rays, r({2, 3})));
  EXPECT_FALSE(in_cone(rays, r({-1, 3})));
  EXPECT_TRUE(in_cone(rays, r({0, 0})));
  EXPECT_TRUE(in_cone({r({2, 1}), r({1, 2})}, r({1, 1})));
  EXPECT_FALSE(in_cone({r({2, 1}), r({1, 2})}, r({1, 0})));
  EXPECT_TRUE(in_cone({r({1, 1, 0}), r({0, -1, 1}), r({0, 0, -1})}, r({1, 0, 0})));
}

TEST(Duality, TwoCherriesAndStar) {
  EXPECT_TRUE(verify_duality(two_cherries()).ok());
  EXPECT_TRUE(verify_duality(ColoredTree::from_newick("(1,2)")).ok());
}

TEST(Duality, AllSmallTrees) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : enumerate_trees(n)) {
      const auto report = verify_duality(t);
      ASSERT_TRUE(report.ok()) << t.newick();
    }
}

TEST(Duality, DetectsRedundantGenerator) {
  // Adding the sum of two rays must be caught by the minimality check.
  const auto gens = generators(two_cherries());
  std::vector<Int64Vector> rays(gens.begin(), gens.end());
  EXPECT_TRUE(in_cone(rays, Int64Vector(gens[0] + gens[1])));
}

TEST(Duality, RespectsCap) {
  EXPECT_THROW(verify_duality(two_cherries(), 2), InvalidInput);
}
