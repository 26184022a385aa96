#ifndef CARTIER_CONES_HPP
#define CARTIER_CONES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cartier/trees.hpp"
#include "cartier/vectors.hpp"

namespace cartier {

/// Largest g accepted by verify_duality unless the caller raises it.
inline constexpr int kDefaultDualityMaxUncolored = 8;

/// Minimal generators of the cone of the tree, sorted lexicographically.
/// A stub (no uncolored vertex) has no generators.
std::vector<RayVector> generators(const ColoredTree& tree);

/// Generators of the subtree rooted at v, embedded in the coordinates of the
/// whole tree.
std::vector<RayVector> subtree_generators(const ColoredTree& tree, int v);

/// Throws InvalidInput on a dimension mismatch.
std::int64_t pair(const WeightVector& w, const RayVector& v);

/// Product of (r_i + 1) over the principal subtrees; 1 for g = 1.
std::uint64_t ray_count(const ColoredTree& tree);

/// Exact test whether target is a nonnegative rational combination of the
/// columns of the given vectors (phase-one simplex over the rationals).
bool in_cone(const std::vector<Int64Vector>& rays, const Int64Vector& target);

struct DualityReport {
  struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
  };
  std::vector<Check> checks;
  bool ok() const;
};

/// Checks nonnegativity of every edge weight on every generator, minimality
/// of the generating set, full dimension, ⟨s, v⟩ = 1, and that generators
/// are distinct and primitive.  Throws InvalidInput when g exceeds max_g.
DualityReport verify_duality(const ColoredTree& tree, int max_g = kDefaultDualityMaxUncolored);

}  // namespace cartier

#endif  // CARTIER_CONES_HPP
