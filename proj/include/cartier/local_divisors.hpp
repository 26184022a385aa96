#ifndef CARTIER_LOCAL_DIVISORS_HPP
#define CARTIER_LOCAL_DIVISORS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartier/integer.hpp"
#include "cartier/intlinalg.hpp"
#include "cartier/trees.hpp"
#include "cartier/vectors.hpp"

namespace cartier {

/// Sorted, duplicate-free set of edges.
using EdgeSubset = std::vector<EdgeId>;

/// Renders 1-based edge ids, e.g. "1,5,6".
std::string edge_subset_key(const EdgeSubset& y);
/// Inverse of edge_subset_key; throws InvalidInput on malformed keys.
EdgeSubset parse_edge_subset(std::string_view key);

/// Coefficient a_Y for each minimally complete subset Y; absent keys are 0.
using LocalDivisorVector = std::map<EdgeSubset, std::int64_t>;

/// Edge subsets meeting every path from the principal vertex to a colored
/// vertex exactly once, in lexicographic order of their edge lists.
std::vector<EdgeSubset> minimally_complete_subsets(const ColoredTree& tree);
bool is_minimally_complete(const ColoredTree& tree, const EdgeSubset& y);

/// The ray of the torus-invariant divisor D_Y.  Throws InvalidInput unless Y
/// is minimally complete.
RayVector ray_of_subset(const ColoredTree& tree, const EdgeSubset& y);

/// Cuts every edge of Y and collects the labels below each cut into a block.
Partition partition_of_subset(const ColoredTree& tree, const EdgeSubset& y);
/// For each block, the first edge shared by the paths from its colored
/// vertices to the principal vertex.  Throws InvalidInput when P is not
/// compatible with the tree or has no such edge set.
EdgeSubset subset_of_partition(const ColoredTree& tree, const Partition& partition);

/// D_k for every uncolored vertex, in coordinate order: the sum of D_Y over
/// the Y containing an edge below v_k.
std::vector<LocalDivisorVector> local_cartier_generators(const ColoredTree& tree);

struct LocalCartierDecision {
  bool cartier = false;
  /// u with ⟨u, v_Y⟩ = a_Y for every Y.
  std::optional<WeightVector> witness;
  /// A relation m (indexed like minimally_complete_subsets) with m · a != 0.
  std::optional<std::vector<std::int64_t>> violated_relation;
};

/// Precomputed local data of one tree, for repeated Cartier decisions.
class LocalModel {
 public:
  explicit LocalModel(ColoredTree tree);

  const ColoredTree& tree() const { return tree_; }
  const std::vector<EdgeSubset>& subsets() const { return subsets_; }
  const std::vector<RayVector>& rays() const { return rays_; }
  /// Position of Y in subsets(), or -1.
  int index_of(const EdgeSubset& y) const;

  /// Edges x minimally complete subsets, entry 1 when the edge lies in Y.
  const IntMatrix& incidence() const { return incidence_; }
  /// Integer kernel of incidence(), one relation per row.
  const IntMatrix& relations() const { return relations_; }

  /// Throws InvalidInput when a key is not minimally complete.
  IntVector dense(const LocalDivisorVector& a) const;
  LocalDivisorVector sparse(const IntVector& a) const;

  /// Decides by orthogonality to relations() and independently by solving
  /// for u; throws PropertyViolation if the two disagree.
  LocalCartierDecision decide(const LocalDivisorVector& a) const;
  LocalCartierDecision decide(const IntVector& a) const;

  /// Orthogonality test alone.
  bool orthogonal_to_relations(const IntVector& a) const;
  /// Integer solve of ⟨u, v_Y⟩ = a_Y alone.
  std::optional<WeightVector> solve_witness(const IntVector& a) const;

 private:
  ColoredTree tree_;
  std::vector<EdgeSubset> subsets_;
  std::map<EdgeSubset, int> index_;
  std::vector<RayVector> rays_;
  IntMatrix incidence_;
  IntMatrix relations_;
  linalg::IntegerSystem<BigInt> ray_system_;
};

LocalCartierDecision is_cartier_local(const ColoredTree& tree, const LocalDivisorVector& a);

/// Integer c with a = Σ c_k D_k.  Throws NotCartier when a is not Cartier.
std::vector<BigInt> cartier_coordinates(const ColoredTree& tree, const LocalDivisorVector& a);

}  // namespace cartier

#endif  // CARTIER_LOCAL_DIVISORS_HPP
