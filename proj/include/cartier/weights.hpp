#ifndef CARTIER_WEIGHTS_HPP
#define CARTIER_WEIGHTS_HPP

#include <map>
#include <optional>
#include <vector>

#include "cartier/trees.hpp"
#include "cartier/vectors.hpp"

namespace cartier {

/// s(v): e_v^* plus the sum of s over the uncolored children of v, in the
/// coordinates of the whole tree.  Zero for colored vertices.
WeightVector subtree_weight(const ColoredTree& tree, int v);

/// s(Γ), the weight of the principal vertex.
WeightVector total_weight(const ColoredTree& tree);

/// Edge weights indexed by EdgeId.  The edge from p to c carries s(p) - s(c),
/// so the weights along any path from the principal vertex to a colored
/// vertex sum to total_weight.
std::vector<WeightVector> label_weights(const ColoredTree& tree);

/// Edge -> multiplicity.  Zero multiplicities are ignored.
using EdgeMultiset = std::map<EdgeId, int>;

/// Compares the summed edge weights of A and B.  Throws InvalidInput on
/// unknown edges, negative multiplicities, or overlapping supports.
bool weight_sum_equal(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b);

/// Two downward paths from `vertex` through different children to two
/// distinct colored vertices.  Paths list edges top first.
struct PathPair {
  int vertex = 0;
  std::vector<EdgeId> a_path;
  std::vector<EdgeId> b_path;
  int a_label = 0;
  int b_label = 0;
};

struct PairingCertificate {
  std::vector<PathPair> pairs;
};

/// Splits A and B into related path pairs, or returns nullopt when their
/// weight sums differ.  Deterministic: paths are matched in order of their
/// colored endpoint labels.
std::optional<PairingCertificate> pairing_certificate(const ColoredTree& tree, const EdgeMultiset& a,
                                                      const EdgeMultiset& b);

/// True when every pair is a valid related pair and the pairs use exactly
/// the edges of A and B.
bool verify_certificate(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b,
                        const PairingCertificate& certificate);

}  // namespace cartier

#endif  // CARTIER_WEIGHTS_HPP
