#ifndef CARTIER_TREES_HPP
#define CARTIER_TREES_HPP

// Colored trees: the combinatorial types of nodal scaled marked lines.
//
// A colored tree is a rooted tree in which every path from the principal
// vertex down to a leaf crosses exactly one colored vertex.  Colored vertices
// carry the marking labels.  Everything hanging below a colored vertex is
// irrelevant to the local toric model and is discarded on construction, so a
// ColoredTree always has its colored vertices as leaves.
//
// Canonical form:
//   * children are ordered by the smallest colored label below them;
//   * nodes are stored breadth-first, so node 0 is the principal vertex and
//     edge e (0-based) is the edge entering node e + 1; edges are rendered
//     1-based as x1, x2, ...;
//   * uncolored vertices carry a 0-based coordinate assigned in post-order, so
//     the principal vertex has the last coordinate g - 1 and every subtree
//     occupies a contiguous coordinate range ending at its own root.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartier/partition.hpp"

namespace cartier {

/// Schema-level tree as exchanged in JSON: arbitrary ids, no invariants.
struct TreeData {
  struct Vertex {
    int id = 0;
    bool colored = false;
    std::optional<int> label;
  };
  int root = 0;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // (parent, child)
};

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
  };
  std::vector<Check> checks;

  bool ok() const;
  /// Failed checks joined into one line, empty when ok().
  std::string failures() const;
};

/// Checks ids, rootedness, connectivity, acyclicity, that colored labels are a
/// bijection onto {1..n}, and that every root-to-leaf path crosses exactly one
/// colored vertex.
ValidationReport validate_tree(const TreeData& data);

/// 0-based edge index of a canonical tree.
using EdgeId = int;

namespace detail {
struct TreeShape {
  int label = 0;  // 0 for uncolored
  std::vector<TreeShape> children;
};
}  // namespace detail

class ColoredTree {
 public:
  struct Node {
    int parent = -1;
    std::vector<int> children;
    int label = 0;        // 0 when uncolored
    int coordinate = -1;  // post-order index among uncolored vertices
    Subset leaves;        // labels at or below this node
  };

  /// Validates (throws InvalidInput), drops everything below colored
  /// vertices and canonicalizes.
  explicit ColoredTree(const TreeData& data);

  /// Parses nested notation such as "((1,2),(3,4))": a bare integer is a
  /// colored vertex, parentheses an uncolored vertex.  Labels must be
  /// distinct positive integers but need not be {1..n}.
  static ColoredTree from_newick(std::string_view text);
  static ColoredTree from_shape(detail::TreeShape shape);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return num_nodes() - 1; }
  /// g: the number of uncolored vertices, the rank of the local lattice.
  int num_uncolored() const { return num_uncolored_; }
  int num_colored() const { return nodes_.front().leaves.size(); }
  Subset labels() const { return nodes_.front().leaves; }

  const Node& node(int v) const { return nodes_.at(v); }
  const std::vector<Node>& nodes() const { return nodes_; }
  bool is_colored(int v) const { return nodes_.at(v).label != 0; }
  int edge_child(EdgeId e) const { return e + 1; }
  int edge_parent(EdgeId e) const { return nodes_.at(e + 1).parent; }
  /// Edge entering v; v must not be the principal vertex.
  EdgeId edge_above(int v) const { return v - 1; }
  int node_of_coordinate(int k) const { return coordinate_nodes_.at(k); }
  int colored_node(int label) const;

  /// Edges from the principal vertex down to v, top first.
  std::vector<EdgeId> path_from_root(int v) const;
  /// All edges strictly below v.
  std::vector<EdgeId> edges_below(int v) const;
  /// Subtree rooted at v, re-canonicalized.
  ColoredTree subtree(int v) const;

  TreeData data() const;
  std::string newick() const;

  friend bool operator==(const ColoredTree& a, const ColoredTree& b) {
    return a.newick() == b.newick();
  }

 private:
  ColoredTree() = default;
  void build(detail::TreeShape shape);

  std::vector<Node> nodes_;
  std::vector<int> coordinate_nodes_;
  int num_uncolored_ = 0;
};

/// Reduction: removes vertices below colored vertices and canonicalizes.
ColoredTree reduce_tree(const TreeData& data);
inline ColoredTree reduce_tree(const ColoredTree& tree) { return tree; }

/// The subtrees hanging from the principal branches, in canonical order.  A
/// branch that ends in a colored vertex yields a stub with no uncolored
/// vertex.  Requires at least one uncolored vertex.
std::vector<ColoredTree> principal_subtrees(const ColoredTree& tree);

/// The model tree of a partition: a principal vertex with one branch per
/// block, each ending in a simple tree over the block (a bare colored vertex
/// for singleton blocks).
ColoredTree tree_for_partition(const Partition& partition);

/// All reduced colored trees on labels 1..n whose uncolored vertices have at
/// least two children, ordered by (g, nested notation).
std::vector<ColoredTree> enumerate_trees(int n, std::optional<int> max_uncolored = std::nullopt);

/// A vertex map from a tree onto the model tree of a partition.  Principal
/// vertex goes to principal vertex; each edge either goes to an edge pointing
/// away from the principal vertex or collapses to a point, and no two edges
/// share an image edge; colored vertices go
/// to the colored vertex with the same label, uncolored to uncolored.
struct TreeHomomorphism {
  ColoredTree target;
  std::vector<int> vertex_map;  // source node -> target node
};

std::optional<TreeHomomorphism> find_homomorphism(const Partition& partition, const ColoredTree& tree);
bool is_compatible(const Partition& partition, const ColoredTree& tree);

}  // namespace cartier

#endif  // CARTIER_TREES_HPP
