#include "cartier/weights.hpp"

#include <algorithm>

#include "cartier/errors.hpp"

namespace cartier {

namespace {

void check_multiset(const ColoredTree& tree, const EdgeMultiset& m) {
  for (auto [e, count] : m) {
    if (e < 0 || e >= tree.num_edges())
      throw InvalidInput("edge x" + std::to_string(e + 1) + " is not an edge of the tree");
    if (count < 0) throw InvalidInput("negative multiplicity on edge x" + std::to_string(e + 1));
  }
}

void check_disjoint(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b) {
  check_multiset(tree, a);
  check_multiset(tree, b);
  for (auto [e, count] : a) {
    auto it = b.find(e);
    if (count > 0 && it != b.end() && it->second > 0)
      throw InvalidInput("multisets share edge x" + std::to_string(e + 1));
  }
}

int multiplicity(const EdgeMultiset& m, EdgeId e) {
  auto it = m.find(e);
  return it == m.end() ? 0 : it->second;
}

struct Path {
  std::vector<EdgeId> edges;  // top first
  int label = 0;
};

bool by_endpoint(const Path& x, const Path& y) {
  return std::tie(x.label, x.edges) < std::tie(y.label, y.edges);
}

class CertificateBuilder {
 public:
  CertificateBuilder(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b)
      : tree_(tree), a_(a), b_(b) {}

  // Returns the `alpha` A-paths and `beta` B-paths starting at v that continue
  // paths entering from above; pairs everything else at or below v.
  bool visit(int v, int alpha, int beta, std::vector<Path>& up_a, std::vector<Path>& up_b) {
    if (tree_.is_colored(v)) {
      up_a.assign(alpha, Path{{}, tree_.node(v).label});
      up_b.assign(beta, Path{{}, tree_.node(v).label});
      return true;
    }
    std::vector<Path> paths_a, paths_b;
    for (int c : tree_.node(v).children) {
      const EdgeId d = tree_.edge_above(c);
      const int ac = multiplicity(a_, d), bc = multiplicity(b_, d);
      std::vector<Path> child_a, child_b;
      if (!visit(c, ac, bc, child_a, child_b)) return false;
      for (auto& p : child_a) {
        p.edges.insert(p.edges.begin(), d);
        paths_a.push_back(std::move(p));
      }
      for (auto& p : child_b) {
        p.edges.insert(p.edges.begin(), d);
        paths_b.push_back(std::move(p));
      }
    }
    const int total_a = static_cast<int>(paths_a.size()), total_b = static_cast<int>(paths_b.size());
    if (total_a - alpha != total_b - beta || total_a < alpha || total_b < beta) return false;
    std::stable_sort(paths_a.begin(), paths_a.end(), by_endpoint);
    std::stable_sort(paths_b.begin(), paths_b.end(), by_endpoint);
    up_a.assign(paths_a.begin(), paths_a.begin() + alpha);
    up_b.assign(paths_b.begin(), paths_b.begin() + beta);
    // A and B have disjoint supports, so an A-path and a B-path always leave
    // v through different children.
    for (int i = 0; i < total_a - alpha; ++i) {
      const Path& pa = paths_a[alpha + i];
      const Path& pb = paths_b[beta + i];
      pairs_.push_back(PathPair{v, pa.edges, pb.edges, pa.label, pb.label});
    }
    return true;
  }

  std::vector<PathPair> take_pairs() {
    std::stable_sort(pairs_.begin(), pairs_.end(),
                     [](const PathPair& x, const PathPair& y) { return x.vertex < y.vertex; });
    return std::move(pairs_);
  }

 private:
  const ColoredTree& tree_;
  const EdgeMultiset& a_;
  const EdgeMultiset& b_;
  std::vector<PathPair> pairs_;
};

bool is_downward_path(const ColoredTree& tree, int from, const std::vector<EdgeId>& path, int label) {
  int x = from;
  for (EdgeId e : path) {
    if (e < 0 || e >= tree.num_edges() || tree.edge_parent(e) != x) return false;
    x = tree.edge_child(e);
  }
  return tree.is_colored(x) && tree.node(x).label == label;
}

}  // namespace

WeightVector subtree_weight(const ColoredTree& tree, int v) {
  WeightVector s(tree.num_uncolored());
  if (tree.is_colored(v)) return s;
  // Uncolored vertices of the subtree occupy a contiguous post-order range
  // ending at v itself.
  std::vector<int> stack{v};
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (tree.is_colored(x)) continue;
    s(tree.node(x).coordinate) = 1;
    for (int c : tree.node(x).children) stack.push_back(c);
  }
  return s;
}

WeightVector total_weight(const ColoredTree& tree) { return subtree_weight(tree, 0); }

std::vector<WeightVector> label_weights(const ColoredTree& tree) {
  std::vector<WeightVector> s;
  s.reserve(tree.num_nodes());
  for (int v = 0; v < tree.num_nodes(); ++v) s.push_back(subtree_weight(tree, v));
  std::vector<WeightVector> weights;
  weights.reserve(tree.num_edges());
  for (EdgeId e = 0; e < tree.num_edges(); ++e)
    weights.emplace_back(s[tree.edge_parent(e)] - s[tree.edge_child(e)]);
  return weights;
}

bool weight_sum_equal(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b) {
  check_disjoint(tree, a, b);
  const auto w = label_weights(tree);
  WeightVector diff(tree.num_uncolored());
  for (auto [e, count] : a) diff += count * w[e];
  for (auto [e, count] : b) diff -= count * w[e];
  return diff.isZero();
}

std::optional<PairingCertificate> pairing_certificate(const ColoredTree& tree, const EdgeMultiset& a,
                                                      const EdgeMultiset& b) {
  check_disjoint(tree, a, b);
  CertificateBuilder builder(tree, a, b);
  std::vector<Path> up_a, up_b;
  if (!builder.visit(0, 0, 0, up_a, up_b)) return std::nullopt;
  return PairingCertificate{builder.take_pairs()};
}

bool verify_certificate(const ColoredTree& tree, const EdgeMultiset& a, const EdgeMultiset& b,
                        const PairingCertificate& certificate) {
  EdgeMultiset used_a, used_b;
  for (const auto& pair : certificate.pairs) {
    if (pair.vertex < 0 || pair.vertex >= tree.num_nodes()) return false;
    if (pair.a_path.empty() || pair.b_path.empty() || pair.a_path.front() == pair.b_path.front()) return false;
    if (!is_downward_path(tree, pair.vertex, pair.a_path, pair.a_label)) return false;
    if (!is_downward_path(tree, pair.vertex, pair.b_path, pair.b_label)) return false;
    for (EdgeId e : pair.a_path) ++used_a[e];
    for (EdgeId e : pair.b_path) ++used_b[e];
  }
  auto strip = [](EdgeMultiset m) {
    std::erase_if(m, [](const auto& entry) { return entry.second == 0; });
    return m;
  };
  return used_a == strip(a) && used_b == strip(b);
}

}  // namespace cartier
