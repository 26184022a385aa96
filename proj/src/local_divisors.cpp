#include "cartier/local_divisors.hpp"

#include <algorithm>
#include <functional>

#include "cartier/errors.hpp"
#include "cartier/weights.hpp"

namespace cartier {

namespace {

void check_edges(const ColoredTree& tree, const EdgeSubset& y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0 || y[i] >= tree.num_edges())
      throw InvalidInput("x" + std::to_string(y[i] + 1) + " is not an edge of the tree");
    if (i > 0 && y[i] <= y[i - 1]) throw InvalidInput("edge subset must be sorted without repeats");
  }
}

IntMatrix build_ray_matrix(const std::vector<RayVector>& rays, int g) {
  IntMatrix m(static_cast<Eigen::Index>(rays.size()), g);
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (int k = 0; k < g; ++k) m(i, k) = rays[i](k);
  return m;
}

}  // namespace

std::string edge_subset_key(const EdgeSubset& y) {
  std::string out;
  for (EdgeId e : y) {
    if (!out.empty()) out += ',';
    out += std::to_string(e + 1);
  }
  return out;
}

EdgeSubset parse_edge_subset(std::string_view key) {
  try {
    EdgeSubset y;
    for (int e : Subset::parse(key).elements()) y.push_back(e - 1);
    return y;
  } catch (const std::invalid_argument& err) {
    throw InvalidInput(std::string("bad edge subset '") + std::string(key) + "': " + err.what());
  }
}

std::vector<EdgeSubset> minimally_complete_subsets(const ColoredTree& tree) {
  std::function<std::vector<EdgeSubset>(int)> below = [&](int v) {
    std::vector<EdgeSubset> result{{}};
    for (int c : tree.node(v).children) {
      std::vector<EdgeSubset> options{{tree.edge_above(c)}};
      if (!tree.is_colored(c))
        for (auto& y : below(c)) options.push_back(std::move(y));
      std::vector<EdgeSubset> next;
      for (const auto& base : result)
        for (const auto& option : options) {
          EdgeSubset merged = base;
          merged.insert(merged.end(), option.begin(), option.end());
          next.push_back(std::move(merged));
        }
      result = std::move(next);
    }
    for (auto& y : result) std::sort(y.begin(), y.end());
    return result;
  };
  if (tree.num_uncolored() == 0) return {};
  auto all = below(0);
  std::sort(all.begin(), all.end());
  return all;
}

bool is_minimally_complete(const ColoredTree& tree, const EdgeSubset& y) {
  if (tree.num_uncolored() == 0) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0 || y[i] >= tree.num_edges()) return false;
    if (i > 0 && y[i] <= y[i - 1]) return false;
  }
  for (int label : tree.labels().elements()) {
    int hits = 0;
    for (EdgeId e : tree.path_from_root(tree.colored_node(label)))
      hits += std::binary_search(y.begin(), y.end(), e) ? 1 : 0;
    if (hits != 1) return false;
  }
  return true;
}

RayVector ray_of_subset(const ColoredTree& tree, const EdgeSubset& y) {
  check_edges(tree, y);
  if (!is_minimally_complete(tree, y))
    throw InvalidInput("{" + edge_subset_key(y) + "} is not minimally complete");
  const int g = tree.num_uncolored();
  std::function<RayVector(int)> ray = [&](int v) {
    const RayVector e = RayVector::unit(g, tree.node(v).coordinate);
    RayVector r = e;
    for (int c : tree.node(v).children)
      if (!std::binary_search(y.begin(), y.end(), tree.edge_above(c))) r += ray(c) - e;
    return r;
  };
  return ray(0);
}

Partition partition_of_subset(const ColoredTree& tree, const EdgeSubset& y) {
  if (!is_minimally_complete(tree, y))
    throw InvalidInput("{" + edge_subset_key(y) + "} is not minimally complete");
  std::vector<Subset> blocks;
  for (EdgeId e : y) blocks.push_back(tree.node(tree.edge_child(e)).leaves);
  return Partition(std::move(blocks));
}

EdgeSubset subset_of_partition(const ColoredTree& tree, const Partition& partition) {
  if (!is_compatible(partition, tree))
    throw InvalidInput("partition " + partition.key() + " is not compatible with " + tree.newick());
  EdgeSubset y;
  for (auto block : partition.blocks()) {
    // Lowest common ancestor of the block's colored vertices.
    std::vector<int> common;
    for (int label : block.elements()) {
      std::vector<int> chain;
      for (int x = tree.colored_node(label); x >= 0; x = tree.node(x).parent) chain.push_back(x);
      std::reverse(chain.begin(), chain.end());
      if (common.empty()) {
        common = chain;
      } else {
        std::size_t k = 0;
        while (k < common.size() && k < chain.size() && common[k] == chain[k]) ++k;
        common.resize(k);
      }
    }
    if (common.back() == 0)
      throw InvalidInput("block " + block.key() + " has no common edge in " + tree.newick());
    y.push_back(tree.edge_above(common.back()));
  }
  std::sort(y.begin(), y.end());
  if (!is_minimally_complete(tree, y) || !(partition_of_subset(tree, y) == partition))
    throw InvalidInput("partition " + partition.key() + " does not correspond to an edge subset of " +
                       tree.newick());
  return y;
}

std::vector<LocalDivisorVector> local_cartier_generators(const ColoredTree& tree) {
  const auto subsets = minimally_complete_subsets(tree);
  std::vector<LocalDivisorVector> out;
  for (int k = 0; k < tree.num_uncolored(); ++k) {
    const auto below = tree.edges_below(tree.node_of_coordinate(k));
    LocalDivisorVector d;
    for (const auto& y : subsets) {
      const bool meets = std::any_of(y.begin(), y.end(),
                                     [&](EdgeId e) { return std::binary_search(below.begin(), below.end(), e); });
      if (meets) d[y] = 1;
    }
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------

LocalModel::LocalModel(ColoredTree tree)
    : tree_(std::move(tree)),
      subsets_(minimally_complete_subsets(tree_)),
      rays_([&] {
        std::vector<RayVector> r;
        for (const auto& y : subsets_) r.push_back(ray_of_subset(tree_, y));
        return r;
      }()),
      incidence_(IntMatrix::Zero(tree_.num_edges(), static_cast<Eigen::Index>(subsets_.size()))),
      ray_system_(build_ray_matrix(rays_, tree_.num_uncolored())) {
  if (tree_.num_uncolored() == 0) throw InvalidInput("a stub carries no local model");
  for (std::size_t j = 0; j < subsets_.size(); ++j) {
    index_[subsets_[j]] = static_cast<int>(j);
    for (EdgeId e : subsets_[j]) incidence_(e, static_cast<Eigen::Index>(j)) = 1;
  }
  relations_ = linalg::kernel_basis(incidence_);
}

int LocalModel::index_of(const EdgeSubset& y) const {
  auto it = index_.find(y);
  return it == index_.end() ? -1 : it->second;
}

IntVector LocalModel::dense(const LocalDivisorVector& a) const {
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(subsets_.size()));
  for (const auto& [y, c] : a) {
    const int i = index_of(y);
    if (i < 0) throw InvalidInput("{" + edge_subset_key(y) + "} is not a minimally complete subset of " + tree_.newick());
    v(i) = c;
  }
  return v;
}

LocalDivisorVector LocalModel::sparse(const IntVector& a) const {
  LocalDivisorVector out;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0) out[subsets_.at(i)] = to_int64(a(i));
  return out;
}

bool LocalModel::orthogonal_to_relations(const IntVector& a) const {
  return (relations_ * a).isZero();
}

std::optional<WeightVector> LocalModel::solve_witness(const IntVector& a) const {
  const auto u = ray_system_.solve(a);
  if (!u) return std::nullopt;
  WeightVector w(tree_.num_uncolored());
  for (Eigen::Index k = 0; k < u->size(); ++k) w(k) = to_int64((*u)(k));
  return w;
}

LocalCartierDecision LocalModel::decide(const IntVector& a) const {
  if (a.size() != static_cast<Eigen::Index>(subsets_.size()))
    throw InvalidInput("local divisor has " + std::to_string(a.size()) + " coefficients, expected " +
                       std::to_string(subsets_.size()));
  LocalCartierDecision decision;
  const IntVector products = relations_ * a;
  decision.cartier = products.isZero();
  decision.witness = solve_witness(a);
  if (decision.cartier != decision.witness.has_value())
    throw PropertyViolation("local Cartier tests disagree on " + tree_.newick());
  if (!decision.cartier) {
    for (Eigen::Index r = 0; r < products.size(); ++r) {
      if (products(r) == 0) continue;
      std::vector<std::int64_t> m;
      for (Eigen::Index j = 0; j < relations_.cols(); ++j) m.push_back(to_int64(relations_(r, j)));
      decision.violated_relation = std::move(m);
      break;
    }
  }
  return decision;
}

LocalCartierDecision LocalModel::decide(const LocalDivisorVector& a) const { return decide(dense(a)); }

LocalCartierDecision is_cartier_local(const ColoredTree& tree, const LocalDivisorVector& a) {
  return LocalModel(tree).decide(a);
}

std::vector<BigInt> cartier_coordinates(const ColoredTree& tree, const LocalDivisorVector& a) {
  const LocalModel model(tree);
  const IntVector target = model.dense(a);
  if (!model.decide(target).cartier) throw NotCartier("local divisor is not Cartier on " + tree.newick());
  const auto gens = local_cartier_generators(tree);
  IntMatrix d(static_cast<Eigen::Index>(model.subsets().size()), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) d.col(static_cast<Eigen::Index>(k)) = model.dense(gens[k]);
  const auto c = linalg::solve_integer(d, target);
  if (!c) throw PropertyViolation("Cartier divisor is not an integer combination of the generators D_k");
  return std::vector<BigInt>(c->data(), c->data() + c->size());
}

}  // namespace cartier
