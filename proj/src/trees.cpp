#include "cartier/trees.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "cartier/errors.hpp"

namespace cartier {

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += c.name + ": " + c.detail;
  }
  return out;
}

ValidationReport validate_tree(const TreeData& data) {
  ValidationReport report;
  auto check = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, passed ? std::string() : std::move(detail)});
    return passed;
  };

  std::unordered_map<int, std::size_t> index;
  std::string duplicate;
  for (std::size_t i = 0; i < data.vertices.size(); ++i)
    if (!index.emplace(data.vertices[i].id, i).second) duplicate = std::to_string(data.vertices[i].id);
  const bool ids_ok = check("ids_unique", duplicate.empty() && !data.vertices.empty(),
                            data.vertices.empty() ? "no vertices" : "duplicate id " + duplicate);

  std::string label_problem;
  for (const auto& v : data.vertices) {
    if (v.colored != v.label.has_value())
      label_problem = "vertex " + std::to_string(v.id) + " has colored/label mismatch";
    else if (v.label && *v.label < 1)
      label_problem = "vertex " + std::to_string(v.id) + " has non-positive label";
  }
  const bool labels_ok = check("labels", label_problem.empty(), label_problem);

  const bool root_ok = check("root", index.count(data.root) == 1,
                             "root id " + std::to_string(data.root) + " is not a vertex");

  std::string edge_problem;
  for (auto [p, c] : data.edges) {
    if (!index.count(p) || !index.count(c))
      edge_problem = "edge (" + std::to_string(p) + "," + std::to_string(c) + ") has unknown endpoint";
    else if (p == c)
      edge_problem = "self-loop at " + std::to_string(p);
  }
  const bool edges_ok = check("edges", edge_problem.empty(), edge_problem);

  const std::size_t nv = data.vertices.size();
  std::vector<std::vector<std::size_t>> children(nv);
  std::vector<int> in_degree(nv, 0);
  if (ids_ok && edges_ok) {
    for (auto [p, c] : data.edges) {
      children[index[p]].push_back(index[c]);
      ++in_degree[index[c]];
    }
  }

  bool structure_ok = ids_ok && edges_ok && root_ok;
  if (structure_ok) {
    std::string rooted_problem;
    for (std::size_t i = 0; i < nv; ++i) {
      const bool is_root = data.vertices[i].id == data.root;
      if (is_root && in_degree[i] != 0) rooted_problem = "root has a parent";
      if (!is_root && in_degree[i] != 1)
        rooted_problem = "vertex " + std::to_string(data.vertices[i].id) + " has " +
                         std::to_string(in_degree[i]) + " parents";
    }
    const bool rooted = check("rooted", rooted_problem.empty(), rooted_problem);

    // Reachability with cycle detection (iterative DFS with colors).
    std::vector<int> state(nv, 0);
    bool cycle = false;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{index[data.root], 0}};
    state[index[data.root]] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children[v].size()) {
        const auto c = children[v][next++];
        if (state[c] == 1) cycle = true;
        if (state[c] == 0) {
          state[c] = 1;
          stack.emplace_back(c, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
    const bool connected = check("connected", std::all_of(state.begin(), state.end(), [](int s) { return s == 2; }),
                                 "some vertices are unreachable from the root");
    const bool acyclic = check("acyclic", !cycle && data.edges.size() + 1 == nv,
                               cycle ? "cycle detected" : "edge count differs from vertex count - 1");
    structure_ok = rooted && connected && acyclic;
  } else {
    check("rooted", false, "not evaluated: ids, edges or root invalid");
    check("connected", false, "not evaluated");
    check("acyclic", false, "not evaluated");
  }

  std::vector<int> labels;
  for (const auto& v : data.vertices)
    if (v.colored && v.label) labels.push_back(*v.label);
  std::sort(labels.begin(), labels.end());
  bool bijection = !labels.empty();
  for (std::size_t i = 0; i < labels.size(); ++i) bijection = bijection && labels[i] == static_cast<int>(i) + 1;
  check("coloring_bijection", labels_ok && bijection,
        labels.empty() ? "no colored vertices" : "colored labels are not exactly 1..n");

  if (structure_ok && labels_ok) {
    // Count colored vertices along every root-to-leaf path.
    std::string path_problem;
    std::function<void(std::size_t, int)> walk = [&](std::size_t v, int colored_above) {
      const int count = colored_above + (data.vertices[v].colored ? 1 : 0);
      if (count > 1) {
        path_problem = "path to vertex " + std::to_string(data.vertices[v].id) + " crosses two colored vertices";
        return;
      }
      if (children[v].empty() && count == 0)
        path_problem = "path to leaf " + std::to_string(data.vertices[v].id) + " crosses no colored vertex";
      for (auto c : children[v]) walk(c, count);
    };
    walk(index[data.root], 0);
    check("one_colored_per_path", path_problem.empty(), path_problem);
  } else {
    check("one_colored_per_path", false, "not evaluated: tree structure invalid");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Canonical construction

namespace {

using detail::TreeShape;

int canonicalize(TreeShape& shape) {
  if (shape.label != 0) return shape.label;
  std::vector<std::pair<int, TreeShape>> keyed;
  for (auto& child : shape.children) {
    const int m = canonicalize(child);
    keyed.emplace_back(m, std::move(child));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  shape.children.clear();
  for (auto& [m, child] : keyed) shape.children.push_back(std::move(child));
  return keyed.front().first;
}

int count_uncolored(const TreeShape& shape) {
  int count = shape.label == 0 ? 1 : 0;
  for (const auto& c : shape.children) count += count_uncolored(c);
  return count;
}

void collect_labels(const TreeShape& shape, std::vector<int>& out) {
  if (shape.label != 0) out.push_back(shape.label);
  for (const auto& c : shape.children) collect_labels(c, out);
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  TreeShape parse() {
    TreeShape shape = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return shape;
  }

 private:
  TreeShape parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      TreeShape shape;
      for (;;) {
        shape.children.push_back(parse_node());
        skip_space();
        if (pos_ >= text_.size()) fail("unterminated '('");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      return shape;
    }
    int value = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      value = value * 10 + (text_[pos_++] - '0');
    if (pos_ == start || value < 1) fail("expected a positive label");
    TreeShape leaf;
    leaf.label = value;
    return leaf;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("cannot parse tree '" + std::string(text_) + "' at offset " +
                       std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ColoredTree::ColoredTree(const TreeData& data) {
  const auto report = validate_tree(data);
  if (!report.ok()) throw InvalidInput("invalid colored tree: " + report.failures());

  std::unordered_map<int, const TreeData::Vertex*> by_id;
  for (const auto& v : data.vertices) by_id[v.id] = &v;
  std::unordered_map<int, std::vector<int>> children;
  for (auto [p, c] : data.edges) children[p].push_back(c);

  std::function<TreeShape(int)> shape_of = [&](int id) {
    TreeShape shape;
    const auto* v = by_id.at(id);
    if (v->colored) {
      shape.label = *v->label;  // reduction: everything below is dropped
      return shape;
    }
    for (int c : children[id]) shape.children.push_back(shape_of(c));
    return shape;
  };
  build(shape_of(data.root));
}

ColoredTree ColoredTree::from_newick(std::string_view text) {
  return from_shape(NewickParser(text).parse());
}

ColoredTree ColoredTree::from_shape(TreeShape shape) {
  std::vector<int> labels;
  collect_labels(shape, labels);
  std::sort(labels.begin(), labels.end());
  if (labels.empty()) throw InvalidInput("tree has no colored vertex");
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw InvalidInput("tree repeats a colored label");
  if (labels.back() > kMaxMarkings) throw InvalidInput("colored label exceeds supported range");
  std::function<void(const TreeShape&)> check_leaves = [&](const TreeShape& s) {
    if (s.label == 0 && s.children.empty()) throw InvalidInput("uncolored leaf: a path misses every colored vertex");
    if (s.label != 0 && !s.children.empty()) throw InvalidInput("shape has vertices below a colored vertex");
    for (const auto& c : s.children) check_leaves(c);
  };
  check_leaves(shape);
  ColoredTree tree;
  tree.build(std::move(shape));
  return tree;
}

void ColoredTree::build(TreeShape shape) {
  canonicalize(shape);
  nodes_.clear();
  // Breadth-first layout.
  std::deque<std::pair<const TreeShape*, int>> queue{{&shape, -1}};
  while (!queue.empty()) {
    auto [s, parent] = queue.front();
    queue.pop_front();
    const int id = static_cast<int>(nodes_.size());
    Node node;
    node.parent = parent;
    node.label = s->label;
    nodes_.push_back(node);
    if (parent >= 0) nodes_[parent].children.push_back(id);
    for (const auto& c : s->children) queue.emplace_back(&c, id);
  }
  // Post-order coordinates and leaf sets.
  coordinate_nodes_.clear();
  std::function<void(int)> post = [&](int v) {
    Node& node = nodes_[v];
    if (node.label != 0) node.leaves = Subset::singleton(node.label);
    for (int c : node.children) {
      post(c);
      nodes_[v].leaves = nodes_[v].leaves | nodes_[c].leaves;
    }
    if (nodes_[v].label == 0) {
      nodes_[v].coordinate = static_cast<int>(coordinate_nodes_.size());
      coordinate_nodes_.push_back(v);
    }
  };
  post(0);
  num_uncolored_ = static_cast<int>(coordinate_nodes_.size());
}

int ColoredTree::colored_node(int label) const {
  for (int v = 0; v < num_nodes(); ++v)
    if (nodes_[v].label == label) return v;
  throw InvalidInput("label " + std::to_string(label) + " not in tree");
}

std::vector<EdgeId> ColoredTree::path_from_root(int v) const {
  std::vector<EdgeId> path;
  for (int x = v; nodes_.at(x).parent >= 0; x = nodes_[x].parent) path.push_back(edge_above(x));
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<EdgeId> ColoredTree::edges_below(int v) const {
  std::vector<EdgeId> out;
  std::vector<int> stack(nodes_.at(v).children.begin(), nodes_.at(v).children.end());
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    out.push_back(edge_above(x));
    stack.insert(stack.end(), nodes_[x].children.begin(), nodes_[x].children.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ColoredTree ColoredTree::subtree(int v) const {
  std::function<TreeShape(int)> shape_of = [&](int x) {
    TreeShape s;
    s.label = nodes_[x].label;
    for (int c : nodes_[x].children) s.children.push_back(shape_of(c));
    return s;
  };
  return from_shape(shape_of(v));
}

TreeData ColoredTree::data() const {
  TreeData out;
  auto id_of = [&](int v) {
    return nodes_[v].label != 0 ? num_uncolored_ + nodes_[v].label : nodes_[v].coordinate + 1;
  };
  out.root = id_of(0);
  for (int v = 0; v < num_nodes(); ++v) {
    TreeData::Vertex vertex{id_of(v), nodes_[v].label != 0, std::nullopt};
    if (vertex.colored) vertex.label = nodes_[v].label;
    out.vertices.push_back(vertex);
  }
  for (EdgeId e = 0; e < num_edges(); ++e) out.edges.emplace_back(id_of(edge_parent(e)), id_of(edge_child(e)));
  return out;
}

std::string ColoredTree::newick() const {
  std::function<std::string(int)> render = [&](int v) {
    if (nodes_[v].label != 0) return std::to_string(nodes_[v].label);
    std::string s = "(";
    for (std::size_t i = 0; i < nodes_[v].children.size(); ++i) {
      if (i) s += ',';
      s += render(nodes_[v].children[i]);
    }
    return s + ")";
  };
  return render(0);
}

// ---------------------------------------------------------------------------
// Operations

ColoredTree reduce_tree(const TreeData& data) { return ColoredTree(data); }

std::vector<ColoredTree> principal_subtrees(const ColoredTree& tree) {
  if (tree.num_uncolored() == 0) throw InvalidInput("a stub has no principal branches");
  std::vector<ColoredTree> out;
  for (int c : tree.node(0).children) out.push_back(tree.subtree(c));
  return out;
}

ColoredTree tree_for_partition(const Partition& partition) {
  if (partition.block_count() < 2) throw InvalidInput("the one-block partition has no model tree");
  TreeShape root;
  for (auto block : partition.blocks()) {
    TreeShape branch;
    if (block.size() == 1) {
      branch.label = block.min();
    } else {
      for (int e : block.elements()) branch.children.push_back(TreeShape{e, {}});
    }
    root.children.push_back(std::move(branch));
  }
  return ColoredTree::from_shape(std::move(root));
}

std::vector<ColoredTree> enumerate_trees(int n, std::optional<int> max_uncolored) {
  if (n < 1 || n > kMaxMarkings) throw InvalidInput("marking count out of range");
  std::map<std::uint32_t, std::vector<TreeShape>> memo;
  std::function<const std::vector<TreeShape>&(Subset)> shapes_for = [&](Subset labels) -> const std::vector<TreeShape>& {
    if (auto it = memo.find(labels.mask()); it != memo.end()) return it->second;
    std::vector<TreeShape> out;
    if (labels.size() == 1) {
      out.push_back(TreeShape{labels.min(), {}});
    } else {
      for (const auto& p : set_partitions(labels)) {
        if (p.block_count() < 2) continue;
        // Cartesian product of the block shapes.
        std::vector<TreeShape> partial{TreeShape{}};
        for (auto block : p.blocks()) {
          const auto& options = shapes_for(block);
          std::vector<TreeShape> next;
          for (const auto& base : partial)
            for (const auto& option : options) {
              TreeShape grown = base;
              grown.children.push_back(option);
              next.push_back(std::move(grown));
            }
          partial = std::move(next);
        }
        for (auto& s : partial) out.push_back(std::move(s));
      }
    }
    return memo.emplace(labels.mask(), std::move(out)).first->second;
  };

  std::vector<ColoredTree> trees;
  for (const auto& shape : shapes_for(Subset::full(n))) {
    if (max_uncolored && count_uncolored(shape) > *max_uncolored) continue;
    trees.push_back(ColoredTree::from_shape(shape));
  }
  std::vector<std::pair<std::pair<int, std::string>, std::size_t>> order;
  for (std::size_t i = 0; i < trees.size(); ++i)
    order.push_back({{trees[i].num_uncolored(), trees[i].newick()}, i});
  std::sort(order.begin(), order.end());
  std::vector<ColoredTree> sorted;
  sorted.reserve(trees.size());
  for (const auto& [key, i] : order) sorted.push_back(trees[i]);
  return sorted;
}

std::optional<TreeHomomorphism> find_homomorphism(const Partition& partition, const ColoredTree& tree) {
  if (partition.block_count() < 2) throw InvalidInput("compatibility needs a partition with at least two blocks");
  if (partition.support() != tree.labels()) return std::nullopt;
  ColoredTree target = tree_for_partition(partition);

  std::vector<int> image(tree.num_nodes(), -1);
  image[0] = 0;
  // A child goes to the image of its parent or to a child of that image.
  auto candidates = [&](int x) {
    std::vector<int> out{x};
    for (int c : target.node(x).children) out.push_back(c);
    return out;
  };
  // Target edges already hit by an uncollapsed edge, keyed by child node.
  std::vector<char> used(target.num_nodes(), 0);
  // Nodes are breadth-first, so every parent is assigned before its children.
  std::function<bool(int)> assign = [&](int v) {
    if (v == tree.num_nodes()) return true;
    const int parent_image = image[tree.node(v).parent];
    for (int candidate : candidates(parent_image)) {
      const bool ok = tree.is_colored(v) ? target.node(candidate).label == tree.node(v).label
                                         : !target.is_colored(candidate);
      const bool collapsed = candidate == parent_image;
      if (!ok || (!collapsed && used[candidate])) continue;
      image[v] = candidate;
      if (!collapsed) used[candidate] = 1;
      if (assign(v + 1)) return true;
      if (!collapsed) used[candidate] = 0;
    }
    image[v] = -1;
    return false;
  };
  if (!assign(1)) return std::nullopt;
  return TreeHomomorphism{std::move(target), std::move(image)};
}

bool is_compatible(const Partition& partition, const ColoredTree& tree) {
  return find_homomorphism(partition, tree).has_value();
}

}  // namespace cartier
