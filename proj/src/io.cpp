#include "cartier/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "cartier/errors.hpp"

namespace cartier::io {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    bool known = key == "schema_version";
    for (const char* k : keys) known = known || key == k;
    require(known, what + ": unknown field \"" + key + "\"");
  }
}

int as_int(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + " must be an integer");
  const auto v = j.get<std::int64_t>();
  require(v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max(), what + " out of range");
  return static_cast<int>(v);
}

std::int64_t as_int64(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + " must be an integer");
  if (j.is_number_unsigned())
    require(j.get<std::uint64_t>() <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()),
            what + " out of range");
  return j.get<std::int64_t>();
}

template <typename F>
auto wrap(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(what + ": " + e.what());
  }
}

}  // namespace

TreeData tree_from_json(const Json& j) {
  require(j.is_object(), "tree must be a JSON object");
  allow_keys(j, {"root", "vertices", "edges"}, "tree");
  require(j.contains("root") && j.contains("vertices") && j.contains("edges"),
          "tree needs \"root\", \"vertices\" and \"edges\"");
  TreeData d;
  d.root = as_int(j["root"], "root");
  require(j["vertices"].is_array(), "\"vertices\" must be an array");
  for (const auto& v : j["vertices"]) {
    require(v.is_object() && v.contains("id") && v.contains("colored"), "vertex needs \"id\" and \"colored\"");
    allow_keys(v, {"id", "colored", "label"}, "vertex");
    require(v["colored"].is_boolean(), "\"colored\" must be a boolean");
    TreeData::Vertex vertex{as_int(v["id"], "vertex id"), v["colored"].get<bool>(), std::nullopt};
    if (v.contains("label") && !v["label"].is_null()) vertex.label = as_int(v["label"], "label");
    d.vertices.push_back(vertex);
  }
  require(j["edges"].is_array(), "\"edges\" must be an array");
  for (const auto& e : j["edges"]) {
    require(e.is_array() && e.size() == 2, "each edge must be a [parent, child] pair");
    d.edges.emplace_back(as_int(e[0], "edge endpoint"), as_int(e[1], "edge endpoint"));
  }
  return d;
}

Json tree_to_json(const TreeData& data) {
  Json j;
  j["root"] = data.root;
  j["vertices"] = Json::array();
  for (const auto& v : data.vertices) {
    Json vertex{{"id", v.id}, {"colored", v.colored}};
    if (v.label) vertex["label"] = *v.label;
    j["vertices"].push_back(vertex);
  }
  j["edges"] = Json::array();
  for (auto [p, c] : data.edges) j["edges"].push_back(Json::array({p, c}));
  return j;
}

DivisorVector divisor_from_json(const Json& j) {
  require(j.is_object(), "divisor must be a JSON object");
  allow_keys(j, {"n", "typeI", "typeII"}, "divisor");
  require(j.contains("n"), "divisor needs \"n\"");
  DivisorVector d;
  d.n = as_int(j["n"], "n");
  if (j.contains("typeI")) {
    require(j["typeI"].is_object(), "\"typeI\" must be an object");
    for (const auto& [key, value] : j["typeI"].items()) {
      const Subset s = wrap("typeI key", [&] { return Subset::parse(key); });
      require(!d.type_one.count(s), "typeI key " + key + " repeated");
      d.type_one[s] = as_int64(value, "coefficient of " + key);
    }
  }
  if (j.contains("typeII")) {
    require(j["typeII"].is_object(), "\"typeII\" must be an object");
    for (const auto& [key, value] : j["typeII"].items()) {
      const Partition p = wrap("typeII key", [&] { return Partition::parse(key); });
      require(!d.type_two.count(p), "typeII key " + key + " repeated");
      d.type_two[p] = as_int64(value, "coefficient of " + key);
    }
  }
  validate_divisor(d);
  return d;
}

Json divisor_to_json(const DivisorVector& d) {
  Json j;
  j["n"] = d.n;
  j["typeI"] = Json::object();
  for (const auto& [s, c] : d.type_one) j["typeI"][s.key()] = c;
  j["typeII"] = Json::object();
  for (const auto& [p, c] : d.type_two) j["typeII"][p.key()] = c;
  return j;
}

LocalDivisorVector local_divisor_from_json(const Json& j) {
  require(j.is_object(), "local divisor must be a JSON object");
  const Json& body = j.contains("coefficients") ? j["coefficients"] : j;
  if (j.contains("coefficients")) allow_keys(j, {"coefficients"}, "local divisor");
  require(body.is_object(), "\"coefficients\" must be an object");
  LocalDivisorVector a;
  for (const auto& [key, value] : body.items()) {
    if (&body == &j && key == "schema_version") continue;
    const EdgeSubset y = parse_edge_subset(key);
    require(!a.count(y), "edge subset " + key + " repeated");
    a[y] = as_int64(value, "coefficient of " + key);
  }
  return a;
}

Json local_divisor_to_json(const LocalDivisorVector& a) {
  Json j = Json::object();
  for (const auto& [y, c] : a) j[edge_subset_key(y)] = c;
  return j;
}

EdgeMultiset multiset_from_json(const Json& j) {
  require(j.is_object(), "edge multiset must be an object of edge id -> multiplicity");
  EdgeMultiset m;
  for (const auto& [key, value] : j.items()) {
    const int e = wrap("edge id", [&] { return Subset::parse(key).min(); });
    require(std::to_string(e) == key, "edge id must be a single positive integer, got " + key);
    m[e - 1] = as_int(value, "multiplicity of edge " + key);
  }
  return m;
}

Json multiset_to_json(const EdgeMultiset& m) {
  Json j = Json::object();
  for (auto [e, c] : m)
    if (c != 0) j[std::to_string(e + 1)] = c;
  return j;
}

Json certificate_to_json(const PairingCertificate& c) {
  Json pairs = Json::array();
  auto edges = [](const std::vector<EdgeId>& path) {
    Json a = Json::array();
    for (EdgeId e : path) a.push_back(e + 1);
    return a;
  };
  for (const auto& p : c.pairs)
    pairs.push_back({{"vertex", p.vertex},
                     {"A", edges(p.a_path)},
                     {"B", edges(p.b_path)},
                     {"A_label", p.a_label},
                     {"B_label", p.b_label}});
  return pairs;
}

Json integer_to_json(const BigInt& value) {
  if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max())
    return value.convert_to<std::int64_t>();
  return value.str();
}

Json vector_to_json(const Int64Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(integer_to_json(v(i)));
  return a;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON: " + e.what());
  }
}

std::string tree_to_dot(const ColoredTree& tree, const std::vector<std::string>& edge_labels) {
  std::ostringstream out;
  out << "digraph colored_tree {\n  node [shape=circle];\n";
  for (int v = 0; v < tree.num_nodes(); ++v) {
    const auto& node = tree.node(v);
    out << "  n" << v;
    if (node.label != 0)
      out << " [label=\"" << node.label << "\", style=filled, fillcolor=gray80];\n";
    else
      out << " [label=\"v" << node.coordinate + 1 << "\"];\n";
  }
  for (EdgeId e = 0; e < tree.num_edges(); ++e) {
    const std::string label =
        e < static_cast<EdgeId>(edge_labels.size()) ? edge_labels[e] : "x" + std::to_string(e + 1);
    out << "  n" << tree.edge_parent(e) << " -> n" << tree.edge_child(e) << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string pushpull_to_csv(const PushPull& pp) {
  std::ostringstream out;
  out << "subset";
  for (const auto& p : pp.partitions()) out << ",\"" << p.key() << '"';
  out << '\n';
  for (std::size_t i = 0; i < pp.subsets().size(); ++i) {
    out << '"' << pp.subsets()[i].key() << '"';
    for (Eigen::Index j = 0; j < pp.matrix().cols(); ++j) out << ',' << pp.matrix()(i, j);
    out << '\n';
  }
  return out.str();
}

std::string relations_to_csv(const IntMatrix& relations, const std::vector<Partition>& partitions) {
  std::ostringstream out;
  out << "relation";
  for (const auto& p : partitions) out << ",\"" << p.key() << '"';
  out << '\n';
  for (Eigen::Index r = 0; r < relations.rows(); ++r) {
    out << r + 1;
    for (Eigen::Index j = 0; j < relations.cols(); ++j) out << ',' << relations(r, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace cartier::io
