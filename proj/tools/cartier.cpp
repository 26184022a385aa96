// Command line front end: boundary strata, local toric data of colored trees,
// and the global Cartier lattice.
//
// Exit status: 0 on success, 2 on invalid input, 3 when two independent
// computations of the same quantity disagree.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cartier/cones.hpp"
#include "cartier/errors.hpp"
#include "cartier/global_divisors.hpp"
#include "cartier/io.hpp"
#include "cartier/local_divisors.hpp"
#include "cartier/weights.hpp"

using namespace cartier;
using io::Json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

int env_bound(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const int value = std::stoi(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw InvalidInput(std::string(name) + " must be an integer, got '" + raw + "'");
  }
}

void check_bound(int n, const char* variable, int fallback) {
  const int bound = env_bound(variable, fallback);
  if (n > bound)
    throw InvalidInput("n = " + std::to_string(n) + " exceeds the configured bound " + std::to_string(bound) +
                       " (set " + variable + " to raise it)");
}

struct Options {
  std::string format = "json";
  int n = 0;
  int s = 0;
  std::string verb;
  std::string tree_file;
  std::string newick;
  std::string divisor_file;
  std::string multisets_file;
  std::string subset;
  std::string fij;
  bool type_one = false;
};

Json stamped() {
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw InvalidInput("--format " + o.format + " is not available for this command");
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

// ---------------------------------------------------------------------------

int run_strata(const Options& o) {
  require_format(o, {"json", "csv"});
  check_bound(o.n, "CARTIER_MAX_N", 8);
  if (o.s > 0) {
    const auto strata = enumerate_strata_multi(o.n, o.s);
    if (o.format == "csv") {
      std::cout << "type,label,scalings\n";
      for (auto s : strata.type_one) std::cout << "I," << quoted(s.key()) << ",\n";
      for (const auto& t : strata.type_two)
        std::cout << "II," << quoted(t.partition.key()) << ',' << quoted(t.scalings.key()) << '\n';
      return 0;
    }
    Json j = stamped();
    j["n"] = o.n;
    j["s"] = o.s;
    j["typeI"] = Json::array();
    for (auto s : strata.type_one) j["typeI"].push_back(s.key());
    j["typeII"] = Json::array();
    for (const auto& t : strata.type_two)
      j["typeII"].push_back({{"partition", t.partition.key()}, {"scalings", t.scalings.key()}});
    j["counts"] = {{"typeI", strata.type_one.size()}, {"typeII", strata.type_two.size()}};
    emit(j);
    return 0;
  }
  const auto strata = enumerate_strata(o.n);
  if (o.format == "csv") {
    std::cout << "type,label\n";
    for (auto s : strata.type_one) std::cout << "I," << quoted(s.key()) << '\n';
    for (const auto& p : strata.type_two) std::cout << "II," << quoted(p.key()) << '\n';
    return 0;
  }
  Json j = stamped();
  j["n"] = o.n;
  j["typeI"] = Json::array();
  for (auto s : strata.type_one) j["typeI"].push_back(s.key());
  j["typeII"] = Json::array();
  for (const auto& p : strata.type_two) j["typeII"].push_back(p.key());
  j["counts"] = {{"typeI", strata.type_one.size()}, {"typeII", strata.type_two.size()}};
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

TreeData load_tree_data(const Options& o) {
  if (!o.newick.empty()) return ColoredTree::from_newick(o.newick).data();
  if (o.tree_file.empty()) throw InvalidInput("tree commands need --tree FILE or --newick TEXT");
  return io::tree_from_json(io::read_json_file(o.tree_file));
}

int run_tree_validate(const Options& o, const TreeData& data) {
  const auto report = validate_tree(data);
  Json j = stamped();
  j["valid"] = report.ok();
  j["checks"] = Json::array();
  for (const auto& c : report.checks) {
    Json check{{"name", c.name}, {"passed", c.passed}};
    if (!c.passed) check["detail"] = c.detail;
    j["checks"].push_back(check);
  }
  if (report.ok()) {
    const ColoredTree tree(data);
    if (o.format == "dot") {
      std::cout << io::tree_to_dot(tree);
      return 0;
    }
    j["newick"] = tree.newick();
    j["n"] = tree.num_colored();
    j["g"] = tree.num_uncolored();
    j["reduced"] = io::tree_to_json(tree);
  }
  emit(j);
  return report.ok() ? 0 : kExitInvalid;
}

int run_tree_weights(const Options& o, const ColoredTree& tree) {
  const auto weights = label_weights(tree);
  if (o.format == "dot") {
    std::vector<std::string> labels;
    for (EdgeId e = 0; e < tree.num_edges(); ++e)
      labels.push_back("x" + std::to_string(e + 1) + ": " + format_vector(weights[e]));
    std::cout << io::tree_to_dot(tree, labels);
    return 0;
  }
  if (o.format == "csv") {
    std::cout << "edge,parent,child";
    for (int k = 1; k <= tree.num_uncolored(); ++k) std::cout << ",e" << k;
    std::cout << '\n';
    for (EdgeId e = 0; e < tree.num_edges(); ++e) {
      std::cout << e + 1 << ',' << tree.edge_parent(e) << ',' << tree.edge_child(e);
      for (Eigen::Index k = 0; k < weights[e].size(); ++k) std::cout << ',' << weights[e](k);
      std::cout << '\n';
    }
    return 0;
  }
  Json j = stamped();
  j["newick"] = tree.newick();
  j["g"] = tree.num_uncolored();
  const auto s = total_weight(tree);
  j["total_weight"] = io::vector_to_json(s);
  j["edges"] = Json::object();
  for (EdgeId e = 0; e < tree.num_edges(); ++e)
    j["edges"][std::to_string(e + 1)] = {{"weight", io::vector_to_json(weights[e])},
                                         {"text", format_vector(weights[e])}};
  if (!o.multisets_file.empty()) {
    const Json m = io::read_json_file(o.multisets_file);
    if (!m.is_object() || !m.contains("A") || !m.contains("B"))
      throw InvalidInput("multiset file needs \"A\" and \"B\" objects");
    const auto a = io::multiset_from_json(m["A"]);
    const auto b = io::multiset_from_json(m["B"]);
    const bool equal = weight_sum_equal(tree, a, b);
    const auto cert = pairing_certificate(tree, a, b);
    if (equal != cert.has_value())
      throw PropertyViolation("weight comparison and pairing certificate disagree");
    if (cert && !verify_certificate(tree, a, b, *cert)) throw PropertyViolation("pairing certificate fails to verify");
    Json pairing{{"A", io::multiset_to_json(a)}, {"B", io::multiset_to_json(b)}, {"weight_sum_equal", equal}};
    pairing["certificate"] = cert ? io::certificate_to_json(*cert) : Json(nullptr);
    j["pairing"] = pairing;
  }
  emit(j);
  return 0;
}

int run_tree_cone(const Options& o, const ColoredTree& tree) {
  require_format(o, {"json", "dot"});
  if (o.format == "dot") {
    std::cout << io::tree_to_dot(tree);
    return 0;
  }
  Json j = stamped();
  j["newick"] = tree.newick();
  j["g"] = tree.num_uncolored();
  j["generators"] = Json::array();
  for (const auto& v : generators(tree)) j["generators"].push_back(io::vector_to_json(v));
  j["ray_count"] = ray_count(tree);
  const int cap = env_bound("CARTIER_DUALITY_MAX_G", kDefaultDualityMaxUncolored);
  if (tree.num_uncolored() <= cap) {
    const auto report = verify_duality(tree, cap);
    j["checks"] = Json::object();
    for (const auto& c : report.checks) j["checks"][c.name] = c.passed;
    if (!report.ok()) {
      emit(j);
      throw PropertyViolation("duality checks failed for " + tree.newick());
    }
  } else {
    j["checks"] = nullptr;
    j["checks_skipped"] = "g exceeds CARTIER_DUALITY_MAX_G = " + std::to_string(cap);
  }
  emit(j);
  return 0;
}

int run_tree_rays(const Options& o, const ColoredTree& tree) {
  require_format(o, {"json", "csv", "dot"});
  if (o.format == "dot") {
    std::cout << io::tree_to_dot(tree);
    return 0;
  }
  const auto subsets = minimally_complete_subsets(tree);
  if (o.format == "csv") {
    std::cout << "subset,partition";
    for (int k = 1; k <= tree.num_uncolored(); ++k) std::cout << ",e" << k;
    std::cout << '\n';
    for (const auto& y : subsets) {
      std::cout << quoted(edge_subset_key(y)) << ',' << quoted(partition_of_subset(tree, y).key());
      const auto v = ray_of_subset(tree, y);
      for (Eigen::Index k = 0; k < v.size(); ++k) std::cout << ',' << v(k);
      std::cout << '\n';
    }
    return 0;
  }
  Json j = stamped();
  j["newick"] = tree.newick();
  j["rays"] = Json::array();
  for (const auto& y : subsets) {
    const auto v = ray_of_subset(tree, y);
    j["rays"].push_back({{"subset", edge_subset_key(y)},
                         {"ray", io::vector_to_json(v)},
                         {"text", format_vector(v)},
                         {"partition", partition_of_subset(tree, y).key()}});
  }
  emit(j);
  return 0;
}

int run_tree_mcs(const Options& o, const ColoredTree& tree) {
  require_format(o, {"json", "csv", "dot"});
  if (o.format == "dot") {
    std::cout << io::tree_to_dot(tree);
    return 0;
  }
  const auto subsets = minimally_complete_subsets(tree);
  if (o.format == "csv") {
    std::cout << "subset,partition\n";
    for (const auto& y : subsets)
      std::cout << quoted(edge_subset_key(y)) << ',' << quoted(partition_of_subset(tree, y).key()) << '\n';
    return 0;
  }
  Json j = stamped();
  j["newick"] = tree.newick();
  j["subsets"] = Json::array();
  j["partitions"] = Json::array();
  for (const auto& y : subsets) {
    j["subsets"].push_back(edge_subset_key(y));
    j["partitions"].push_back(partition_of_subset(tree, y).key());
  }
  emit(j);
  return 0;
}

int run_tree_cartier(const Options& o, const ColoredTree& tree) {
  require_format(o, {"json", "dot"});
  if (o.format == "dot") {
    std::cout << io::tree_to_dot(tree);
    return 0;
  }
  const LocalModel model(tree);
  Json j = stamped();
  j["newick"] = tree.newick();
  j["subsets"] = Json::array();
  for (const auto& y : model.subsets()) j["subsets"].push_back(edge_subset_key(y));
  if (o.divisor_file.empty()) {
    j["generators"] = Json::array();
    const auto gens = local_cartier_generators(tree);
    for (int k = 0; k < tree.num_uncolored(); ++k) {
      const auto decision = model.decide(gens[k]);
      j["generators"].push_back({{"vertex", k + 1},
                                 {"coefficients", io::local_divisor_to_json(gens[k])},
                                 {"witness", io::vector_to_json(*decision.witness)}});
    }
    j["relations"] = Json::array();
    for (Eigen::Index r = 0; r < model.relations().rows(); ++r)
      j["relations"].push_back(io::vector_to_json(IntVector(model.relations().row(r).transpose())));
    emit(j);
    return 0;
  }
  const auto a = io::local_divisor_from_json(io::read_json_file(o.divisor_file));
  const auto decision = model.decide(a);
  j["cartier"] = decision.cartier;
  if (decision.witness) {
    j["witness"] = io::vector_to_json(*decision.witness);
    Json coords = Json::array();
    for (const auto& c : cartier_coordinates(tree, a)) coords.push_back(io::integer_to_json(c));
    j["generator_coordinates"] = coords;
  }
  if (decision.violated_relation) {
    Json m = Json::array();
    for (auto x : *decision.violated_relation) m.push_back(x);
    j["violated_relation"] = m;
  }
  emit(j);
  return 0;
}

int run_tree(const Options& o) {
  const TreeData data = load_tree_data(o);
  if (o.verb == "validate") return run_tree_validate(o, data);
  const ColoredTree tree(data);
  if (o.verb == "weights") return run_tree_weights(o, tree);
  if (tree.num_uncolored() == 0) throw InvalidInput("tree has no uncolored vertex");
  if (o.verb == "cone") return run_tree_cone(o, tree);
  if (o.verb == "rays") return run_tree_rays(o, tree);
  if (o.verb == "mcs") return run_tree_mcs(o, tree);
  return run_tree_cartier(o, tree);
}

// ---------------------------------------------------------------------------

Json sparse_over_partitions(const IntVector& v, const std::vector<Partition>& partitions) {
  Json j = Json::object();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) j[partitions[i].key()] = io::integer_to_json(v(i));
  return j;
}

DivisorVector load_divisor(const Options& o) {
  if (o.divisor_file.empty()) throw InvalidInput("this command needs --divisor FILE");
  auto d = io::divisor_from_json(io::read_json_file(o.divisor_file));
  if (o.n != 0 && o.n != d.n)
    throw InvalidInput("--n " + std::to_string(o.n) + " does not match divisor n = " + std::to_string(d.n));
  return d;
}

int run_global(const Options& o) {
  if (o.verb == "decide" || o.verb == "witness") {
    const DivisorVector d = load_divisor(o);
    require_format(o, {"json"});
    check_bound(d.n, "CARTIER_MAX_N", 8);
    const GlobalCartierLattice lattice(d.n);
    const IntVector v = lattice.type_two_vector(d);
    const bool member = lattice.contains(v);
    if (o.verb == "witness") {
      const IntVector k = lattice.witness(v);  // throws NotCartier
      if (!member) throw PropertyViolation("witness verified for a vector outside the image");
      Json j = stamped();
      j["n"] = d.n;
      j["witness"] = Json::object();
      for (std::size_t i = 0; i < lattice.pushpull().subsets().size(); ++i)
        if (k(i) != 0) j["witness"][lattice.pushpull().subsets()[i].key()] = io::integer_to_json(k(i));
      j["verified"] = true;
      emit(j);
      return 0;
    }
    Json j = stamped();
    j["cartier"] = member;
    if (!member) {
      const IntMatrix relations = linalg::kernel_basis(lattice.pushpull().matrix());
      const IntVector products = relations * v;
      for (Eigen::Index r = 0; r < products.size(); ++r)
        if (products(r) != 0) {
          j["violated_relation"] =
              sparse_over_partitions(IntVector(relations.row(r).transpose()), lattice.pushpull().partitions());
          j["relation_value"] = io::integer_to_json(products(r));
          break;
        }
      if (!j.contains("violated_relation"))
        throw PropertyViolation("vector outside the image satisfies every relation");
    }
    emit(j);
    return 0;
  }

  if (o.n == 0) throw InvalidInput("this command needs --n N");
  if (o.verb == "crosscheck") {
    require_format(o, {"json"});
    check_bound(o.n, "CARTIER_CROSSCHECK_MAX_N", 5);
    const auto report = local_global_crosscheck(o.n);
    Json j = stamped();
    j["n"] = report.n;
    j["trees"] = report.trees;
    j["local_relations"] = report.local_relations;
    j["image_rank"] = report.image_rank;
    j["local_rank"] = report.local_rank;
    j["image_equal"] = report.image_equal;
    j["relations_equal"] = report.relations_equal;
    j["ok"] = report.ok();
    if (report.separating_vector) {
      j["separating_vector"] = sparse_over_partitions(*report.separating_vector, nontrivial_partitions(o.n));
      j["separating_detail"] = report.separating_detail;
    }
    emit(j);
    if (!report.ok()) throw PropertyViolation("local and global Cartier lattices differ");
    return 0;
  }

  check_bound(o.n, "CARTIER_MAX_N", 8);
  if (o.verb == "rank") {
    require_format(o, {"json", "csv"});
    const auto r = pushpull_rank(o.n);
    if (o.format == "csv")
      std::cout << "n,rank\n" << o.n << ',' << r << '\n';
    else
      std::cout << r << '\n';
    return 0;
  }
  if (o.verb == "relations") {
    require_format(o, {"json", "csv"});
    const auto partitions = nontrivial_partitions(o.n);
    const IntMatrix relations = relations_basis(o.n);
    if (o.format == "csv") {
      std::cout << io::relations_to_csv(relations, partitions);
      return 0;
    }
    Json j = stamped();
    j["n"] = o.n;
    j["rank"] = relations.rows();
    j["partitions"] = Json::array();
    for (const auto& p : partitions) j["partitions"].push_back(p.key());
    j["relations"] = Json::array();
    for (Eigen::Index r = 0; r < relations.rows(); ++r)
      j["relations"].push_back(io::vector_to_json(IntVector(relations.row(r).transpose())));
    emit(j);
    return 0;
  }
  if (o.verb == "pushpull") {
    require_format(o, {"json", "csv"});
    const PushPull pp(o.n);
    if (o.format == "csv") {
      std::cout << io::pushpull_to_csv(pp);
      return 0;
    }
    Json j = stamped();
    j["n"] = o.n;
    j["subsets"] = Json::array();
    for (auto s : pp.subsets()) j["subsets"].push_back(s.key());
    j["partitions"] = Json::array();
    for (const auto& p : pp.partitions()) j["partitions"].push_back(p.key());
    j["matrix"] = Json::array();
    for (Eigen::Index i = 0; i < pp.matrix().rows(); ++i)
      j["matrix"].push_back(io::vector_to_json(IntVector(pp.matrix().row(i).transpose())));
    emit(j);
    return 0;
  }
  if (o.verb == "simple") {
    require_format(o, {"json"});
    Json j = stamped();
    j["n"] = o.n;
    j["simple_partitions"] = Json::array();
    for (const auto& p : simple_partitions(o.n)) j["simple_partitions"].push_back(p.key());
    j["count"] = j["simple_partitions"].size();
    emit(j);
    return 0;
  }
  // pullback
  require_format(o, {"json"});
  if (o.subset.empty() == o.fij.empty()) throw InvalidInput("pullback needs exactly one of --subset or --fij");
  DivisorVector d;
  if (!o.subset.empty()) {
    Subset s;
    try {
      s = Subset::parse(o.subset);
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("--subset: ") + e.what());
    }
    d = pullback_forgetful(o.n, s);
  } else {
    std::vector<int> ij;
    try {
      ij = Subset::parse(o.fij).elements();
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("--fij: ") + e.what());
    }
    if (ij.size() != 2) throw InvalidInput("--fij needs two distinct markings i,j");
    d = o.type_one ? pullback_fij_typeI(o.n, ij[0], ij[1]) : pullback_fij(o.n, ij[0], ij[1]);
  }
  Json j = io::divisor_to_json(d);
  j["schema_version"] = io::kSchemaVersion;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary divisor lattices of moduli of scaled marked lines"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "dot"}))
      ->capture_default_str();

  auto* strata = app.add_subcommand("strata", "Boundary divisor labels");
  strata->add_option("--n", o.n, "Number of markings")->required()->check(CLI::Range(1, kMaxGlobalMarkings));
  strata->add_option("--s", o.s, "Number of scalings")->check(CLI::Range(1, kMaxMarkings));

  auto* tree = app.add_subcommand("tree", "Local data of one colored tree");
  tree->add_option("verb", o.verb, "validate | weights | cone | rays | mcs | cartier-local")
      ->required()
      ->check(CLI::IsMember({"validate", "weights", "cone", "rays", "mcs", "cartier-local"}));
  auto* tree_file = tree->add_option("--tree", o.tree_file, "Tree JSON file");
  auto* newick = tree->add_option("--newick", o.newick, "Tree in nested notation, e.g. ((1,2),(3,4))");
  tree_file->excludes(newick);
  tree->add_option("--divisor", o.divisor_file, "Local divisor JSON file (cartier-local)");
  tree->add_option("--multisets", o.multisets_file, "Edge multisets {\"A\":{...},\"B\":{...}} (weights)");

  auto* global = app.add_subcommand("global", "Global Cartier lattice");
  global->add_option("verb", o.verb, "rank | relations | decide | witness | pullback | crosscheck | pushpull | simple")
      ->required()
      ->check(CLI::IsMember({"rank", "relations", "decide", "witness", "pullback", "crosscheck", "pushpull", "simple"}));
  global->add_option("--n", o.n, "Number of markings")->check(CLI::Range(2, kMaxGlobalMarkings));
  global->add_option("--divisor", o.divisor_file, "Divisor JSON file (decide, witness)");
  global->add_option("--subset", o.subset, "Subset S for the forgetful pullback, e.g. 1,2");
  global->add_option("--fij", o.fij, "Markings i,j for the pullback along f_ij");
  global->add_flag("--type-one", o.type_one, "Type I variant of the f_ij pullback");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (strata->parsed()) return run_strata(o);
    if (tree->parsed()) return run_tree(o);
    return run_global(o);
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::length_error& e) {
    std::cerr << "input too large: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
