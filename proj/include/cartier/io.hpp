#ifndef CARTIER_IO_HPP
#define CARTIER_IO_HPP

#include <string>

#include <json.hpp>

#include "cartier/global_divisors.hpp"
#include "cartier/local_divisors.hpp"
#include "cartier/trees.hpp"
#include "cartier/weights.hpp"

namespace cartier::io {

using Json = nlohmann::ordered_json;

/// Version stamped into every document the command line tool writes.
inline constexpr int kSchemaVersion = 1;

/// {"root": id, "vertices": [{"id", "colored", "label"?}], "edges": [[p, c]]}
TreeData tree_from_json(const Json& j);
Json tree_to_json(const TreeData& data);
inline Json tree_to_json(const ColoredTree& tree) { return tree_to_json(tree.data()); }

/// {"n": int, "typeI": {"1,2": c}, "typeII": {"1,2|3|4": c}}
DivisorVector divisor_from_json(const Json& j);
Json divisor_to_json(const DivisorVector& d);

/// {"1,2": c, "3,4,5,6": c} keyed by 1-based edge subsets, optionally
/// wrapped as {"coefficients": {...}}.
LocalDivisorVector local_divisor_from_json(const Json& j);
Json local_divisor_to_json(const LocalDivisorVector& a);

/// {"1": 3, "5": 1} keyed by 1-based edge ids.
EdgeMultiset multiset_from_json(const Json& j);
Json multiset_to_json(const EdgeMultiset& m);

Json certificate_to_json(const PairingCertificate& c);

/// Integer that fits int64 becomes a JSON number, anything larger a string.
Json integer_to_json(const BigInt& value);
Json vector_to_json(const Int64Vector& v);
Json vector_to_json(const IntVector& v);

/// Parses a whole file; throws InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Graphviz rendering; edge labels default to "x1", "x2", ...
std::string tree_to_dot(const ColoredTree& tree, const std::vector<std::string>& edge_labels = {});

/// Header row of column keys, then one row per subset.
std::string pushpull_to_csv(const PushPull& pp);
/// Header row of partition keys, then one row per relation.
std::string relations_to_csv(const IntMatrix& relations, const std::vector<Partition>& partitions);

}  // namespace cartier::io

#endif  // CARTIER_IO_HPP
