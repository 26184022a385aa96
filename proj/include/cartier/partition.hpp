#ifndef CARTIER_PARTITION_HPP
#define CARTIER_PARTITION_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cartier {

/// Largest marking count representable by the bitmask encoding.
inline constexpr int kMaxMarkings = 30;

/// A finite subset of {1, ..., kMaxMarkings}, stored as a bitmask.
///
/// Ordered canonically: by size, then lexicographically by sorted elements.
/// Rendered as "1,2,4".
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::uint32_t mask) : mask_(mask) {}
  Subset(std::initializer_list<int> elements);
  static Subset from_elements(std::span<const int> elements);
  /// {1, ..., n}
  static Subset full(int n);
  static Subset singleton(int element);
  /// Parses "1,2,4"; throws std::invalid_argument on malformed input.
  static Subset parse(std::string_view key);

  std::uint32_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int element) const;
  bool contains(Subset other) const { return (other.mask_ & ~mask_) == 0; }
  bool disjoint(Subset other) const { return (mask_ & other.mask_) == 0; }
  /// Smallest element; the subset must be nonempty.
  int min() const;
  int max() const;
  std::vector<int> elements() const;
  std::string key() const;

  Subset operator|(Subset other) const { return Subset(mask_ | other.mask_); }
  Subset operator&(Subset other) const { return Subset(mask_ & other.mask_); }
  Subset minus(Subset other) const { return Subset(mask_ & ~other.mask_); }

  friend bool operator==(Subset a, Subset b) { return a.mask_ == b.mask_; }
  friend std::strong_ordering operator<=>(Subset a, Subset b);

 private:
  std::uint32_t mask_ = 0;
};

/// A set partition into nonempty disjoint blocks, sorted by minimum element.
///
/// Ordered canonically: more blocks first, then lexicographically by blocks.
/// Rendered as "1,2|3|4".
class Partition {
 public:
  Partition() = default;
  /// Canonicalizes block order; throws std::invalid_argument if blocks are
  /// empty or overlap.
  explicit Partition(std::vector<Subset> blocks);
  static Partition parse(std::string_view key);
  static Partition singletons(int n);

  const std::vector<Subset>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  Subset support() const;
  bool has_block(Subset block) const;
  /// The block containing element; throws std::out_of_range if absent.
  Subset block_of(int element) const;
  bool separates(int i, int j) const;
  /// One distinguished block with singletons everywhere else.
  bool is_simple() const;
  std::string key() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

 private:
  std::vector<Subset> blocks_;
};

/// Every set partition of ground, including the one-block partition, in
/// canonical order.
std::vector<Partition> set_partitions(Subset ground);

/// Every nonempty subset of ground in canonical order.
std::vector<Subset> nonempty_subsets(Subset ground);

}  // namespace cartier

#endif  // CARTIER_PARTITION_HPP
