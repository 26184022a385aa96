#include "cartier/partition.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace cartier {

namespace {

int parse_int(std::string_view token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty())
    throw std::invalid_argument("expected an integer, got '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void check_element(int element) {
  if (element < 1 || element > kMaxMarkings)
    throw std::invalid_argument("element " + std::to_string(element) + " outside 1.." +
                                std::to_string(kMaxMarkings));
}

}  // namespace

Subset::Subset(std::initializer_list<int> elements)
    : Subset(from_elements(std::span<const int>(elements.begin(), elements.size()))) {}

Subset Subset::from_elements(std::span<const int> elements) {
  std::uint32_t mask = 0;
  for (int e : elements) {
    check_element(e);
    const std::uint32_t bit = 1u << (e - 1);
    if (mask & bit) throw std::invalid_argument("repeated element " + std::to_string(e));
    mask |= bit;
  }
  return Subset(mask);
}

Subset Subset::full(int n) {
  if (n < 0 || n > kMaxMarkings) throw std::invalid_argument("marking count out of range");
  return Subset((1u << n) - 1u);
}

Subset Subset::singleton(int element) {
  check_element(element);
  return Subset(1u << (element - 1));
}

Subset Subset::parse(std::string_view key) {
  if (key.empty()) throw std::invalid_argument("empty subset key");
  std::vector<int> elements;
  for (auto token : split(key, ',')) elements.push_back(parse_int(token));
  return from_elements(elements);
}

int Subset::size() const { return std::popcount(mask_); }

bool Subset::contains(int element) const {
  return element >= 1 && element <= kMaxMarkings && (mask_ >> (element - 1)) & 1u;
}

int Subset::min() const {
  if (mask_ == 0) throw std::logic_error("min of empty subset");
  return std::countr_zero(mask_) + 1;
}

int Subset::max() const {
  if (mask_ == 0) throw std::logic_error("max of empty subset");
  return 32 - std::countl_zero(mask_);
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Subset::key() const {
  std::string out;
  for (int e : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

std::strong_ordering operator<=>(Subset a, Subset b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  // Same size: the lexicographically smaller element list has the lowest
  // differing bit set.
  const std::uint32_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint32_t lowest = diff & (~diff + 1u);
  return (a.mask_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Partition::Partition(std::vector<Subset> blocks) : blocks_(std::move(blocks)) {
  Subset seen;
  for (auto b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    if (!seen.disjoint(b)) throw std::invalid_argument("partition blocks overlap");
    seen = seen | b;
  }
  std::sort(blocks_.begin(), blocks_.end(), [](Subset x, Subset y) { return x.min() < y.min(); });
}

Partition Partition::parse(std::string_view key) {
  if (key.empty()) throw std::invalid_argument("empty partition key");
  std::vector<Subset> blocks;
  for (auto token : split(key, '|')) blocks.push_back(Subset::parse(token));
  return Partition(std::move(blocks));
}

Partition Partition::singletons(int n) {
  std::vector<Subset> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back(Subset::singleton(i));
  return Partition(std::move(blocks));
}

Subset Partition::support() const {
  Subset s;
  for (auto b : blocks_) s = s | b;
  return s;
}

bool Partition::has_block(Subset block) const {
  return std::find(blocks_.begin(), blocks_.end(), block) != blocks_.end();
}

Subset Partition::block_of(int element) const {
  for (auto b : blocks_)
    if (b.contains(element)) return b;
  throw std::out_of_range("element " + std::to_string(element) + " not covered by partition");
}

bool Partition::separates(int i, int j) const { return block_of(i) != block_of(j); }

bool Partition::is_simple() const {
  int large = 0;
  for (auto b : blocks_) large += b.size() >= 2 ? 1 : 0;
  return large <= 1;
}

std::string Partition::key() const {
  std::string out;
  for (auto b : blocks_) {
    if (!out.empty()) out += '|';
    out += b.key();
  }
  return out;
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (a.block_count() != b.block_count()) return b.block_count() <=> a.block_count();
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const auto ea = a.blocks_[i].elements();
    const auto eb = b.blocks_[i].elements();
    if (auto c = std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
        c != 0)
      return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void extend_partitions(std::uint32_t rest, std::vector<Subset>& prefix, std::vector<Partition>& out) {
  if (rest == 0) {
    out.emplace_back(prefix);
    return;
  }
  const std::uint32_t lowest = rest & (~rest + 1u);
  const std::uint32_t others = rest & ~lowest;
  // Enumerate every submask of `others` to join the lowest element.
  std::uint32_t sub = others;
  for (;;) {
    prefix.emplace_back(lowest | sub);
    extend_partitions(rest & ~(lowest | sub), prefix, out);
    prefix.pop_back();
    if (sub == 0) break;
    sub = (sub - 1) & others;
  }
}

}  // namespace

std::vector<Partition> set_partitions(Subset ground) {
  std::vector<Partition> out;
  if (ground.empty()) return out;
  std::vector<Subset> prefix;
  extend_partitions(ground.mask(), prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> nonempty_subsets(Subset ground) {
  std::vector<Subset> out;
  const std::uint32_t g = ground.mask();
  for (std::uint32_t sub = g; sub != 0; sub = (sub - 1) & g) out.emplace_back(sub);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cartier
