#include "cartier/global_divisors.hpp"

#include <algorithm>

#include "cartier/errors.hpp"
#include "cartier/local_divisors.hpp"
#include "cartier/trees.hpp"

namespace cartier {

namespace {

void check_n(int n) {
  if (n < 2 || n > kMaxGlobalMarkings)
    throw InvalidInput("n = " + std::to_string(n) + " outside 2.." + std::to_string(kMaxGlobalMarkings));
}

void check_label(int n, int i) {
  if (i < 1 || i > n) throw InvalidInput("marking " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

/// First row of `from` that is not in the lattice of `into`.
std::optional<IntVector> first_outside(const IntMatrix& from, const IntMatrix& into) {
  for (Eigen::Index r = 0; r < from.rows(); ++r) {
    const IntVector v = from.row(r).transpose();
    if (!linalg::lattice_contains(into, v)) return v;
  }
  return std::nullopt;
}

}  // namespace

Strata enumerate_strata(int n) {
  check_n(n);
  Strata s;
  for (auto subset : nonempty_subsets(Subset::full(n)))
    if (subset.size() >= 2) s.type_one.push_back(subset);
  s.type_two = nontrivial_partitions(n);
  return s;
}

std::vector<Subset> proper_subsets(int n) {
  check_n(n);
  auto all = nonempty_subsets(Subset::full(n));
  all.pop_back();  // the full set sorts last
  return all;
}

std::vector<Partition> nontrivial_partitions(int n) {
  check_n(n);
  auto all = set_partitions(Subset::full(n));
  all.pop_back();  // the one-block partition sorts last
  return all;
}

MultiStrata enumerate_strata_multi(int n, int s) {
  if (n < 1 || n > kMaxGlobalMarkings) throw InvalidInput("n = " + std::to_string(n) + " out of range");
  if (s < 1 || s > kMaxMarkings) throw InvalidInput("s = " + std::to_string(s) + " out of range");
  MultiStrata out;
  for (auto subset : nonempty_subsets(Subset::full(n)))
    if (subset.size() >= 2) out.type_one.push_back(subset);
  if (n < 2) return out;
  const auto scalings = nonempty_subsets(Subset::full(s));
  for (const auto& p : nontrivial_partitions(n))
    for (auto j : scalings) out.type_two.push_back({p, j});
  return out;
}

// ---------------------------------------------------------------------------

PushPull::PushPull(int n) : n_(n), subsets_(proper_subsets(n)), partitions_(nontrivial_partitions(n)) {
  linalg::check_size(static_cast<Eigen::Index>(subsets_.size()), static_cast<Eigen::Index>(partitions_.size()));
  for (std::size_t i = 0; i < subsets_.size(); ++i) subset_index_[subsets_[i].mask()] = static_cast<int>(i);
  for (std::size_t j = 0; j < partitions_.size(); ++j) partition_index_[partitions_[j].key()] = static_cast<int>(j);
  matrix_ = IntMatrix::Zero(static_cast<Eigen::Index>(subsets_.size()), static_cast<Eigen::Index>(partitions_.size()));
  for (std::size_t j = 0; j < partitions_.size(); ++j)
    for (auto block : partitions_[j].blocks()) matrix_(subset_index_.at(block.mask()), static_cast<Eigen::Index>(j)) = 1;
}

int PushPull::subset_index(Subset s) const {
  auto it = subset_index_.find(s.mask());
  return it == subset_index_.end() ? -1 : it->second;
}

int PushPull::partition_index(const Partition& p) const {
  auto it = partition_index_.find(p.key());
  return it == partition_index_.end() ? -1 : it->second;
}

IntVector PushPull::pull(const IntVector& k) const {
  if (k.size() != matrix_.rows())
    throw InvalidInput("subset vector has " + std::to_string(k.size()) + " entries, expected " +
                       std::to_string(matrix_.rows()));
  IntVector out = IntVector::Zero(matrix_.cols());
  for (std::size_t j = 0; j < partitions_.size(); ++j)
    for (auto block : partitions_[j].blocks()) out(static_cast<Eigen::Index>(j)) += k(subset_index_.at(block.mask()));
  return out;
}

IntMatrix relations_basis(int n) { return linalg::kernel_basis(PushPull(n).matrix()); }

Eigen::Index pushpull_rank(int n) { return linalg::rank(PushPull(n).matrix()); }

void validate_divisor(const DivisorVector& d) {
  check_n(d.n);
  const Subset full = Subset::full(d.n);
  for (const auto& [s, c] : d.type_one)
    if (s.size() < 2 || !full.contains(s)) throw InvalidInput("type I label " + s.key() + " is not a boundary label");
  for (const auto& [p, c] : d.type_two)
    if (p.block_count() < 2 || p.support() != full)
      throw InvalidInput("type II label " + p.key() + " is not a partition of 1.." + std::to_string(d.n));
}

std::vector<Partition> simple_partitions(int n) {
  std::vector<Partition> out;
  for (const auto& p : nontrivial_partitions(n))
    if (p.is_simple()) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------

GlobalCartierLattice::GlobalCartierLattice(int n)
    : pushpull_(n), system_(IntMatrix(pushpull_.matrix().transpose())) {
  const Subset full = Subset::full(n);
  singletons_index_ = pushpull_.partition_index(Partition::singletons(n));
  for (auto s : pushpull_.subsets()) {
    std::vector<Subset> blocks{s};
    for (int i : full.minus(s).elements()) blocks.push_back(Subset::singleton(i));
    simple_index_.push_back(pushpull_.partition_index(Partition(std::move(blocks))));
  }
}

IntVector GlobalCartierLattice::type_two_vector(const DivisorVector& d) const {
  validate_divisor(d);
  if (d.n != pushpull_.n())
    throw InvalidInput("divisor has n = " + std::to_string(d.n) + ", lattice has n = " + std::to_string(pushpull_.n()));
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(pushpull_.partitions().size()));
  for (const auto& [p, c] : d.type_two) v(pushpull_.partition_index(p)) = c;
  return v;
}

std::optional<IntVector> GlobalCartierLattice::solve(const IntVector& type_two) const {
  if (type_two.size() != static_cast<Eigen::Index>(pushpull_.partitions().size()))
    throw InvalidInput("type II vector has the wrong length");
  return system_.solve(type_two);
}

bool GlobalCartierLattice::contains(const IntVector& type_two) const { return solve(type_two).has_value(); }

bool GlobalCartierLattice::is_cartier(const DivisorVector& d) const { return contains(type_two_vector(d)); }

IntVector GlobalCartierLattice::witness(const IntVector& type_two) const {
  if (type_two.size() != static_cast<Eigen::Index>(pushpull_.partitions().size()))
    throw InvalidInput("type II vector has the wrong length");
  const auto& subsets = pushpull_.subsets();
  IntVector k = IntVector::Zero(static_cast<Eigen::Index>(subsets.size()));
  // Singletons first: all weight on {1}.  They sort before larger subsets.
  k(pushpull_.subset_index(Subset::singleton(1))) = type_two(singletons_index_);
  const Subset full = Subset::full(pushpull_.n());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const Subset s = subsets[i];
    if (s.size() < 2) continue;
    BigInt value = type_two(simple_index_[i]);
    for (int j : full.minus(s).elements()) value -= k(pushpull_.subset_index(Subset::singleton(j)));
    k(static_cast<Eigen::Index>(i)) = value;
  }
  if (pushpull_.pull(k) != type_two) throw NotCartier("type II part is not in the image of the pullback");
  return k;
}

bool is_cartier_global(const DivisorVector& d) { return GlobalCartierLattice(d.n).is_cartier(d); }

IntVector cartier_witness(const DivisorVector& d) {
  const GlobalCartierLattice lattice(d.n);
  return lattice.witness(lattice.type_two_vector(d));
}

DivisorVector pullback_forgetful(int n, Subset s) {
  check_n(n);
  if (s.size() < 2 || s.size() > n - 1 || !Subset::full(n).contains(s))
    throw InvalidInput("subset " + s.key() + " needs 2 <= |S| <= n - 1 inside 1.." + std::to_string(n));
  DivisorVector d;
  d.n = n;
  d.type_one[s] = 1;
  for (const auto& p : nontrivial_partitions(n))
    if (p.has_block(s)) d.type_two[p] = 1;
  return d;
}

DivisorVector pullback_fij(int n, int i, int j) {
  check_n(n);
  check_label(n, i);
  check_label(n, j);
  if (i == j) throw InvalidInput("pullback needs two distinct markings");
  DivisorVector d;
  d.n = n;
  for (const auto& p : nontrivial_partitions(n))
    if (p.separates(i, j)) d.type_two[p] = 1;
  return d;
}

DivisorVector pullback_fij_typeI(int n, int i, int j) {
  check_n(n);
  check_label(n, i);
  check_label(n, j);
  if (i == j) throw InvalidInput("pullback needs two distinct markings");
  DivisorVector d;
  d.n = n;
  const Subset pair{i, j};
  for (auto s : nonempty_subsets(Subset::full(n)))
    if (s.contains(pair)) d.type_one[s] = 1;
  return d;
}

CrosscheckReport local_global_crosscheck(int n) {
  check_n(n);
  const PushPull pushpull(n);
  const auto columns = static_cast<Eigen::Index>(pushpull.partitions().size());
  CrosscheckReport report;
  report.n = n;

  std::vector<IntVector> rows;
  for (const auto& tree : enumerate_trees(n)) {
    ++report.trees;
    const LocalModel model(tree);
    std::vector<int> column_of;
    for (const auto& y : model.subsets()) {
      const int c = pushpull.partition_index(partition_of_subset(tree, y));
      if (c < 0) throw PropertyViolation("subset {" + edge_subset_key(y) + "} of " + tree.newick() +
                                         " maps to the one-block partition");
      column_of.push_back(c);
    }
    const IntMatrix& rel = model.relations();
    for (Eigen::Index r = 0; r < rel.rows(); ++r) {
      IntVector row = IntVector::Zero(columns);
      for (Eigen::Index j = 0; j < rel.cols(); ++j) row(column_of[j]) += rel(r, j);
      rows.push_back(std::move(row));
    }
  }
  report.local_relations = rows.size();
  IntMatrix local(static_cast<Eigen::Index>(rows.size()), columns);
  for (std::size_t r = 0; r < rows.size(); ++r) local.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();

  const IntMatrix image = linalg::lattice_basis(pushpull.matrix());
  const IntMatrix locally_cartier = linalg::kernel_basis(local);
  report.image_rank = image.rows();
  report.local_rank = locally_cartier.rows();
  report.image_equal = linalg::same_lattice(image, locally_cartier);

  const IntMatrix global_relations = linalg::kernel_basis(pushpull.matrix());
  const IntMatrix local_relations = local.rows() > 0 ? linalg::saturation(local) : IntMatrix(0, columns);
  report.relations_equal = linalg::same_lattice(global_relations, local_relations);

  if (!report.image_equal) {
    if (auto v = first_outside(image, locally_cartier)) {
      report.separating_vector = v;
      report.separating_detail = "in the image but not locally Cartier on every tree";
    } else if (auto w = first_outside(locally_cartier, image)) {
      report.separating_vector = w;
      report.separating_detail = "locally Cartier on every tree but not in the image";
    }
  } else if (!report.relations_equal) {
    if (auto v = first_outside(global_relations, local_relations)) {
      report.separating_vector = v;
      report.separating_detail = "global relation not implied by local relations";
    } else if (auto w = first_outside(local_relations, global_relations)) {
      report.separating_vector = w;
      report.separating_detail = "local relation not a global relation";
    }
  }
  return report;
}

}  // namespace cartier
