#ifndef CARTIER_GLOBAL_DIVISORS_HPP
#define CARTIER_GLOBAL_DIVISORS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartier/integer.hpp"
#include "cartier/intlinalg.hpp"
#include "cartier/partition.hpp"

namespace cartier {

/// Largest n accepted by the global operations; Bell(12) partitions is
/// already far beyond anything the lattice code can digest.
inline constexpr int kMaxGlobalMarkings = 12;

/// Boundary divisor labels of the moduli space with n markings.
struct Strata {
  std::vector<Subset> type_one;      // 2 <= |I| <= n
  std::vector<Partition> type_two;   // at least two blocks
};
Strata enumerate_strata(int n);

/// Nonempty proper subsets of {1..n}: the rows of the push-pull matrix.
std::vector<Subset> proper_subsets(int n);
/// Partitions of {1..n} with at least two blocks: the columns.
std::vector<Partition> nontrivial_partitions(int n);

/// Boundary labels when s of the points are scaled: type II strata also
/// record the nonempty set J of scalings that degenerate.
struct ScaledStratum {
  Partition partition;
  Subset scalings;
};
struct MultiStrata {
  std::vector<Subset> type_one;
  std::vector<ScaledStratum> type_two;
};
MultiStrata enumerate_strata_multi(int n, int s);

/// Incidence of subsets in partitions: entry (S, P) is 1 when S is a block
/// of P.  Multiplying by the transpose pulls subset functions back to
/// partition functions.
class PushPull {
 public:
  explicit PushPull(int n);

  int n() const { return n_; }
  const std::vector<Subset>& subsets() const { return subsets_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  const IntMatrix& matrix() const { return matrix_; }
  /// -1 when absent.
  int subset_index(Subset s) const;
  int partition_index(const Partition& p) const;

  /// Σ_{S ∈ P} k(S) for every partition P.
  IntVector pull(const IntVector& k) const;

 private:
  int n_;
  std::vector<Subset> subsets_;
  std::vector<Partition> partitions_;
  std::map<std::uint32_t, int> subset_index_;
  std::map<std::string, int> partition_index_;
  IntMatrix matrix_;
};

inline PushPull pushpull_matrix(int n) { return PushPull(n); }

/// Hermite basis of the integer kernel of the push-pull matrix, one relation
/// per row, indexed like nontrivial_partitions(n).
IntMatrix relations_basis(int n);
/// Rank of the push-pull matrix.
Eigen::Index pushpull_rank(int n);

/// A Weil boundary divisor with finitely many nonzero coefficients.
struct DivisorVector {
  int n = 0;
  std::map<Subset, std::int64_t> type_one;
  std::map<Partition, std::int64_t> type_two;
};

/// Throws InvalidInput when n is out of range or a key is not a boundary label.
void validate_divisor(const DivisorVector& d);

/// The partitions with one block S and singletons elsewhere, including the
/// all-singletons partition.
std::vector<Partition> simple_partitions(int n);

/// Precomputed push-pull data for repeated Cartier decisions at fixed n.
class GlobalCartierLattice {
 public:
  explicit GlobalCartierLattice(int n);

  const PushPull& pushpull() const { return pushpull_; }
  /// Type II coefficients as a dense vector over nontrivial_partitions(n).
  IntVector type_two_vector(const DivisorVector& d) const;

  /// Membership of a dense type II vector in the image lattice.
  bool contains(const IntVector& type_two) const;
  bool is_cartier(const DivisorVector& d) const;
  /// Some k with pull(k) = type_two, by Hermite back-substitution.
  std::optional<IntVector> solve(const IntVector& type_two) const;
  /// The explicit witness built from simple partitions; verified exactly.
  /// Throws NotCartier when it does not reproduce the input.
  IntVector witness(const IntVector& type_two) const;

 private:
  PushPull pushpull_;
  linalg::IntegerSystem<BigInt> system_;
  std::vector<int> simple_index_;  // subset index -> index of its simple partition
  int singletons_index_;
};

/// Type I coefficients never obstruct; the type II part must lie in the
/// image of the pullback.
bool is_cartier_global(const DivisorVector& d);
/// Witness over proper_subsets(n); throws NotCartier.
IntVector cartier_witness(const DivisorVector& d);

/// Preimage of D_S under the map forgetting the scaling of the markings
/// outside S: D_S plus every D_P with S ∈ P.  Needs 2 <= |S| <= n - 1.
DivisorVector pullback_forgetful(int n, Subset s);
/// Every partition separating i and j, with coefficient 1.
DivisorVector pullback_fij(int n, int i, int j);
/// Every subset containing both i and j, with coefficient 1.
DivisorVector pullback_fij_typeI(int n, int i, int j);

struct CrosscheckReport {
  int n = 0;
  std::size_t trees = 0;
  std::size_t local_relations = 0;
  Eigen::Index image_rank = 0;
  Eigen::Index local_rank = 0;
  /// Locally Cartier everywhere == image of the pullback.
  bool image_equal = false;
  /// Saturated span of all local relations == kernel of the push-pull matrix.
  bool relations_equal = false;
  /// On mismatch, a vector in one lattice but not the other.
  std::optional<IntVector> separating_vector;
  std::string separating_detail;
  bool ok() const { return image_equal && relations_equal; }
};

/// Intersects the local Cartier conditions of every enumerated tree (through
/// the subset/partition dictionary) and compares with the global image.
CrosscheckReport local_global_crosscheck(int n);

}  // namespace cartier

#endif  // CARTIER_GLOBAL_DIVISORS_HPP
