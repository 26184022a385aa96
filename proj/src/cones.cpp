#include "cartier/cones.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "cartier/errors.hpp"
#include "cartier/integer.hpp"
#include "cartier/intlinalg.hpp"
#include "cartier/weights.hpp"

namespace cartier {

namespace {

bool lex_less(const RayVector& x, const RayVector& y) {
  return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
}

// Phase-one simplex with Bland's rule on [M | I] λ = b, b >= 0.
class FeasibilityTableau {
 public:
  FeasibilityTableau(const std::vector<Int64Vector>& columns, const Int64Vector& b)
      : m_(b.size()), n_(static_cast<int>(columns.size())), t_(m_ + 1, std::vector<BigRational>(n_ + m_ + 1)) {
    for (int i = 0; i < m_; ++i) {
      const int sign = b(i) < 0 ? -1 : 1;
      for (int j = 0; j < n_; ++j) t_[i][j] = sign * columns[j](i);
      t_[i][n_ + i] = 1;
      t_[i][n_ + m_] = sign * b(i);
      basis_.push_back(n_ + i);
    }
    // Objective row: minimize the sum of artificials, expressed in the
    // nonbasic variables.
    for (int j = 0; j <= n_ + m_; ++j) {
      if (j >= n_ && j < n_ + m_) continue;
      BigRational sum = 0;
      for (int i = 0; i < m_; ++i) sum += t_[i][j];
      t_[m_][j] = sum;
    }
  }

  bool feasible() {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < n_ + m_; ++j)
        if (t_[m_][j] > 0) {
          entering = j;
          break;
        }
      if (entering < 0) break;
      int leaving = -1;
      BigRational best;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][entering] <= 0) continue;
        const BigRational ratio = t_[i][n_ + m_] / t_[i][entering];
        if (leaving < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving < 0) break;  // unbounded cannot happen for phase one
      pivot(leaving, entering);
    }
    return t_[m_][n_ + m_] == 0;
  }

 private:
  void pivot(int r, int c) {
    const BigRational p = t_[r][c];
    for (auto& x : t_[r]) x /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const BigRational f = t_[i][c];
      for (int j = 0; j <= n_ + m_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  int m_, n_;
  std::vector<std::vector<BigRational>> t_;
  std::vector<int> basis_;
};

}  // namespace

std::vector<RayVector> subtree_generators(const ColoredTree& tree, int v) {
  const int g = tree.num_uncolored();
  if (tree.is_colored(v)) return {};
  const int k = tree.node(v).coordinate;
  const RayVector e = RayVector::unit(g, k);
  std::vector<RayVector> result{e};
  for (int c : tree.node(v).children) {
    const auto child = subtree_generators(tree, c);
    std::vector<RayVector> next;
    next.reserve(result.size() * (child.size() + 1));
    for (const auto& base : result) {
      next.push_back(base);
      for (const auto& w : child) next.emplace_back(base + w - e);
    }
    result = std::move(next);
  }
  std::sort(result.begin(), result.end(), lex_less);
  return result;
}

std::vector<RayVector> generators(const ColoredTree& tree) { return subtree_generators(tree, 0); }

std::int64_t pair(const WeightVector& w, const RayVector& v) {
  if (w.size() != v.size())
    throw InvalidInput("pairing vectors of length " + std::to_string(w.size()) + " and " + std::to_string(v.size()));
  return w.dot(v);
}

std::uint64_t ray_count(const ColoredTree& tree) {
  std::function<std::uint64_t(int)> count = [&](int v) -> std::uint64_t {
    if (tree.is_colored(v)) return 0;
    std::uint64_t r = 1;
    for (int c : tree.node(v).children) r *= count(c) + 1;
    return r;
  };
  return count(0);
}

bool in_cone(const std::vector<Int64Vector>& rays, const Int64Vector& target) {
  for (const auto& r : rays)
    if (r.size() != target.size()) throw InvalidInput("cone rays and target differ in dimension");
  if (target.isZero()) return true;
  return FeasibilityTableau(rays, target).feasible();
}

bool DualityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

DualityReport verify_duality(const ColoredTree& tree, int max_g) {
  const int g = tree.num_uncolored();
  if (g > max_g)
    throw InvalidInput("tree has " + std::to_string(g) + " uncolored vertices; duality check is capped at " +
                       std::to_string(max_g));
  DualityReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, passed ? std::string() : std::move(detail)});
  };
  const auto gens = generators(tree);
  const auto weights = label_weights(tree);
  const WeightVector s = total_weight(tree);

  std::string negative;
  for (std::size_t d = 0; d < weights.size() && negative.empty(); ++d)
    for (const auto& v : gens)
      if (pair(weights[d], v) < 0) {
        negative = "x" + std::to_string(d + 1) + " is negative on " + format_vector(v);
        break;
      }
  add("nonnegative", negative.empty(), negative);

  std::string redundant;
  for (std::size_t j = 0; j < gens.size() && redundant.empty(); ++j) {
    std::vector<Int64Vector> others;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != j) others.push_back(gens[i]);
    if (in_cone(others, gens[j])) redundant = format_vector(gens[j]) + " is a combination of the others";
  }
  add("minimal", redundant.empty(), redundant);

  IntMatrix m(static_cast<Eigen::Index>(gens.size()), g);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int k = 0; k < g; ++k) m(i, k) = gens[i](k);
  const auto r = linalg::rank(m);
  add("full_dimension", r == g, "span has dimension " + std::to_string(r) + ", expected " + std::to_string(g));

  std::string unpaired;
  for (const auto& v : gens)
    if (pair(s, v) != 1) unpaired = "<s, " + format_vector(v) + "> = " + std::to_string(pair(s, v));
  add("pairing_with_s", unpaired.empty(), unpaired);

  std::set<std::vector<std::int64_t>> seen;
  std::string bad;
  for (const auto& v : gens) {
    if (!seen.insert(std::vector<std::int64_t>(v.data(), v.data() + v.size())).second)
      bad = "duplicate " + format_vector(v);
    std::int64_t gcd = 0;
    for (Eigen::Index k = 0; k < v.size(); ++k) gcd = std::gcd(gcd, v(k));
    if (gcd != 1) bad = format_vector(v) + " is not primitive";
  }
  add("distinct_primitive", bad.empty(), bad);
  return report;
}

}  // namespace cartier
