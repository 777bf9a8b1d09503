#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tenv/core/rational.hpp"

namespace tenv {

/// Explicit finite lattice. Elements are 0..size()-1 in the order supplied at
/// construction; order, meet and join are tabulated.
class FiniteLattice {
 public:
  using Leq = std::function<bool(int, int)>;
  using Op = std::function<int(int, int)>;

  static constexpr int kMaxSize = 4200;

  FiniteLattice() = default;
  /// Builds from an order predicate. Meet and join are derived from the
  /// order unless supplied; throws std::invalid_argument if the relation is
  /// not a lattice order.
  FiniteLattice(int n, const Leq& leq, std::vector<std::string> labels = {},
                const Op& meet = nullptr, const Op& join = nullptr);

  int size() const { return n_; }
  bool leq(int a, int b) const { return leq_[idx(a, b)] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int join(int a, int b) const { return join_[idx(a, b)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Elements in a linear extension of the order (bottom first).
  const std::vector<int>& linear_order() const { return order_; }

  std::vector<int> upper_covers(int a) const;
  std::vector<int> lower_covers(int a) const;
  std::vector<std::pair<int, int>> covers() const;
  std::vector<int> interval(int a, int b) const;

  /// Möbius function mu(a, b); throws std::invalid_argument unless a <= b.
  Integer mobius(int a, int b) const;
  /// mu(a, z) for every z (zero where a is not below z).
  std::vector<Integer> mobius_from(int a) const;
  /// mu(z, b) for every z (zero where z is not below b).
  std::vector<Integer> mobius_to(int b) const;

  /// Induced lattice on a subset closed under meet and join of this lattice.
  FiniteLattice induced(const std::vector<int>& elements) const;
  bool is_automorphism(const std::vector<int>& perm) const;
  std::vector<int> fixed_points(const std::vector<int>& perm) const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::int32_t> meet_, join_;
  std::vector<std::string> labels_;
  std::vector<int> order_;
  int bottom_ = 0, top_ = 0;
};

struct LatticeStructure {
  bool is_modular = false;
  bool is_complemented = false;
  std::optional<int> rank;  // empty when not graded
  std::vector<int> atoms;
  int socle = 0;
};

LatticeStructure structure(const FiniteLattice& L);
bool is_modular(const FiniteLattice& L);
bool is_complemented(const FiniteLattice& L);
/// Length of maximal chains from bottom to top; throws std::domain_error
/// ("not graded") if maximal chains have different lengths.
int lattice_rank(const FiniteLattice& L);
/// Height of each element (bottom = 0); requires a graded lattice.
std::vector<int> heights(const FiniteLattice& L);
std::vector<int> atoms(const FiniteLattice& L);
int socle(const FiniteLattice& L);

struct MuVanishingFlags {
  bool mobius_nonzero;
  bool join_of_atoms;
  bool interval_complemented;
  bool below_socle;
  bool all_equal() const {
    return mobius_nonzero == join_of_atoms && join_of_atoms == interval_complemented &&
           interval_complemented == below_socle;
  }
};

/// Per element z: the four conditions on [0, z]. Throws std::domain_error
/// ("modularity required") on non-modular input.
std::vector<MuVanishingFlags> mu_vanishing_profile(const FiniteLattice& L);

/// Ranks over Q of the homology of the complex of chains bottom = a_0 < ... <
/// a_n = top (degree n), differential dropping interior elements with sign.
/// Entry n is the rank in degree n; entry 0 is always 0 when size >= 2.
std::vector<Integer> order_complex_homology(const FiniteLattice& L);

/// Number of chains bottom = a_0 < ... < a_n = top for each n.
std::vector<Integer> chain_counts(const FiniteLattice& L);
/// Same, restricted to chains fixed elementwise by the automorphism.
std::vector<Integer> fixed_chain_counts(const FiniteLattice& L, const std::vector<int>& perm);
/// Alternating sum sum_n (-1)^n counts[n].
Integer euler_characteristic(const std::vector<Integer>& counts);

/// Lattice of fixed points of an automorphism; throws std::invalid_argument
/// if perm is not an automorphism.
FiniteLattice fixed_sublattice(const FiniteLattice& L, const std::vector<int>& perm);

/// Directly indecomposable factors of a complemented modular lattice, in
/// order of decreasing size then label. Throws std::domain_error otherwise.
std::vector<FiniteLattice> factor_direct_product(const FiniteLattice& L);
/// "B1", "M_k", "L_n(q)", or "unclassified rank-3" and similar.
std::string classify_indecomposable(const FiniteLattice& L);
/// Sorted factor labels joined with " x ".
std::string classify(const FiniteLattice& L);

/// Isomorphism test by backtracking (intended for small lattices).
bool isomorphic(const FiniteLattice& a, const FiniteLattice& b);

namespace lattices {
FiniteLattice boolean(int n);
FiniteLattice chain(int n);  // n elements
FiniteLattice pentagon();
FiniteLattice diamond(int k);  // M_k
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);
/// Partitions of {0..n-1}, finer below.
FiniteLattice partitions(int n);
}  // namespace lattices

/// {"size": n, "covers": [[a,b],...], "labels": [...]}, elements renumbered in
/// a linear extension with ties broken by label.
std::string lattice_to_json(const FiniteLattice& L);
FiniteLattice lattice_from_json(const std::string& text);

}  // namespace tenv
