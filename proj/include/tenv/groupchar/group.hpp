#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tenv/core/rational.hpp"

namespace tenv {

/// Conjugacy class data shared by class functions. Classes are ordered by
/// least element index with the identity class first.
struct ClassData {
  Integer group_order = 1;
  std::vector<Integer> sizes;
  std::vector<int> inverse_class;   // class of g^{-1}
  std::vector<int> element_orders;  // order of a representative
  std::vector<std::string> labels;
  int count() const { return static_cast<int>(sizes.size()); }
};

/// Finite group given by a multiplication table on 0..order()-1.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 1000;

  FiniteGroup() : FiniteGroup(std::vector<int>{0}, 1) {}
  /// table[a * n + b] = a*b. Validates the group axioms (associativity
  /// exhaustively up to order 128, on a fixed pseudo-random sample above).
  FiniteGroup(std::vector<int> table, int n, std::string name = "");

  int order() const { return n_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int h) const { return mul(mul(h, g), inverse_[h]); }  // h g h^-1
  int power(int a, long k) const;
  int element_order(int a) const { return orders_[a]; }
  int exponent() const;
  bool is_abelian() const;
  const std::vector<int>& table() const { return table_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  int class_count() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  int class_rep(int c) const { return classes_[c].front(); }
  const std::shared_ptr<const ClassData>& class_data() const { return class_data_; }

  /// Closure of a subset; returns sorted element list.
  std::vector<int> generated(const std::vector<int>& gens) const;
  /// Greedy small generating set (deterministic).
  std::vector<int> generators() const;
  bool is_subgroup(const std::vector<int>& elems) const;
  bool is_normal(const std::vector<int>& elems) const;
  /// Subgroup as a group on its sorted element list.
  FiniteGroup subgroup(const std::vector<int>& elems) const;
  /// Quotient by a normal subgroup; cosets ordered by least element. If
  /// coset_of is given it receives the coset index of every element.
  FiniteGroup quotient(const std::vector<int>& normal, std::vector<int>* coset_of = nullptr) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  int n_ = 1;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> orders_;
  int identity_ = 0;
  std::string name_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::shared_ptr<const ClassData> class_data_;
};

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// Closure of generators under an associative product; element 0 is the
/// identity. Throws std::length_error past `limit` elements.
template <class T, class Mul>
std::pair<FiniteGroup, std::vector<T>> group_from_generators(const std::vector<T>& gens,
                                                             const T& identity, Mul mul,
                                                             int limit = FiniteGroup::kMaxOrder,
                                                             std::string name = "") {
  std::vector<T> elems{identity};
  std::map<T, int> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T p = mul(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) {
        elems.push_back(p);
        if (static_cast<int>(elems.size()) > limit)
          throw std::length_error("group exceeds " + std::to_string(limit) + " elements");
      }
    }
  }
  int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index.at(mul(elems[a], elems[b]));
  return {FiniteGroup(std::move(table), n, std::move(name)), std::move(elems)};
}

namespace groups {
FiniteGroup cyclic(int n);
FiniteGroup dihedral(int n);  // order 2n
FiniteGroup symmetric(int n);
FiniteGroup alternating(int n);
FiniteGroup quaternion();  // Q8
/// Permutations of {0..n-1} (element i is perms[i]); group law (gh)(i) = g(h(i)).
std::pair<FiniteGroup, std::vector<std::vector<int>>> symmetric_with_perms(int n);
/// {"name": ..., "order": n, "identity": e, "table": [[...],...]}
FiniteGroup from_json(const std::string& text);
std::string to_json(const FiniteGroup& g);
}  // namespace groups

}  // namespace tenv
