#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tenv/core/cyclotomic.hpp"
#include "tenv/core/mpoly.hpp"
#include "tenv/groupchar/group.hpp"

namespace tenv {

/// Class function: one value per conjugacy class of `classes`.
template <class T>
struct ClassFunction {
  std::shared_ptr<const ClassData> classes;
  std::vector<T> values;
};

/// Irreducible characters. Rows are class functions on `classes`.
struct CharacterTable {
  std::shared_ptr<const ClassData> classes;
  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<std::string> row_labels;

  int size() const { return static_cast<int>(rows.size()); }
  Rational degree(int row) const { return rows[row][0].to_rational(); }
  ClassFunction<Cyclotomic> character(int row) const { return {classes, rows[row]}; }
  /// Row of the complex conjugate character.
  int dual_row(int row) const;
  int trivial_row() const { return 0; }
  /// JSON with class sizes, class labels and values in canonical text.
  std::string to_json() const;
};

/// Integer partitions, parts weakly decreasing.
using PartitionParts = std::vector<int>;

/// All partitions of n in reverse-lex order ([n] first).
std::vector<PartitionParts> partitions_of(int n);
/// Cycle type of a permutation, sorted decreasing.
PartitionParts cycle_type(const std::vector<int>& perm);
/// Murnaghan-Nakayama value chi^lambda(rho); memoized, thread safe.
Integer murnaghan_nakayama(const PartitionParts& lambda, const PartitionParts& rho);
/// Centralizer order z_rho.
Integer z_coefficient(const PartitionParts& rho);

/// Character table of S_n, 1 <= n <= 10, without a group table. Rows are
/// partitions in reverse-lex order; classes are cycle types in lex order
/// starting with 1^n.
CharacterTable character_table_sn(int n);
/// Table of the symmetric group on {0..n-1} in the class order of the given
/// group (built by groups::symmetric_with_perms); rows are partitions.
CharacterTable character_table_sn_group(const FiniteGroup& g, const std::vector<std::vector<int>>& perms);

/// Dixon-Schneider character table for |G| <= 500. Rows sorted by degree,
/// trivial first, ties by value text.
CharacterTable character_table_generic(const FiniteGroup& g);
/// Validates orthonormality and column orthogonality; throws std::logic_error.
void verify_character_table(const CharacterTable& t);

Cyclotomic inner_product(const ClassFunction<Cyclotomic>& f, const ClassFunction<Cyclotomic>& h);
Rational inner_product(const ClassFunction<Rational>& f, const ClassFunction<Rational>& h);
/// <f | chi> for a polynomial valued class function and a character; the
/// result must be rational-coefficient (throws std::domain_error otherwise).
MPoly inner_product(const ClassFunction<MPoly>& f, const ClassFunction<Cyclotomic>& chi);

/// Induction from a subgroup given by its elements in G, with values on
/// those elements (index-aligned). Values are over Q(zeta) or polynomials.
ClassFunction<Cyclotomic> induce_elementwise(const FiniteGroup& g, const std::vector<int>& h_elems,
                                             const std::vector<Cyclotomic>& values);
ClassFunction<MPoly> induce_elementwise(const FiniteGroup& g, const std::vector<int>& h_elems,
                                        const std::vector<MPoly>& values);
/// Induction along an injective homomorphism embed: H -> G.
ClassFunction<Cyclotomic> induce(const FiniteGroup& h, const ClassFunction<Cyclotomic>& f,
                                 const FiniteGroup& g, const std::vector<int>& embed);
/// Restriction along a homomorphism H -> G.
ClassFunction<Cyclotomic> restrict_to(const FiniteGroup& h, const FiniteGroup& g,
                                      const ClassFunction<Cyclotomic>& f, const std::vector<int>& embed);

/// Fixed point counts of an action act(g, point); validates the axioms.
ClassFunction<Cyclotomic> permutation_character(const FiniteGroup& g, int points,
                                                const std::function<int(int, int)>& act);
ClassFunction<Cyclotomic> regular_character(const FiniteGroup& g);

/// Multiplicities <f | chi_i> for every row; throws unless all are integers.
std::vector<Integer> decompose(const CharacterTable& t, const ClassFunction<Cyclotomic>& f);

}  // namespace tenv
