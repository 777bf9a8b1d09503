#pragma once

#include <string>
#include <vector>

#include "tenv/groupchar/group.hpp"

namespace tenv {

/// All isomorphisms a -> b as element maps (image of element i at index i),
/// in lexicographic order. Stops after `limit` maps (throws std::length_error
/// if more exist and throw_on_limit is set).
std::vector<std::vector<int>> isomorphisms(const FiniteGroup& a, const FiniteGroup& b,
                                           int limit = FiniteGroup::kMaxOrder, bool throw_on_limit = true);
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Automorphism group as a permutation group; element 0 is the identity map.
/// Composition (ab)(g) = a(b(g)).
std::pair<FiniteGroup, std::vector<std::vector<int>>> automorphism_group(const FiniteGroup& g);

/// Permutation group generated by perms (same composition convention).
std::pair<FiniteGroup, std::vector<std::vector<int>>> permutation_group(const std::vector<std::vector<int>>& gens,
                                                                        int degree);

/// Canonical iso-class label: "1", "C4", "C2xC6", a standard name for small
/// nonabelian groups (S3, D4, Q8, A4, ...) or "G<order>_<hash>".
std::string iso_label(const FiniteGroup& g);

/// Order-independent canonical multiplication table (lexicographically least
/// relabelling along a minimal generating tuple).
std::vector<int> canonical_table(const FiniteGroup& g);

/// Prime factorization of the group order, primes with multiplicity.
std::vector<int> order_prime_factors(int n);

/// True when every composition factor is cyclic.
bool is_solvable(const FiniteGroup& g);

}  // namespace tenv
