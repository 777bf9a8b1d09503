#pragma once

#include <string>
#include <vector>

#include "tenv/lattice/lattice.hpp"

namespace tenv::fq {

using Vec = std::vector<int>;

/// Subspace of F_q^n in reduced row echelon form (canonical).
struct Subspace {
  int n = 0;
  std::vector<Vec> rows;
  int dim() const { return static_cast<int>(rows.size()); }
  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

Subspace span(int n, std::vector<Vec> vectors, int q);
Subspace zero(int n);
Subspace full(int n);
std::vector<int> pivots(const Subspace& s);
Subspace sum(const Subspace& a, const Subspace& b, int q);
Subspace intersect(const Subspace& a, const Subspace& b, int q);
bool contains(const Subspace& s, const Vec& v, int q);
bool contains(const Subspace& big, const Subspace& small, int q);
/// v minus its K-pivot components (unique representative mod K).
Vec reduce(const Subspace& k, Vec v, int q);
/// Coordinates of v + K in X/K: entries of reduce(K, v) at the non-pivot columns.
Vec quotient_coords(const Subspace& k, const Vec& v, int q);
/// Coordinates of v in S along its RREF basis (v must lie in S).
Vec sub_coords(const Subspace& s, const Vec& v);

/// All subspaces of F_q^n ordered by dimension then RREF.
std::vector<Subspace> all_subspaces(int n, int q);
/// Subspace lattice L_n(q) (inclusion order) with the subspace list.
FiniteLattice subspace_lattice(int n, int q, std::vector<Subspace>* elements = nullptr);

/// Square matrices act on column vectors; stored row-major.
using Mat = std::vector<Vec>;
Mat identity(int n);
Mat multiply(const Mat& a, const Mat& b, int q);
Vec apply(const Mat& m, const Vec& v, int q);
int rank(Mat m, int q);
/// All invertible n x n matrices in lexicographic order of their entries.
std::vector<Mat> general_linear(int n, int q);
/// general_linear with the identity moved to the front: element i of the
/// automorphism group of F_q^n in the Vect(F_q) backend.
std::vector<Mat> automorphism_matrices(int n, int q);
std::string to_string(const Subspace& s);

}  // namespace tenv::fq
