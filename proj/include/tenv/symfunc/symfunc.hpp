#pragma once

#include <map>
#include <string>
#include <vector>

#include "tenv/core/mpoly.hpp"
#include "tenv/core/rational.hpp"

namespace tenv {

/// Integer partition, parts weakly decreasing and positive.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);  // sorts, drops zeros; throws on negatives
  static Partition parse(const std::string& text);  // "[3,1,1]", "[]"

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int length() const { return static_cast<int>(parts_.size()); }
  int first() const { return parts_.empty() ? 0 : parts_.front(); }
  /// (n - |lambda|, lambda); throws std::domain_error if not a partition.
  Partition padded(int n) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Total order used for printing: by size, then reverse-lex ([2] before [1,1]).
struct PartitionOrder {
  bool operator()(const Partition& a, const Partition& b) const;
};

std::vector<Partition> partitions(int n);
/// All partitions with size <= n, in PartitionOrder.
std::vector<Partition> partitions_up_to(int n);

/// Finite Z-linear combination of Schur functions.
class SchurVector {
 public:
  using Terms = std::map<Partition, Integer, PartitionOrder>;

  SchurVector() = default;
  static SchurVector schur(const Partition& p, const Integer& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Partition& p) const;
  void add(const Partition& p, const Integer& c);
  SchurVector& operator+=(const SchurVector& o);
  friend SchurVector operator+(SchurVector a, const SchurVector& b) { return a += b; }
  friend SchurVector operator*(const Integer& c, const SchurVector& v);
  friend bool operator==(const SchurVector& a, const SchurVector& b) { return a.terms_ == b.terms_; }
  /// Terms of the given size only.
  SchurVector degree_part(int n) const;
  int max_degree() const;
  bool nonnegative() const;

  /// "1*s[] + 1*s[1] + 1*s[2] + 1*s[1,1]"; "0" for the zero vector.
  std::string to_string() const;
  /// Same with unit coefficients omitted: "s[] + s[1] + 2*s[2]".
  std::string to_compact_string() const;
  /// {"[]": 1, "[1]": 1}
  std::string to_json() const;
  static SchurVector from_json(const std::string& text);

 private:
  Terms terms_;
};

/// c^nu_{lambda mu} as <chi^nu, ind chi^lambda x chi^mu>.
Integer lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu);
SchurVector schur_multiply(const SchurVector& a, const SchurVector& b);
/// <chi^lambda chi^mu, chi^nu>; throws std::invalid_argument on size mismatch.
Integer kronecker_coeff(const Partition& lambda, const Partition& mu, const Partition& nu);
/// s_lambda * s_mu (internal product), |lambda| = |mu|.
SchurVector kronecker_product(const Partition& lambda, const Partition& mu);
/// sum_tau <s_lambda | s_mu s_nu s_tau> s_tau.
SchurVector skew_double(const Partition& lambda, const Partition& mu, const Partition& nu);
/// Littlewood's formula for the stable Kronecker product; |lambda|, |mu| <= 6.
SchurVector stable_kronecker_littlewood(const Partition& lambda, const Partition& mu);
/// Kronecker coefficients of padded partitions in S_n (n <= 14); throws
/// std::domain_error naming the violated bound when n is too small.
SchurVector stable_kronecker_limit(const Partition& lambda, const Partition& mu, int n);

/// C_m(t) = sum_k (-1)^k binom(m,k) (t)_k.
MPoly charlier(int m);
/// deg chi^lambda / n! * prod_i (t - (lambda_i + n - i)), n = |lambda| <= 8.
MPoly deligne_dim(const Partition& lambda);
/// sum_mu (-1)^{l(mu)} chi^lambda_mu C_{m_1(mu)} / z_mu, |lambda| <= 8.
MPoly charlier_dimension_sum(const Partition& lambda);

}  // namespace tenv
