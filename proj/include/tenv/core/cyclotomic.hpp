#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tenv/core/rational.hpp"

namespace tenv {

/// Exact element of the cyclotomic field Q(zeta_m), stored as a coefficient
/// vector of length phi(m) reduced modulo the m-th cyclotomic polynomial.
/// Operands of different orders are lifted to the lcm of their orders.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(Rational(0)) {}
  Cyclotomic(const Rational& r);  // NOLINT
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT
  Cyclotomic(int v) : Cyclotomic(Rational(v)) {}   // NOLINT

  /// zeta_m^k.
  static Cyclotomic zeta(unsigned m, long k = 1);
  /// Sum_i coeffs[i] zeta_m^i for arbitrary length input.
  static Cyclotomic from_powers(unsigned m, const std::vector<Rational>& coeffs);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws std::domain_error when not rational.
  Rational to_rational() const;

  /// Same element written over Q(zeta_m) for a multiple m of order().
  Cyclotomic lift(unsigned m) const;
  /// Complex conjugation zeta -> zeta^{-1}.
  Cyclotomic conj() const;
  /// Galois automorphism zeta -> zeta^j, gcd(j, order) = 1.
  Cyclotomic galois(long j) const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  Cyclotomic& operator/=(const Rational& r);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }
  Cyclotomic operator-() const;
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Rational values print as rationals; otherwise "a + b*E(m)^k + ...".
  std::string to_string() const;

 private:
  Cyclotomic(unsigned m, std::vector<Rational> coeffs);
  void reduce(std::vector<Rational> raw);
  static const std::vector<Integer>& phi_poly(unsigned m);

  unsigned order_ = 1;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

unsigned euler_phi(unsigned m);

}  // namespace tenv
