#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tenv/core/rational.hpp"

namespace tenv {

/// A monomial as a sparse exponent vector over named variables. Variables are
/// kept sorted by name and every stored exponent is positive, so two
/// monomials over different variable universes compare correctly.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  unsigned degree() const;
  unsigned exponent(std::string_view var) const;
  const std::vector<std::pair<std::string, unsigned>>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Quotient when `other` divides this monomial.
  std::optional<Monomial> divide(const Monomial& other) const;

  /// Lexicographic order with variables ranked alphabetically.
  static int compare_lex(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, unsigned>> powers_;
};

/// Graded-lex order, largest monomial first.
struct GradedLexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return Monomial::compare_lex(a, b) > 0;
  }
};

/// Multivariate polynomial with exact rational coefficients in canonical form:
/// no zero coefficients are stored, so equality is coefficient-map equality.
class MPoly {
 public:
  using Terms = std::map<Monomial, Rational, GradedLexDescending>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT: implicit constants are convenient in formulas
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT
  MPoly(int c) : MPoly(Rational(c)) {}   // NOLINT
  static MPoly variable(const std::string& name);
  static MPoly monomial(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 when absent).
  Rational constant_term() const;
  unsigned total_degree() const;
  unsigned degree_in(std::string_view var) const;
  std::vector<std::string> variables() const;
  Rational coefficient(const Monomial& m) const;
  const Monomial& leading_monomial() const;  // graded-lex; undefined on zero
  const Rational& leading_coefficient() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  MPoly& operator/=(const Rational& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator/(MPoly a, const Rational& c) { return a /= c; }
  MPoly operator-() const;
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  MPoly pow(unsigned e) const;

  /// Substitutes the given variables; others stay symbolic.
  MPoly evaluate(const std::map<std::string, Rational>& values) const;
  /// Substitutes a polynomial for one variable.
  MPoly substitute(const std::string& var, const MPoly& value) const;

  /// Canonical text: graded-lex descending, e.g. "1/6*t^3 - 7/3*t^2 + 49/6*t - 22/3".
  std::string to_string() const;
  /// Accepts the canonical grammar plus parentheses, products and powers.
  static MPoly parse(std::string_view text);

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

/// (var)_k = var (var - 1) ... (var - k + 1).
MPoly falling_factorial(const std::string& var, unsigned k);

/// Exact multivariate division. Returns the quotient q with n = d q, or
/// nothing when d does not divide n. Throws std::domain_error when d = 0.
std::optional<MPoly> poly_divides(const MPoly& d, const MPoly& n);

/// A polynomial written as constant * prod (var - root) * rest, where every
/// linear factor has an integer root.
struct LinearFactorization {
  Rational constant;
  std::vector<std::pair<std::string, Integer>> factors;  // (var, root) for (var - root)
  MPoly rest = MPoly(1);                                  // cofactor without such factors

  bool complete() const { return rest == MPoly(1); }
  MPoly expand() const;
  /// e.g. "1/168*(t - 1)*(t - 2)*(t - 32)".
  std::string to_string() const;
};

/// Peels off all linear factors (v - a), a integer, for every variable v.
LinearFactorization factor_linear(const MPoly& p);

}  // namespace tenv
