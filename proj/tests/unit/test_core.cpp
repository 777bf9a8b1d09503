#include <random>

#include "doctest.h"
#include "tenv/core/cyclotomic.hpp"
#include "tenv/core/mpoly.hpp"

using namespace tenv;

namespace {

MPoly t() { return MPoly::variable("t"); }

MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 3), deg(0, maxdeg);
  MPoly p;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (const auto& v : vars) m = m * Monomial::variable(v, deg(rng));
    p += MPoly::monomial(m, Rational(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("rational parsing and canonical form") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK_THROWS(parse_rational("4/-6"));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
    CHECK(factorial(5) == 120);
    CHECK(binomial(6, 2) == 15);
  }

  TEST_CASE("polynomial arithmetic") {
    CHECK((t() - 1) * (t() - 2) == MPoly::parse("t^2 - 3*t + 2"));
    MPoly p = MPoly::parse("3*t^2 - 1/2");
    CHECK(p + MPoly() == p);
    MPoly t2 = MPoly::variable("t_2"), t3 = MPoly::variable("t_3");
    CHECK((t2 - 1) * (t3 - 3) == MPoly::parse("t_2*t_3 - 3*t_2 - t_3 + 3"));
    CHECK(((t2 - 1) * (t3 - 3)).to_string() == "t_2*t_3 - 3*t_2 - t_3 + 3");
  }

  TEST_CASE("canonical printing round-trips") {
    MPoly p = MPoly::parse("1/6*t^3 - 7/3*t^2 + 49/6*t - 22/3");
    CHECK(p.to_string() == "1/6*t^3 - 7/3*t^2 + 49/6*t - 22/3");
    CHECK(MPoly::parse(p.to_string()) == p);
    CHECK(MPoly().to_string() == "0");
    CHECK(MPoly::parse("-(t-1)*(t-4)").to_string() == "-t^2 + 5*t - 4");
    CHECK(MPoly::parse("(t - 1)^3 / 6") == (t() - 1).pow(3) / Rational(6));
    CHECK_THROWS(MPoly::parse("t/t"));
    CHECK_THROWS(MPoly::parse("t +"));
  }

  TEST_CASE("falling factorial") {
    CHECK(falling_factorial("t", 0) == MPoly(1));
    CHECK(falling_factorial("t", 2) == MPoly::parse("t^2 - t"));
    CHECK(falling_factorial("t", 3) == t() * (t() - 1) * (t() - 2));
    for (unsigned m = 0; m < 5; ++m)
      for (unsigned n = 0; n < 5; ++n) {
        MPoly shifted(1);
        for (unsigned i = m; i < m + n; ++i) shifted *= t() - MPoly(Rational(i));
        CHECK(falling_factorial("t", m + n) == falling_factorial("t", m) * shifted);
      }
  }

  TEST_CASE("divisibility") {
    auto q = poly_divides(t() - 1, MPoly::parse("t^2 - 3*t + 2"));
    REQUIRE(q);
    CHECK(*q == t() - 2);
    q = poly_divides(t() - 1, MPoly::parse("t^2 - 1"));
    REQUIRE(q);
    CHECK(*q == t() + 1);
    CHECK_FALSE(poly_divides(t() - 3, MPoly::parse("t^2 - 3*t + 2")));
    CHECK_THROWS_AS(poly_divides(MPoly(), t()), std::domain_error);
  }

  TEST_CASE("ring axioms and division on random polynomials") {
    std::mt19937 rng(1234);
    std::vector<std::string> vars{"t", "t_C2", "t_C3"};
    for (int trial = 0; trial < 60; ++trial) {
      MPoly a = random_poly(rng, vars, 3, 2), b = random_poly(rng, vars, 3, 2),
            c = random_poly(rng, vars, 2, 2);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(MPoly::parse(a.to_string()) == a);
      if (!a.is_zero()) {
        auto q = poly_divides(a, a * b);
        REQUIRE(q);
        CHECK(*q == b);
      }
    }
  }

  TEST_CASE("linear factorization") {
    MPoly p = (t() - 1) * (t() - 2) * (t() - 32) / Rational(168);
    auto f = factor_linear(p);
    CHECK(f.complete());
    CHECK(f.to_string() == "1/168*(t - 1)*(t - 2)*(t - 32)");
    CHECK(f.expand() == p);
    MPoly s3 = (MPoly::variable("t_C2") - 1) * (MPoly::variable("t_C3") - 9) / Rational(6);
    auto g = factor_linear(s3);
    CHECK(g.complete());
    CHECK(g.expand() == s3);
    auto h = factor_linear(t() * t() + 1);
    CHECK_FALSE(h.complete());
    CHECK(h.expand() == t() * t() + 1);
    CHECK(factor_linear(-(t() - 2)).to_string() == "-(t - 2)");
    CHECK(factor_linear(t() * (t() - 3) / Rational(2)).to_string() == "1/2*t*(t - 3)");
  }

  TEST_CASE("cyclotomic arithmetic") {
    Cyclotomic z7 = Cyclotomic::zeta(7);
    Cyclotomic sum;
    for (int k = 0; k < 7; ++k) sum += Cyclotomic::zeta(7, k);
    CHECK(sum.is_zero());
    Cyclotomic p = z7 * z7 * z7 * z7 * z7 * z7 * z7;
    CHECK(p == Cyclotomic(1));
    // b7 = z + z^2 + z^4 satisfies b^2 + b + 2 = 0
    Cyclotomic b7 = Cyclotomic::zeta(7, 1) + Cyclotomic::zeta(7, 2) + Cyclotomic::zeta(7, 4);
    CHECK((b7 * b7 + b7 + Cyclotomic(2)).is_zero());
    CHECK(b7 + b7.conj() == Cyclotomic(-1));
    // mixed orders: zeta_4^2 = -1 = zeta_6^3
    CHECK(Cyclotomic::zeta(4, 2) == Cyclotomic::zeta(6, 3));
    CHECK((Cyclotomic::zeta(4) * Cyclotomic::zeta(6)).order() == 12);
    CHECK(Cyclotomic::zeta(3) * Cyclotomic::zeta(3).conj() == Cyclotomic(1));
    CHECK((Cyclotomic::zeta(3) + Cyclotomic::zeta(3, 2)).to_rational() == -1);
    CHECK(euler_phi(12) == 4);
  }
}
