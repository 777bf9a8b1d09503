#include "tenv/core/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tenv {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.powers_.emplace_back(std::move(name), exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : powers_) d += e;
  return d;
}

unsigned Monomial::exponent(std::string_view var) const {
  for (const auto& [v, e] : powers_)
    if (v == var) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      r.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      r.powers_.push_back(*b++);
    } else {
      r.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  Monomial r;
  auto b = other.powers_.begin();
  for (const auto& [v, e] : powers_) {
    if (b != other.powers_.end() && b->first < v) return std::nullopt;
    if (b != other.powers_.end() && b->first == v) {
      if (b->second > e) return std::nullopt;
      if (b->second < e) r.powers_.emplace_back(v, e - b->second);
      ++b;
    } else {
      r.powers_.emplace_back(v, e);
    }
  }
  if (b != other.powers_.end()) return std::nullopt;
  return r;
}

int Monomial::compare_lex(const Monomial& a, const Monomial& b) {
  auto x = a.powers_.begin();
  auto y = b.powers_.begin();
  for (;;) {
    if (x == a.powers_.end() && y == b.powers_.end()) return 0;
    if (x == a.powers_.end()) return -1;
    if (y == b.powers_.end()) return 1;
    if (x->first != y->first) return x->first < y->first ? 1 : -1;
    if (x->second != y->second) return x->second > y->second ? 1 : -1;
    ++x;
    ++y;
  }
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [v, e] : powers_) {
    if (!s.empty()) s += '*';
    s += v;
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

// ------------------------------------------------------------------- MPoly

MPoly::MPoly(const Rational& c) {
  if (c != 0) {
    Rational v = c;
    v.canonicalize();
    terms_.emplace(Monomial(), v);
  }
}

MPoly MPoly::variable(const std::string& name) { return monomial(Monomial::variable(name)); }

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
  MPoly p;
  p.add_term(m, c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MPoly::constant_term() const { return coefficient(Monomial()); }

unsigned MPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned MPoly::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

std::vector<std::string> MPoly::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.powers()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

Rational MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& MPoly::leading_monomial() const { return terms_.begin()->first; }
const Rational& MPoly::leading_coefficient() const { return terms_.begin()->second; }

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.emplace(m, v);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MPoly& MPoly::operator/=(const Rational& c) {
  if (c == 0) throw std::domain_error("polynomial division by zero constant");
  for (auto& [m, v] : terms_) v /= c;
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1), base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

MPoly MPoly::evaluate(const std::map<std::string, Rational>& values) const {
  MPoly r;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    Monomial rest;
    for (const auto& [v, e] : m.powers()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * Monomial::variable(v, e);
      } else {
        Rational p = 1;
        for (unsigned i = 0; i < e; ++i) p *= it->second;
        coef *= p;
      }
    }
    r.add_term(rest, coef);
  }
  return r;
}

MPoly MPoly::substitute(const std::string& var, const MPoly& value) const {
  MPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& [v, k] : m.powers()) {
      if (v == var)
        e = k;
      else
        rest = rest * Monomial::variable(v, k);
    }
    r += MPoly::monomial(rest, c) * value.pow(e);
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += tenv::to_string(a);
    } else {
      if (a != 1) s += tenv::to_string(a) + "*";
      s += m.to_string();
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " +
                                what + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly result;
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    MPoly t = term();
    result = negate ? -t : t;
    for (;;) {
      if (eat('+'))
        result += term();
      else if (eat('-'))
        result -= term();
      else
        return result;
    }
  }

  MPoly term() {
    MPoly result = power();
    for (;;) {
      if (eat('*')) {
        result *= power();
      } else if (eat('/')) {
        MPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        result /= d.constant_term();
      } else {
        return result;
      }
    }
  }

  MPoly power() {
    MPoly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return b;
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return MPoly::variable(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(std::string_view text) { return PolyParser(text).parse(); }

MPoly falling_factorial(const std::string& var, unsigned k) {
  MPoly r(1);
  MPoly t = MPoly::variable(var);
  for (unsigned i = 0; i < k; ++i) r *= t - MPoly(Rational(i));
  return r;
}

std::optional<MPoly> poly_divides(const MPoly& d, const MPoly& n) {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  // Single-divisor division is unique for a fixed monomial order, so a
  // nonzero remainder proves non-divisibility.
  MPoly q, r = n;
  const Monomial& lm = d.leading_monomial();
  const Rational& lc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& m = r.leading_monomial();
    auto quot = m.divide(lm);
    if (!quot) return std::nullopt;
    MPoly step = MPoly::monomial(*quot, r.leading_coefficient() / lc);
    q += step;
    r -= step * d;
  }
  return q;
}

// ------------------------------------------------------ linear factorization

namespace {

std::vector<Integer> integer_root_candidates(const std::vector<Rational>& coeffs) {
  // coeffs[i] is the coefficient of v^i.
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == 0) ++low;
  std::vector<Integer> out;
  if (low == coeffs.size()) return out;
  if (low > 0) out.emplace_back(0);
  if (low + 1 == coeffs.size()) return out;
  Rational scaled = coeffs[low] * den;
  Integer c = abs(scaled.get_num());
  if (c > Integer("1000000000000")) return out;
  for (Integer i = 1; i * i <= c; ++i) {
    if (c % i == 0) {
      for (const Integer& dv : {Integer(i), Integer(c / i)}) {
        out.push_back(dv);
        out.push_back(-dv);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

LinearFactorization factor_linear(const MPoly& p) {
  LinearFactorization f;
  if (p.is_zero()) {
    f.constant = 0;
    f.rest = MPoly(1);
    return f;
  }
  MPoly rest = p;
  bool progress = true;
  while (progress && !rest.is_constant()) {
    progress = false;
    for (const auto& v : rest.variables()) {
      // Group by the monomial in the remaining variables; a common root must
      // be a root of every group's univariate polynomial.
      std::map<std::string, std::vector<Rational>> groups;
      for (const auto& [m, c] : rest.terms()) {
        Monomial others;
        unsigned e = 0;
        for (const auto& [w, k] : m.powers()) {
          if (w == v)
            e = k;
          else
            others = others * Monomial::variable(w, k);
        }
        auto& g = groups[others.to_string()];
        if (g.size() <= e) g.resize(e + 1);
        g[e] += c;
      }
      const std::vector<Rational>* best = nullptr;
      for (const auto& [k, g] : groups)
        if (!best || g.size() < best->size()) best = &g;
      for (const auto& a : integer_root_candidates(*best)) {
        MPoly lin = MPoly::variable(v) - MPoly(Rational(a));
        while (auto q = poly_divides(lin, rest)) {
          f.factors.emplace_back(v, a);
          rest = *q;
          progress = true;
        }
      }
    }
  }
  std::sort(f.factors.begin(), f.factors.end());
  f.constant = rest.leading_coefficient();
  f.rest = rest / f.constant;
  return f;
}

MPoly LinearFactorization::expand() const {
  MPoly r = MPoly(constant) * rest;
  for (const auto& [v, a] : factors) r *= MPoly::variable(v) - MPoly(Rational(a));
  return r;
}

std::string LinearFactorization::to_string() const {
  if (constant == 0) return "0";
  std::vector<std::string> parts;
  for (const auto& [v, a] : factors) {
    if (a == 0)
      parts.push_back(v);
    else if (a > 0)
      parts.push_back("(" + v + " - " + tenv::to_string(a) + ")");
    else
      parts.push_back("(" + v + " + " + tenv::to_string(Integer(-a)) + ")");
  }
  if (!(rest == MPoly(1))) parts.push_back("(" + rest.to_string() + ")");
  std::string body;
  for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
  if (body.empty()) return tenv::to_string(constant);
  if (constant == 1) return body;
  if (constant == -1) return "-" + body;
  return tenv::to_string(constant) + "*" + body;
}

}  // namespace tenv
