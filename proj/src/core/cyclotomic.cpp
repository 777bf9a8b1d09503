#include "tenv/core/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tenv {

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Integer>& Cyclotomic::phi_poly(unsigned m) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    const auto& div = phi_poly(d);
    std::size_t dn = div.size() - 1;
    std::vector<Integer> q(num.size() - dn, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dn; --i) {
      Integer c = num[i];  // divisor is monic
      q[i - dn] = c;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * div[j];
      if (i == dn) break;
    }
    num = q;
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(m, std::move(num)).first->second;
}

Cyclotomic::Cyclotomic(const Rational& r) : order_(1), coeffs_{r} {}

Cyclotomic::Cyclotomic(unsigned m, std::vector<Rational> coeffs) : order_(m) {
  reduce(std::move(coeffs));
}

void Cyclotomic::reduce(std::vector<Rational> raw) {
  const auto& phi = phi_poly(order_);
  std::size_t n = phi.size() - 1;
  for (std::size_t i = raw.size(); i-- > n;) {
    if (raw[i] == 0) continue;
    Rational c = raw[i];
    for (std::size_t j = 0; j <= n; ++j) raw[i - n + j] -= c * phi[j];
  }
  raw.resize(n, Rational(0));
  coeffs_ = std::move(raw);
}

Cyclotomic Cyclotomic::zeta(unsigned m, long k) {
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  long e = ((k % static_cast<long>(m)) + m) % m;
  std::vector<Rational> c(e + 1, Rational(0));
  c[e] = 1;
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::from_powers(unsigned m, const std::vector<Rational>& coeffs) {
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  std::vector<Rational> c(m, Rational(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i % m] += coeffs[i];
  return Cyclotomic(m, std::move(c));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + to_string());
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::lift(unsigned m) const {
  if (m % order_) throw std::invalid_argument("lift target must be a multiple of the order");
  if (m == order_) return *this;
  unsigned step = m / order_;
  std::vector<Rational> c(m, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * step] = coeffs_[i];
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::galois(long j) const {
  long m = order_;
  if (std::gcd(((j % m) + m) % m, m) != 1 && m > 1)
    throw std::invalid_argument("galois exponent not coprime to the order");
  std::vector<Rational> c(order_, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    long e = ((static_cast<long>(i) * j) % m + m) % m;
    c[e] += coeffs_[i];
  }
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

namespace {
unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  unsigned m = lcm_u(order_, o.order_);
  Cyclotomic a = lift(m), b = o.lift(m);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return *this = std::move(a);
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.order_ == 1) return *this *= o.coeffs_[0];
  if (order_ == 1) {
    Rational r = coeffs_[0];
    *this = o;
    return *this *= r;
  }
  unsigned m = lcm_u(order_, o.order_);
  Cyclotomic a = lift(m), b = o.lift(m);
  std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  order_ = m;
  reduce(std::move(prod));
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& c : coeffs_) c *= r;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r) {
  if (r == 0) throw std::domain_error("cyclotomic division by zero");
  for (auto& c : coeffs_) c /= r;
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  unsigned m = lcm_u(a.order_, b.order_);
  return a.lift(m).coeffs_ == b.lift(m).coeffs_;
}

std::string Cyclotomic::to_string() const {
  if (is_rational()) return tenv::to_string(to_rational());
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (i == 0) {
      s += tenv::to_string(a);
      continue;
    }
    if (a != 1) s += tenv::to_string(a) + "*";
    s += "E(" + std::to_string(order_) + ")";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

}  // namespace tenv
