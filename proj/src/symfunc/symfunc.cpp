#include "tenv/symfunc/symfunc.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "json.hpp"
#include "tenv/groupchar/character.hpp"

namespace tenv {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("negative part in partition");
    if (p > 0) parts_.push_back(p);
  }
  std::sort(parts_.rbegin(), parts_.rend());
}

Partition Partition::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw std::invalid_argument("partition must look like [3,1]");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 4)
      throw std::invalid_argument("bad partition part '" + tok + "'");
    int v = std::stoi(tok);
    if (v == 0) throw std::invalid_argument("partition parts must be positive");
    parts.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
    if (pos == body.size()) throw std::invalid_argument("trailing comma in partition");
  }
  if (!std::is_sorted(parts.rbegin(), parts.rend())) throw std::invalid_argument("partition parts must be weakly decreasing");
  return Partition(parts);
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

Partition Partition::padded(int n) const {
  int head = n - size();
  if (head < first()) throw std::domain_error("padding " + to_string() + " to " + std::to_string(n) + " is not a partition");
  std::vector<int> p{head};
  p.insert(p.end(), parts_.begin(), parts_.end());
  return Partition(p);
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + "]";
}

bool PartitionOrder::operator()(const Partition& a, const Partition& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.parts() > b.parts();
}

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  for (auto& p : partitions_of(n)) out.emplace_back(p);
  return out;
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 0; k <= n; ++k)
    for (auto& p : partitions(k)) out.push_back(p);
  return out;
}

SchurVector SchurVector::schur(const Partition& p, const Integer& c) {
  SchurVector v;
  v.add(p, c);
  return v;
}

Integer SchurVector::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Integer(0) : it->second;
}

void SchurVector::add(const Partition& p, const Integer& c) {
  if (c == 0) return;
  auto& v = terms_[p];
  v += c;
  if (v == 0) terms_.erase(p);
}

SchurVector& SchurVector::operator+=(const SchurVector& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

SchurVector operator*(const Integer& c, const SchurVector& v) {
  SchurVector out;
  for (const auto& [p, x] : v.terms_) out.add(p, c * x);
  return out;
}

SchurVector SchurVector::degree_part(int n) const {
  SchurVector out;
  for (const auto& [p, c] : terms_)
    if (p.size() == n) out.add(p, c);
  return out;
}

int SchurVector::max_degree() const {
  int d = -1;
  for (const auto& [p, c] : terms_) d = std::max(d, p.size());
  return d;
}

bool SchurVector::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

namespace {

std::string render(const SchurVector::Terms& terms, bool compact) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : terms) {
    Integer a = abs(c);
    if (first) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    if (!(compact && a == 1)) s += to_string(a) + "*";
    s += "s" + p.to_string();
    first = false;
  }
  return s;
}

}  // namespace

std::string SchurVector::to_string() const { return render(terms_, false); }
std::string SchurVector::to_compact_string() const { return render(terms_, true); }

std::string SchurVector::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [p, c] : terms_) {
    if (c.fits_slong_p()) j[p.to_string()] = c.get_si();
    else j[p.to_string()] = tenv::to_string(c);
  }
  return j.dump();
}

SchurVector SchurVector::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SchurVector v;
  for (auto it = j.begin(); it != j.end(); ++it) {
    Integer c = it->is_string() ? Integer(it->get<std::string>()) : Integer(it->get<long>());
    v.add(Partition::parse(it.key()), c);
  }
  return v;
}

// ------------------------------------------------------------ coefficients

namespace {

std::mutex lr_mutex;
std::map<std::vector<std::vector<int>>, Integer>& lr_cache() {
  static std::map<std::vector<std::vector<int>>, Integer> c;
  return c;
}

PartitionParts merge(const PartitionParts& a, const PartitionParts& b) {
  PartitionParts r(a);
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.rbegin(), r.rend());
  return r;
}

}  // namespace

Integer lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (lambda.size() + mu.size() != nu.size()) return 0;
  std::vector<std::vector<int>> key{lambda.parts(), mu.parts(), nu.parts()};
  {
    std::lock_guard<std::mutex> lock(lr_mutex);
    auto it = lr_cache().find(key);
    if (it != lr_cache().end()) return it->second;
  }
  // Frobenius reciprocity: <chi^lambda x chi^mu, res chi^nu> over S_m x S_n
  Rational s = 0;
  for (const auto& a : partitions_of(lambda.size())) {
    Integer la = murnaghan_nakayama(lambda.parts(), a);
    if (la == 0) continue;
    for (const auto& b : partitions_of(mu.size())) {
      Integer mb = murnaghan_nakayama(mu.parts(), b);
      if (mb == 0) continue;
      Integer nv = murnaghan_nakayama(nu.parts(), merge(a, b));
      s += Rational(la * mb * nv) / Rational(z_coefficient(a) * z_coefficient(b));
    }
  }
  if (s.get_den() != 1) throw std::logic_error("non-integral Littlewood-Richardson coefficient");
  Integer r = s.get_num();
  std::lock_guard<std::mutex> lock(lr_mutex);
  lr_cache().emplace(key, r);
  return r;
}

SchurVector schur_multiply(const SchurVector& a, const SchurVector& b) {
  SchurVector out;
  for (const auto& [p, c] : a.terms())
    for (const auto& [q, d] : b.terms())
      for (const auto& nu : partitions(p.size() + q.size())) out.add(nu, c * d * lr_coefficient(p, q, nu));
  return out;
}

Integer kronecker_coeff(const Partition& lambda, const Partition& mu, const Partition& nu) {
  int n = lambda.size();
  if (mu.size() != n || nu.size() != n) throw std::invalid_argument("Kronecker coefficient needs partitions of equal size");
  Rational s = 0;
  for (const auto& rho : partitions_of(n)) {
    Integer v = murnaghan_nakayama(lambda.parts(), rho);
    if (v == 0) continue;
    v *= murnaghan_nakayama(mu.parts(), rho);
    if (v == 0) continue;
    v *= murnaghan_nakayama(nu.parts(), rho);
    s += Rational(v) / Rational(z_coefficient(rho));
  }
  if (s.get_den() != 1) throw std::logic_error("non-integral Kronecker coefficient");
  return s.get_num();
}

SchurVector kronecker_product(const Partition& lambda, const Partition& mu) {
  SchurVector out;
  for (const auto& nu : partitions(lambda.size())) out.add(nu, kronecker_coeff(lambda, mu, nu));
  return out;
}

SchurVector skew_double(const Partition& lambda, const Partition& mu, const Partition& nu) {
  SchurVector out;
  int k = lambda.size() - mu.size() - nu.size();
  if (k < 0) return out;
  auto mn = schur_multiply(SchurVector::schur(mu), SchurVector::schur(nu));
  for (const auto& tau : partitions(k)) {
    Integer c = 0;
    for (const auto& [kappa, m] : mn.terms()) c += m * lr_coefficient(kappa, tau, lambda);
    out.add(tau, c);
  }
  return out;
}

SchurVector stable_kronecker_littlewood(const Partition& lambda, const Partition& mu) {
  if (lambda.size() > 6 || mu.size() > 6) throw std::length_error("stable_kronecker_littlewood limited to size 6");
  SchurVector out;
  int m = std::min(lambda.size(), mu.size());
  for (int k = 0; k <= m; ++k)
    for (const auto& alpha : partitions(k))
      for (const auto& beta : partitions(k)) {
        SchurVector ab = kronecker_product(alpha, beta);
        if (ab.is_zero()) continue;
        int g = std::min(lambda.size() - k, mu.size() - k);
        for (const auto& gamma : partitions_up_to(g)) {
          SchurVector l = skew_double(lambda, alpha, gamma);
          if (l.is_zero()) continue;
          SchurVector r = skew_double(mu, beta, gamma);
          if (r.is_zero()) continue;
          out += schur_multiply(schur_multiply(ab, l), r);
        }
      }
  return out;
}

SchurVector stable_kronecker_limit(const Partition& lambda, const Partition& mu, int n) {
  if (n < lambda.size() + lambda.first())
    throw std::domain_error("n must be at least |lambda| + lambda_1 = " + std::to_string(lambda.size() + lambda.first()));
  if (n < mu.size() + mu.first())
    throw std::domain_error("n must be at least |mu| + mu_1 = " + std::to_string(mu.size() + mu.first()));
  if (n > 14) throw std::length_error("stable_kronecker_limit limited to n <= 14");
  Partition lt = lambda.padded(n), mt = mu.padded(n);
  SchurVector out;
  int top = std::min(lambda.size() + mu.size(), n);
  for (const auto& tau : partitions_up_to(top)) {
    if (n - tau.size() < tau.first()) continue;
    out.add(tau, kronecker_coeff(lt, mt, tau.padded(n)));
  }
  return out;
}

MPoly charlier(int m) {
  if (m < 0) throw std::invalid_argument("Charlier index must be nonnegative");
  MPoly c;
  for (int k = 0; k <= m; ++k) {
    MPoly term = falling_factorial("t", static_cast<unsigned>(k)) * Rational(binomial(m, k));
    if (k % 2) c -= term;
    else c += term;
  }
  return c;
}

MPoly deligne_dim(const Partition& lambda) {
  int n = lambda.size();
  if (n > 8) throw std::length_error("deligne_dim limited to |lambda| <= 8");
  PartitionParts ones(n, 1);
  Integer deg = n ? murnaghan_nakayama(lambda.parts(), ones) : Integer(1);
  MPoly f(Rational(deg) / Rational(factorial(n)));
  auto t = MPoly::variable("t");
  for (int i = 1; i <= n; ++i) {
    int li = i <= lambda.length() ? lambda.parts()[i - 1] : 0;
    f *= t - MPoly(li + n - i);
  }
  return f;
}

MPoly charlier_dimension_sum(const Partition& lambda) {
  int n = lambda.size();
  if (n > 8) throw std::length_error("charlier_dimension_sum limited to |lambda| <= 8");
  if (n == 0) return MPoly(1);
  MPoly s;
  for (const auto& mu : partitions_of(n)) {
    int m1 = static_cast<int>(std::count(mu.begin(), mu.end(), 1));
    Rational c = Rational(murnaghan_nakayama(lambda.parts(), mu)) / Rational(z_coefficient(mu));
    if (mu.size() % 2) c = -c;
    s += charlier(m1) * c;
  }
  return s;
}

}  // namespace tenv
