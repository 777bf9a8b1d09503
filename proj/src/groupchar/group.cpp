#include "tenv/groupchar/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace tenv {

FiniteGroup::FiniteGroup(std::vector<int> table, int n, std::string name)
    : n_(n), table_(std::move(table)), name_(std::move(name)) {
  if (n <= 0) throw std::invalid_argument("group order must be positive");
  if (n > kMaxOrder)
    throw std::length_error("group of order " + std::to_string(n) + " exceeds the limit " +
                            std::to_string(kMaxOrder));
  if (table_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("multiplication table has the wrong size");
  for (int v : table_)
    if (v < 0 || v >= n) throw std::invalid_argument("multiplication table entry out of range");
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("multiplication table has no identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_) {
        if (mul(b, a) != identity_) throw std::invalid_argument("one-sided inverse in table");
        inverse_[a] = b;
        break;
      }
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0) throw std::invalid_argument("element without inverse");
  if (n <= 128) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < n; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) throw std::invalid_argument("table is not associative");
      }
  } else {
    std::mt19937 rng(20240607);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 200000; ++i) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("table is not associative");
    }
  }
  orders_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int k = 1, p = a;
    while (p != identity_) {
      p = mul(p, a);
      ++k;
    }
    orders_[a] = k;
  }
  // conjugacy classes, identity class first, then by least element
  class_of_.assign(n, -1);
  std::vector<std::vector<int>> cls;
  auto make_class = [&](int g) {
    std::vector<int> c;
    for (int h = 0; h < n; ++h) c.push_back(conj(g, h));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  };
  cls.push_back(make_class(identity_));
  for (int g : cls[0]) class_of_[g] = 0;
  for (int g = 0; g < n; ++g) {
    if (class_of_[g] >= 0) continue;
    cls.push_back(make_class(g));
    for (int h : cls.back()) class_of_[h] = static_cast<int>(cls.size()) - 1;
  }
  classes_ = std::move(cls);
  auto cd = std::make_shared<ClassData>();
  cd->group_order = n;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    cd->sizes.emplace_back(static_cast<unsigned long>(classes_[c].size()));
    cd->inverse_class.push_back(class_of_[inverse_[classes_[c].front()]]);
    cd->element_orders.push_back(orders_[classes_[c].front()]);
    cd->labels.push_back(std::to_string(orders_[classes_[c].front()]) + static_cast<char>('a' + 0));
  }
  // labels like "2a", "2b" by element order
  std::map<int, int> seen;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    int o = cd->element_orders[c];
    int k = seen[o]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
      k /= 26;
    } while (k > 0);
    cd->labels[c] = std::to_string(o) + suffix;
  }
  class_data_ = cd;
}

int FiniteGroup::power(int a, long k) const {
  long o = orders_[a];
  k = ((k % o) + o) % o;
  int r = identity_;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::exponent() const {
  long e = 1;
  for (int o : orders_) e = std::lcm(e, static_cast<long>(o));
  return static_cast<int>(e);
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::generated(const std::vector<int>& gens) const {
  std::vector<char> in(n_, 0);
  std::vector<int> elems{identity_};
  in[identity_] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int p = mul(elems[i], g);
      if (!in[p]) {
        in[p] = 1;
        elems.push_back(p);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<int> cur{identity_};
  while (static_cast<int>(cur.size()) < n_) {
    // pick the element enlarging the subgroup most; ties by index
    int best = -1;
    std::size_t best_size = 0;
    for (int g = 0; g < n_; ++g) {
      if (std::binary_search(cur.begin(), cur.end(), g)) continue;
      auto gs = gens;
      gs.push_back(g);
      std::size_t s = generated(gs).size();
      if (s > best_size) {
        best_size = s;
        best = g;
      }
    }
    gens.push_back(best);
    cur = generated(gens);
  }
  return gens;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  if (elems.empty()) return false;
  std::vector<char> in(n_, 0);
  for (int e : elems) {
    if (e < 0 || e >= n_) return false;
    in[e] = 1;
  }
  for (int a : elems)
    for (int b : elems)
      if (!in[mul(a, inverse_[b])]) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& elems) const {
  if (!is_subgroup(elems)) return false;
  std::vector<char> in(n_, 0);
  for (int e : elems) in[e] = 1;
  for (int a : elems)
    for (int h = 0; h < n_; ++h)
      if (!in[conj(a, h)]) return false;
  return true;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& elems) const {
  if (!is_subgroup(elems)) throw std::invalid_argument("not a subgroup");
  std::vector<int> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = static_cast<int>(i);
  int m = static_cast<int>(sorted.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = pos[mul(sorted[a], sorted[b])];
  return FiniteGroup(std::move(table), m);
}

FiniteGroup FiniteGroup::quotient(const std::vector<int>& normal, std::vector<int>* coset_of) const {
  if (!is_normal(normal)) throw std::invalid_argument("not a normal subgroup");
  std::vector<int> coset(n_, -1);
  std::vector<int> reps;
  for (int g = 0; g < n_; ++g) {
    if (coset[g] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int k : normal) coset[mul(g, k)] = c;
  }
  int m = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = coset[mul(reps[a], reps[b])];
  if (coset_of) *coset_of = coset;
  return FiniteGroup(std::move(table), m);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order(), m = b.order(), N = n * m;
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      table[static_cast<std::size_t>(x) * N + y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "x" + b.name();
  return FiniteGroup(std::move(table), N, name);
}

namespace groups {

namespace {
using Perm = std::vector<int>;
Perm compose(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[h[i]];
  return r;
}
Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}
int sign(const Perm& p) {
  int s = 1;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}
}  // namespace

FiniteGroup cyclic(int n) {
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteGroup(std::move(table), n, "C" + std::to_string(n));
}

FiniteGroup dihedral(int n) {
  // elements r^i s^j as index j*n + i; s r s = r^-1
  int N = 2 * n;
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int i1 = x % n, j1 = x / n, i2 = y % n, j2 = y / n;
      int i = j1 ? (i1 - i2 + n) % n : (i1 + i2) % n;
      table[static_cast<std::size_t>(x) * N + y] = ((j1 + j2) % 2) * n + i;
    }
  return FiniteGroup(std::move(table), N, "D" + std::to_string(n));
}

std::pair<FiniteGroup, std::vector<std::vector<int>>> symmetric_with_perms(int n) {
  if (n < 0 || n > 6) throw std::length_error("symmetric group tables are limited to n <= 6");
  std::vector<Perm> all;
  Perm p = identity_perm(n);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = static_cast<int>(i);
  int N = static_cast<int>(all.size());
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) table[static_cast<std::size_t>(a) * N + b] = index.at(compose(all[a], all[b]));
  return {FiniteGroup(std::move(table), N, "S" + std::to_string(n)), all};
}

FiniteGroup symmetric(int n) { return symmetric_with_perms(n).first; }

FiniteGroup alternating(int n) {
  auto [sn, perms] = symmetric_with_perms(n);
  std::vector<int> even;
  for (std::size_t i = 0; i < perms.size(); ++i)
    if (sign(perms[i]) == 1) even.push_back(static_cast<int>(i));
  FiniteGroup a = sn.subgroup(even);
  a.set_name("A" + std::to_string(n));
  return a;
}

FiniteGroup quaternion() {
  // elements +-1, +-i, +-j, +-k as sign*4 + unit, unit in {1,i,j,k}
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int s = (x / 4 + y / 4 + unit_sign[x % 4][y % 4]) % 2;
      table[x * 8 + y] = s * 4 + unit_mul[x % 4][y % 4];
    }
  return FiniteGroup(std::move(table), 8, "Q8");
}

FiniteGroup from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int n = j.at("order").get<int>();
  const auto& rows = j.at("table");
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("table row count differs from order");
  std::vector<int> table;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table row has the wrong length");
    for (const auto& v : row) table.push_back(v.get<int>());
  }
  FiniteGroup g(std::move(table), n, j.value("name", std::string()));
  if (j.contains("identity") && j["identity"].get<int>() != g.identity())
    throw std::invalid_argument("declared identity is not the identity of the table");
  return g;
}

std::string to_json(const FiniteGroup& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["order"] = g.order();
  j["identity"] = g.identity();
  j["table"] = nlohmann::json::array();
  for (int a = 0; a < g.order(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    j["table"].push_back(row);
  }
  return j.dump();
}

}  // namespace groups

}  // namespace tenv
