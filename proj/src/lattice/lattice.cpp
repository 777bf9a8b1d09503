#include "tenv/lattice/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tenv/core/linalg.hpp"

namespace tenv {

namespace {

using Bits = std::vector<std::uint64_t>;

}  // namespace

FiniteLattice::FiniteLattice(int n, const Leq& leq, std::vector<std::string> labels, const Op& meet,
                             const Op& join)
    : n_(n), labels_(std::move(labels)) {
  if (n <= 0) throw std::invalid_argument("a lattice needs at least one element");
  if (n > kMaxSize)
    throw std::length_error("lattice with " + std::to_string(n) + " elements exceeds the limit " +
                            std::to_string(kMaxSize));
  if (labels_.empty()) {
    labels_.resize(n);
    for (int i = 0; i < n; ++i) labels_[i] = std::to_string(i);
  }
  if (static_cast<int>(labels_.size()) != n) throw std::invalid_argument("label count mismatch");

  std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<Bits> down(n, Bits(words, 0));
  leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (leq(a, b)) {
        leq_[idx(a, b)] = 1;
        down[b][a / 64] |= std::uint64_t(1) << (a % 64);
      }
  for (int a = 0; a < n; ++a) {
    if (!leq_[idx(a, a)]) throw std::invalid_argument("order is not reflexive");
    for (int b = a + 1; b < n; ++b)
      if (leq_[idx(a, b)] && leq_[idx(b, a)]) throw std::invalid_argument("order is not antisymmetric");
  }
  // transitivity: down(a) contains down(b) for every b in down(a)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!leq_[idx(b, a)]) continue;
      for (std::size_t w = 0; w < words; ++w)
        if ((down[b][w] & ~down[a][w]) != 0) throw std::invalid_argument("order is not transitive");
    }

  std::vector<int> count(n);
  for (int a = 0; a < n; ++a) {
    int c = 0;
    for (auto w : down[a]) c += __builtin_popcountll(w);
    count[a] = c;
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return count[a] < count[b]; });
  bottom_ = order_.front();
  top_ = order_.back();
  for (int a = 0; a < n; ++a)
    if (!leq_[idx(bottom_, a)] || !leq_[idx(a, top_)])
      throw std::invalid_argument("order has no unique minimum and maximum");

  meet_.assign(static_cast<std::size_t>(n) * n, -1);
  join_.assign(static_cast<std::size_t>(n) * n, -1);
  if (meet && join) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        meet_[idx(a, b)] = meet(a, b);
        join_[idx(a, b)] = join(a, b);
      }
    return;
  }
  std::map<Bits, int> by_down;
  std::vector<Bits> up(n, Bits(words, 0));
  for (int a = 0; a < n; ++a) {
    by_down.emplace(down[a], a);
    for (int b = 0; b < n; ++b)
      if (leq_[idx(a, b)]) up[a][b / 64] |= std::uint64_t(1) << (b % 64);
  }
  std::map<Bits, int> by_up;
  for (int a = 0; a < n; ++a) by_up.emplace(up[a], a);
  Bits tmp(words);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      for (std::size_t w = 0; w < words; ++w) tmp[w] = down[a][w] & down[b][w];
      auto it = by_down.find(tmp);
      if (it == by_down.end()) throw std::invalid_argument("order is not a lattice (no meet)");
      meet_[idx(a, b)] = meet_[idx(b, a)] = it->second;
      for (std::size_t w = 0; w < words; ++w) tmp[w] = up[a][w] & up[b][w];
      auto jt = by_up.find(tmp);
      if (jt == by_up.end()) throw std::invalid_argument("order is not a lattice (no join)");
      join_[idx(a, b)] = join_[idx(b, a)] = jt->second;
    }
}

std::vector<int> FiniteLattice::upper_covers(int a) const {
  std::vector<int> out;
  for (int b = 0; b < n_; ++b) {
    if (!lt(a, b)) continue;
    bool cover = true;
    for (int c = 0; c < n_ && cover; ++c)
      if (lt(a, c) && lt(c, b)) cover = false;
    if (cover) out.push_back(b);
  }
  return out;
}

std::vector<int> FiniteLattice::lower_covers(int a) const {
  std::vector<int> out;
  for (int b = 0; b < n_; ++b) {
    if (!lt(b, a)) continue;
    bool cover = true;
    for (int c = 0; c < n_ && cover; ++c)
      if (lt(b, c) && lt(c, a)) cover = false;
    if (cover) out.push_back(b);
  }
  return out;
}

std::vector<std::pair<int, int>> FiniteLattice::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b : upper_covers(a)) out.emplace_back(a, b);
  return out;
}

std::vector<int> FiniteLattice::interval(int a, int b) const {
  std::vector<int> out;
  for (int z : order_)
    if (leq(a, z) && leq(z, b)) out.push_back(z);
  return out;
}

std::vector<Integer> FiniteLattice::mobius_from(int a) const {
  std::vector<Integer> mu(n_, 0);
  for (int z : order_) {
    if (!leq(a, z)) continue;
    if (z == a) {
      mu[z] = 1;
      continue;
    }
    Integer s = 0;
    for (int w = 0; w < n_; ++w)
      if (leq(a, w) && lt(w, z)) s += mu[w];
    mu[z] = -s;
  }
  return mu;
}

std::vector<Integer> FiniteLattice::mobius_to(int b) const {
  std::vector<Integer> mu(n_, 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    int z = *it;
    if (!leq(z, b)) continue;
    if (z == b) {
      mu[z] = 1;
      continue;
    }
    Integer s = 0;
    for (int w = 0; w < n_; ++w)
      if (lt(z, w) && leq(w, b)) s += mu[w];
    mu[z] = -s;
  }
  return mu;
}

Integer FiniteLattice::mobius(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || !leq(a, b))
    throw std::invalid_argument("mobius(a, b) requires a <= b");
  return mobius_from(a)[b];
}

FiniteLattice FiniteLattice::induced(const std::vector<int>& elements) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<int>(i);
  std::vector<std::string> labels;
  for (int e : elements) labels.push_back(labels_[e]);
  auto inherit = [&](const std::vector<std::int32_t>& table) {
    return [&, table_ptr = &table](int a, int b) {
      int r = pos[(*table_ptr)[idx(elements[a], elements[b])]];
      if (r < 0) throw std::invalid_argument("subset is not closed under meet and join");
      return r;
    };
  };
  return FiniteLattice(
      static_cast<int>(elements.size()),
      [&](int a, int b) { return leq(elements[a], elements[b]); }, labels, inherit(meet_),
      inherit(join_));
}

bool FiniteLattice::is_automorphism(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) return false;
  std::vector<char> seen(n_, 0);
  for (int p : perm) {
    if (p < 0 || p >= n_ || seen[p]) return false;
    seen[p] = 1;
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (leq(a, b) != leq(perm[a], perm[b])) return false;
  return true;
}

std::vector<int> FiniteLattice::fixed_points(const std::vector<int>& perm) const {
  std::vector<int> out;
  for (int z : order_)
    if (perm[z] == z) out.push_back(z);
  return out;
}

// ------------------------------------------------------------ structure

bool is_modular(const FiniteLattice& L) {
  int n = L.size();
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      if (!L.leq(a, c) || a == c) continue;
      for (int b = 0; b < n; ++b)
        if (L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), c)) return false;
    }
  return true;
}

namespace {

bool complemented_interval(const FiniteLattice& L, int lo, int hi) {
  auto elems = L.interval(lo, hi);
  for (int a : elems) {
    bool found = false;
    for (int b : elems)
      if (L.meet(a, b) == lo && L.join(a, b) == hi) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool is_complemented(const FiniteLattice& L) { return complemented_interval(L, L.bottom(), L.top()); }

std::vector<int> heights(const FiniteLattice& L) {
  std::vector<int> longest(L.size(), 0);
  auto cov = L.covers();
  for (int z : L.linear_order())
    for (int w : L.lower_covers(z)) longest[z] = std::max(longest[z], longest[w] + 1);
  for (const auto& [a, b] : cov)
    if (longest[b] != longest[a] + 1) throw std::domain_error("lattice is not graded");
  return longest;
}

int lattice_rank(const FiniteLattice& L) { return heights(L)[L.top()]; }

std::vector<int> atoms(const FiniteLattice& L) {
  if (L.size() == 1) return {};
  return L.upper_covers(L.bottom());
}

int socle(const FiniteLattice& L) {
  int s = L.bottom();
  for (int a : atoms(L)) s = L.join(s, a);
  return s;
}

LatticeStructure structure(const FiniteLattice& L) {
  LatticeStructure s;
  s.is_modular = is_modular(L);
  s.is_complemented = is_complemented(L);
  try {
    s.rank = lattice_rank(L);
  } catch (const std::domain_error&) {
    s.rank.reset();
  }
  s.atoms = atoms(L);
  s.socle = socle(L);
  return s;
}

std::vector<MuVanishingFlags> mu_vanishing_profile(const FiniteLattice& L) {
  if (!is_modular(L)) throw std::domain_error("modularity required");
  auto mu = L.mobius_from(L.bottom());
  auto at = atoms(L);
  int soc = socle(L);
  std::vector<MuVanishingFlags> out(L.size());
  for (int z = 0; z < L.size(); ++z) {
    int j = L.bottom();
    for (int a : at)
      if (L.leq(a, z)) j = L.join(j, a);
    out[z] = {mu[z] != 0, j == z, complemented_interval(L, L.bottom(), z), L.leq(z, soc)};
  }
  return out;
}

// ------------------------------------------------------------ order complex

namespace {

void collect_chains(const FiniteLattice& L, const std::vector<char>& allowed, int from,
                    std::vector<int>& cur, std::vector<std::vector<std::vector<int>>>& out) {
  if (from == L.top()) {
    std::size_t deg = cur.size() - 1;
    if (out.size() <= deg) out.resize(deg + 1);
    out[deg].push_back(cur);
    return;
  }
  for (int z = 0; z < L.size(); ++z) {
    if (!allowed[z] || !L.lt(from, z)) continue;
    cur.push_back(z);
    collect_chains(L, allowed, z, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::vector<int>>> chains(const FiniteLattice& L, const std::vector<char>& allowed) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> cur{L.bottom()};
  if (L.size() == 1) {
    out.resize(1);
    out[0].push_back(cur);
    return out;
  }
  collect_chains(L, allowed, L.bottom(), cur, out);
  return out;
}

}  // namespace

std::vector<Integer> chain_counts(const FiniteLattice& L) {
  auto ch = chains(L, std::vector<char>(L.size(), 1));
  std::vector<Integer> out;
  for (const auto& c : ch) out.emplace_back(static_cast<unsigned long>(c.size()));
  return out;
}

std::vector<Integer> fixed_chain_counts(const FiniteLattice& L, const std::vector<int>& perm) {
  if (!L.is_automorphism(perm)) throw std::invalid_argument("not a lattice automorphism");
  std::vector<char> allowed(L.size(), 0);
  for (int z = 0; z < L.size(); ++z) allowed[z] = perm[z] == z;
  auto ch = chains(L, allowed);
  std::vector<Integer> out;
  for (const auto& c : ch) out.emplace_back(static_cast<unsigned long>(c.size()));
  return out;
}

Integer euler_characteristic(const std::vector<Integer>& counts) {
  Integer s = 0;
  for (std::size_t n = 0; n < counts.size(); ++n) s += (n % 2 ? -1 : 1) * counts[n];
  return s;
}

std::vector<Integer> order_complex_homology(const FiniteLattice& L) {
  auto ch = chains(L, std::vector<char>(L.size(), 1));
  std::size_t top_deg = ch.size();
  // rank of d_n : C_n -> C_{n-1}
  std::vector<std::size_t> rk(top_deg + 1, 0);
  for (std::size_t n = 2; n < top_deg; ++n) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < ch[n - 1].size(); ++i) index[ch[n - 1][i]] = i;
    RationalMatrix m(ch[n].size(), std::vector<Rational>(ch[n - 1].size(), Rational(0)));
    for (std::size_t r = 0; r < ch[n].size(); ++r) {
      const auto& c = ch[n][r];
      for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        std::vector<int> face = c;
        face.erase(face.begin() + static_cast<long>(i));
        m[r][index.at(face)] += (i % 2 ? -1 : 1);
      }
    }
    rk[n] = matrix_rank(std::move(m));
  }
  std::vector<Integer> out(top_deg, 0);
  for (std::size_t n = 0; n < top_deg; ++n) {
    long dim = static_cast<long>(ch[n].size());
    long r_out = static_cast<long>(rk[n]);
    long r_in = n + 1 < top_deg ? static_cast<long>(rk[n + 1]) : 0;
    out[n] = dim - r_out - r_in;
  }
  if (L.size() >= 2 && !out.empty()) out[0] = 0;
  return out;
}

FiniteLattice fixed_sublattice(const FiniteLattice& L, const std::vector<int>& perm) {
  if (!L.is_automorphism(perm)) throw std::invalid_argument("not a lattice automorphism");
  return L.induced(L.fixed_points(perm));
}

// ------------------------------------------------------------ factorization

bool isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  int n = a.size();
  if (n != b.size()) return false;
  auto sig = [](const FiniteLattice& L, int z) {
    int d = 0, u = 0;
    for (int w = 0; w < L.size(); ++w) {
      d += L.leq(w, z);
      u += L.leq(z, w);
    }
    return std::make_pair(d, u);
  };
  std::vector<std::pair<int, int>> sa(n), sb(n);
  for (int z = 0; z < n; ++z) {
    sa[z] = sig(a, z);
    sb[z] = sig(b, z);
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  const auto& order = a.linear_order();
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> extend = [&](int k) {
    if (k == n) return true;
    int z = order[k];
    for (int w = 0; w < n; ++w) {
      if (used[w] || sb[w] != sa[z]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int y = order[j];
        if (a.leq(y, z) != b.leq(map[y], w) || a.leq(z, y) != b.leq(w, map[y])) ok = false;
      }
      if (!ok) continue;
      map[z] = w;
      used[w] = 1;
      if (extend(k + 1)) return true;
      used[w] = 0;
      map[z] = -1;
    }
    return false;
  };
  return extend(0);
}

namespace {

bool is_central(const FiniteLattice& L, int c) {
  for (int d = 0; d < L.size(); ++d) {
    if (L.meet(c, d) != L.bottom() || L.join(c, d) != L.top()) continue;
    bool ok = true;
    for (int z = 0; z < L.size() && ok; ++z)
      if (L.join(L.meet(z, c), L.meet(z, d)) != z) ok = false;
    if (ok) return true;
  }
  return false;
}

Integer ipow(long q, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

// number of k-dimensional subspaces of F_q^n
Integer gaussian_binomial(int n, int k, long q) {
  Integer num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

}  // namespace

std::vector<FiniteLattice> factor_direct_product(const FiniteLattice& L) {
  if (!is_modular(L) || !is_complemented(L))
    throw std::domain_error("factorization requires a complemented modular lattice");
  std::vector<int> center;
  for (int c = 0; c < L.size(); ++c)
    if (is_central(L, c)) center.push_back(c);
  std::vector<FiniteLattice> factors;
  for (int c : center) {
    if (c == L.bottom()) continue;
    bool minimal = true;
    for (int d : center)
      if (d != L.bottom() && L.lt(d, c)) minimal = false;
    if (minimal) factors.push_back(L.induced(L.interval(L.bottom(), c)));
  }
  std::vector<std::string> keys;
  for (const auto& f : factors) keys.push_back(classify_indecomposable(f));
  std::vector<std::size_t> idx(factors.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (factors[a].size() != factors[b].size()) return factors[a].size() > factors[b].size();
    return keys[a] < keys[b];
  });
  std::vector<FiniteLattice> out;
  for (auto i : idx) out.push_back(factors[i]);
  return out;
}

std::string classify_indecomposable(const FiniteLattice& L) {
  if (L.size() == 1) return "trivial";
  if (L.size() == 2) return "B1";
  int r = lattice_rank(L);
  auto h = heights(L);
  if (r == 2) return "M_" + std::to_string(L.size() - 2);
  long a = static_cast<long>(atoms(L).size());
  for (long q = 2; q < a; ++q) {
    if (gaussian_binomial(r, 1, q) != a) continue;
    bool counts_ok = true;
    for (int k = 0; k <= r && counts_ok; ++k) {
      long c = std::count(h.begin(), h.end(), k);
      if (gaussian_binomial(r, k, q) != c) counts_ok = false;
    }
    if (!counts_ok) break;
    // every projective plane of order at most 8 is Desarguesian
    if (r == 3 && q > 8) return "unclassified rank-3";
    if (r == 3 && q == 6) return "unclassified rank-3";
    return "L_" + std::to_string(r) + "(" + std::to_string(q) + ")";
  }
  return "unclassified rank-" + std::to_string(r);
}

std::string classify(const FiniteLattice& L) {
  if (!is_modular(L) || !is_complemented(L)) return "not complemented modular";
  auto factors = factor_direct_product(L);
  if (factors.empty()) return "trivial";
  std::map<std::string, int> counts;
  for (const auto& f : factors) counts[classify_indecomposable(f)]++;
  std::string s;
  for (const auto& [k, c] : counts) {
    if (!s.empty()) s += " x ";
    s += k;
    if (c > 1) s += "^" + std::to_string(c);
  }
  return s;
}

// ------------------------------------------------------------ builders

namespace lattices {

FiniteLattice boolean(int n) {
  int size = 1 << n;
  std::vector<std::string> labels;
  for (int s = 0; s < size; ++s) {
    std::string l = "{";
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) l += (l.size() > 1 ? "," : "") + std::to_string(i + 1);
    labels.push_back(l + "}");
  }
  return FiniteLattice(
      size, [](int a, int b) { return (a & ~b) == 0; }, labels, [](int a, int b) { return a & b; },
      [](int a, int b) { return a | b; });
}

FiniteLattice chain(int n) {
  return FiniteLattice(
      n, [](int a, int b) { return a <= b; }, {}, [](int a, int b) { return std::min(a, b); },
      [](int a, int b) { return std::max(a, b); });
}

FiniteLattice pentagon() {
  // 0 < a < b < 1 and 0 < c < 1
  static const bool rel[5][5] = {{1, 1, 1, 1, 1}, {0, 1, 1, 0, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1},
                                 {0, 0, 0, 0, 1}};
  return FiniteLattice(5, [](int a, int b) { return rel[a][b]; }, {"0", "a", "b", "c", "1"});
}

FiniteLattice diamond(int k) {
  int n = k + 2;
  std::vector<std::string> labels{"0"};
  for (int i = 0; i < k; ++i) labels.push_back("a" + std::to_string(i));
  labels.push_back("1");
  return FiniteLattice(
      n, [n](int a, int b) { return a == b || a == 0 || b == n - 1; }, labels);
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
  int m = b.size();
  std::vector<std::string> labels;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < m; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  return FiniteLattice(
      a.size() * m,
      [&](int x, int y) { return a.leq(x / m, y / m) && b.leq(x % m, y % m); }, labels,
      [&](int x, int y) { return a.meet(x / m, y / m) * m + b.meet(x % m, y % m); },
      [&](int x, int y) { return a.join(x / m, y / m) * m + b.join(x % m, y % m); });
}

namespace {
void rgs(int n, std::vector<int>& cur, int maxv, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= maxv + 1; ++v) {
    cur.push_back(v);
    rgs(n, cur, std::max(maxv, v), out);
    cur.pop_back();
  }
}
}  // namespace

FiniteLattice partitions(int n) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  if (n == 0)
    all.push_back({});
  else
    rgs(n, cur, -1, all);
  std::vector<std::string> labels;
  for (const auto& p : all) {
    int blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
    std::string l;
    for (int b = 0; b < blocks; ++b) {
      l += "{";
      bool first = true;
      for (int i = 0; i < n; ++i)
        if (p[i] == b) {
          l += (first ? "" : ",") + std::to_string(i + 1);
          first = false;
        }
      l += "}";
    }
    labels.push_back(l.empty() ? "{}" : l);
  }
  // a <= b iff a refines b
  return FiniteLattice(
      static_cast<int>(all.size()),
      [&](int a, int b) {
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (all[a][i] == all[a][j] && all[b][i] != all[b][j]) return false;
        return true;
      },
      labels);
}

}  // namespace lattices

}  // namespace tenv
