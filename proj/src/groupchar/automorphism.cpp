#include "tenv/groupchar/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tenv {

namespace {

struct Spanning {
  std::vector<int> gens;
  std::vector<int> parent, via;  // element = parent * gens[via]
  std::vector<int> bfs;
};

Spanning spanning_tree(const FiniteGroup& g, const std::vector<int>& gens) {
  Spanning s;
  s.gens = gens;
  s.parent.assign(g.order(), -1);
  s.via.assign(g.order(), -1);
  std::vector<char> seen(g.order(), 0);
  seen[g.identity()] = 1;
  s.bfs.push_back(g.identity());
  for (std::size_t i = 0; i < s.bfs.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int e = g.mul(s.bfs[i], gens[k]);
      if (!seen[e]) {
        seen[e] = 1;
        s.parent[e] = s.bfs[i];
        s.via[e] = static_cast<int>(k);
        s.bfs.push_back(e);
      }
    }
  return s;
}

// extends generator images to a map; empty if not a homomorphism
std::vector<int> extend(const FiniteGroup& a, const FiniteGroup& b, const Spanning& s, const std::vector<int>& imgs) {
  std::vector<int> phi(a.order(), -1);
  phi[a.identity()] = b.identity();
  for (std::size_t i = 1; i < s.bfs.size(); ++i) {
    int e = s.bfs[i];
    phi[e] = b.mul(phi[s.parent[e]], imgs[s.via[e]]);
  }
  for (int x : s.bfs)
    for (std::size_t k = 0; k < s.gens.size(); ++k)
      if (phi[a.mul(x, s.gens[k])] != b.mul(phi[x], imgs[k])) return {};
  return phi;
}

}  // namespace

std::vector<std::vector<int>> isomorphisms(const FiniteGroup& a, const FiniteGroup& b, int limit,
                                           bool throw_on_limit) {
  std::vector<std::vector<int>> out;
  if (a.order() != b.order()) return out;
  auto gens = a.generators();
  auto s = spanning_tree(a, gens);
  std::vector<std::vector<int>> cand(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (int y = 0; y < b.order(); ++y)
      if (b.element_order(y) == a.element_order(gens[k])) cand[k].push_back(y);
  std::vector<int> imgs(gens.size());
  std::vector<char> hit(b.order());
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto phi = extend(a, b, s, imgs);
      if (phi.empty()) return true;
      std::fill(hit.begin(), hit.end(), 0);
      for (int v : phi) hit[v] = 1;
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return true;
      if (static_cast<int>(out.size()) >= limit) {
        if (throw_on_limit) throw std::length_error("isomorphism count exceeds " + std::to_string(limit));
        return false;
      }
      out.push_back(std::move(phi));
      return true;
    }
    for (int y : cand[k]) {
      imgs[k] = y;
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order() || a.class_count() != b.class_count()) return false;
  return !isomorphisms(a, b, 1, false).empty();
}

std::pair<FiniteGroup, std::vector<std::vector<int>>> permutation_group(const std::vector<std::vector<int>>& gens,
                                                                        int degree) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto mul = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[y[i]];
    return r;
  };
  return group_from_generators<std::vector<int>>(gens, id, mul);
}

std::pair<FiniteGroup, std::vector<std::vector<int>>> automorphism_group(const FiniteGroup& g) {
  auto auts = isomorphisms(g, g);
  // the automorphisms are already all elements; build the table directly
  std::map<std::vector<int>, int> index;
  std::vector<int> id(g.order());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  index[id] = 0;
  for (auto& a : auts)
    if (index.emplace(a, static_cast<int>(elems.size())).second) elems.push_back(a);
  int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<int> r(g.order());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < g.order(); ++i) r[i] = elems[a][elems[b][i]];
      table[static_cast<std::size_t>(a) * n + b] = index.at(r);
    }
  return {FiniteGroup(std::move(table), n, "Aut(" + g.name() + ")"), std::move(elems)};
}

std::vector<int> order_prime_factors(int n) {
  std::vector<int> f;
  for (int p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      f.push_back(p);
      n /= p;
    }
  if (n > 1) f.push_back(n);
  return f;
}

bool is_solvable(const FiniteGroup& g) {
  // derived series reaches the trivial group
  std::vector<int> cur(g.order());
  std::iota(cur.begin(), cur.end(), 0);
  while (cur.size() > 1) {
    std::vector<int> comms;
    for (int a : cur)
      for (int b : cur) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    auto next = g.generated(comms);
    if (next.size() == cur.size()) return false;
    cur = next;
  }
  return true;
}

std::vector<int> canonical_table(const FiniteGroup& g) {
  int n = g.order();
  if (n == 1) return {0};
  // minimal generating tuple size
  std::vector<int> elems(n);
  std::iota(elems.begin(), elems.end(), 0);
  std::vector<int> best;
  for (int k = 1; k <= 8; ++k) {
    double work = std::pow(static_cast<double>(n), k);
    if (work > 4.0e5) throw std::length_error("group too large for canonical labelling");
    std::vector<int> tuple(k, 0);
    bool found = false;
    while (true) {
      bool distinct_nonid = true;
      for (int v : tuple)
        if (v == g.identity()) distinct_nonid = false;
      if (distinct_nonid && static_cast<int>(g.generated(tuple).size()) == n) {
        found = true;
        auto s = spanning_tree(g, tuple);
        std::vector<int> relabel(n);
        for (int i = 0; i < n; ++i) relabel[s.bfs[i]] = i;
        std::vector<int> t(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i) * n + j] = relabel[g.mul(s.bfs[i], s.bfs[j])];
        if (best.empty() || t < best) best = std::move(t);
      }
      int pos = k - 1;
      while (pos >= 0 && ++tuple[pos] == n) tuple[pos--] = 0;
      if (pos < 0) break;
    }
    if (found) break;
  }
  return best;
}

namespace {

std::string abelian_label(const FiniteGroup& g) {
  // invariant factors from p-primary parts
  int n = g.order();
  std::map<int, std::vector<int>> primary;  // p -> exponents of cyclic factors
  for (int p : order_prime_factors(n)) {
    if (primary.count(p)) continue;
    // s_k = log_p #{x : x^{p^k} = 1}
    std::vector<int> s{0};
    long pk = 1;
    while (true) {
      pk *= p;
      long count = 0;
      for (int x = 0; x < n; ++x)
        if (g.power(x, pk) == g.identity()) ++count;
      int e = 0;
      for (long c = count; c > 1; c /= p) ++e;
      s.push_back(e);
      if (s.back() == s[s.size() - 2]) break;
    }
    // r_k = s_k - s_{k-1} cyclic factors have order >= p^k
    std::vector<int> exps;
    for (std::size_t k = 1; k < s.size(); ++k) {
      int r = s[k] - s[k - 1];
      int r_next = k + 1 < s.size() ? s[k + 1] - s[k] : 0;
      for (int i = 0; i < r - r_next; ++i) exps.push_back(static_cast<int>(k));
    }
    std::sort(exps.rbegin(), exps.rend());
    primary[p] = exps;
  }
  std::size_t len = 0;
  for (auto& [p, e] : primary) len = std::max(len, e.size());
  std::vector<long> inv(len, 1);  // largest first
  for (auto& [p, e] : primary)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int j = 0; j < e[i]; ++j) inv[i] *= p;
  std::string out;
  for (auto it = inv.rbegin(); it != inv.rend(); ++it) out += (out.empty() ? "C" : "xC") + std::to_string(*it);
  return out;
}

std::mutex names_mutex;

const std::map<std::vector<int>, std::string>& known_names() {
  static std::map<std::vector<int>, std::string> names;
  static bool built = false;
  std::lock_guard<std::mutex> lock(names_mutex);
  if (!built) {
    built = true;
    names[canonical_table(groups::quaternion())] = "Q8";
    names[canonical_table(groups::alternating(4))] = "A4";
    names[canonical_table(groups::symmetric(4))] = "S4";
    names[canonical_table(groups::symmetric(3))] = "S3";
    for (int k = 4; k <= 12; ++k) names[canonical_table(groups::dihedral(k))] = "D" + std::to_string(k);
    names[canonical_table(direct_product(groups::symmetric(3), groups::cyclic(2)))] = "D6";
    names[canonical_table(direct_product(groups::symmetric(3), groups::cyclic(3)))] = "S3xC3";
    names[canonical_table(direct_product(groups::symmetric(3), groups::cyclic(4)))] = "S3xC4";
    names[canonical_table(direct_product(groups::dihedral(4), groups::cyclic(2)))] = "D4xC2";
    names[canonical_table(direct_product(groups::quaternion(), groups::cyclic(2)))] = "Q8xC2";
    names[canonical_table(direct_product(groups::alternating(4), groups::cyclic(2)))] = "A4xC2";
    names[canonical_table(direct_product(groups::dihedral(4), groups::cyclic(3)))] = "D4xC3";
    names[canonical_table(direct_product(groups::quaternion(), groups::cyclic(3)))] = "Q8xC3";
    names[canonical_table(direct_product(groups::dihedral(5), groups::cyclic(2)))] = "D10";
  }
  return names;
}

}  // namespace

std::string iso_label(const FiniteGroup& g) {
  if (g.order() == 1) return "1";
  if (g.is_abelian()) return abelian_label(g);
  if (g.order() == 6) return "S3";
  auto canon = canonical_table(g);
  const auto& names = known_names();
  auto it = names.find(canon);
  if (it != names.end()) return it->second;
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : canon) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08llx", static_cast<unsigned long long>(h & 0xffffffffULL));
  return "G" + std::to_string(g.order()) + "_" + buf;
}

}  // namespace tenv
