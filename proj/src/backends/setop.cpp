#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tenv/backends/backend.hpp"

namespace tenv {

namespace {

constexpr int kMaxSetSize = 6;
constexpr int kMaxDirectPoints = 10;

using Rgs = std::vector<int>;

// canonical restricted growth string from arbitrary labels
Rgs canonical(const std::vector<int>& labels) {
  std::map<int, int> remap;
  Rgs out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = remap.emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

int block_count(const Rgs& r) { return r.empty() ? 0 : *std::max_element(r.begin(), r.end()) + 1; }

std::vector<Rgs> all_partitions(int n) {
  std::vector<Rgs> out;
  Rgs cur(n);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      cur[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// joins a partition given as labels on the listed points
void unite_labels(UnionFind& uf, const Rgs& r, int offset) {
  std::map<int, int> first;
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto [it, fresh] = first.emplace(r[i], static_cast<int>(i) + offset);
    if (!fresh) uf.unite(it->second, static_cast<int>(i) + offset);
  }
}

Rgs labels_of(UnionFind& uf, int from, int to) {
  std::vector<int> l;
  for (int i = from; i < to; ++i) l.push_back(uf.find(i));
  return canonical(l);
}

MPoly tpow(int k) { return MPoly::variable("t").pow(static_cast<unsigned>(k)); }

std::string mask_text(int mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  return s + "}";
}

std::string rgs_text(const Rgs& r) {
  std::string s;
  for (int v : r) s += std::to_string(v);
  return "|" + s + "|";
}

class SetOpBackend final : public MalcevBackend {
 public:
  std::string name() const override { return "setop"; }
  std::vector<std::string> variables() const override { return {"t"}; }

  ObjId terminal() override { return 0; }
  ObjId product(ObjId a, ObjId b) override { return a + b; }
  ObjId parse_object(const std::string& text) override {
    std::string s = text;
    if (s.rfind("set", 0) == 0) s = s.substr(3);
    std::size_t pos = 0;
    int n = -1;
    try {
      n = std::stoi(s, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != s.size() || n < 0) throw std::invalid_argument("bad Set^op object '" + text + "'");
    return n;
  }
  std::string describe(ObjId x) override { return "finite set of size " + std::to_string(x); }
  std::string label(ObjId x) override { return "set" + std::to_string(x); }
  Integer element_count(ObjId x) override {
    Integer r = 1;
    r <<= static_cast<unsigned>(x);
    return r;
  }

  const FiniteLattice& sub_lattice(ObjId x) override {
    check_size(x);
    return lazy(subs_, x, [&] {
      auto& parts = partitions(x);
      int m = static_cast<int>(parts.size());
      std::vector<std::string> labels;
      for (const auto& p : parts) labels.push_back(rgs_text(p));
      // a below b iff a is coarser than b
      auto leq = [&parts](int a, int b) {
        const auto& pa = parts[a];
        const auto& pb = parts[b];
        std::vector<int> map(pb.size() + 1, -1);
        for (std::size_t i = 0; i < pa.size(); ++i) {
          int& m2 = map[pb[i]];
          if (m2 < 0) m2 = pa[i];
          else if (m2 != pa[i]) return false;
        }
        return true;
      };
      return FiniteLattice(m, leq, labels);
    });
  }
  MPoly delta_sub(ObjId x, int y) override { return tpow(block_count(partitions(x)[y])); }
  ObjId sub_object(ObjId x, int y) override { return block_count(partitions(x)[y]); }

  const FiniteLattice& quot_lattice(ObjId x) override {
    check_size(x);
    return lazy(quots_, x, [&] {
      int m = 1 << x;
      std::vector<std::string> labels;
      for (int z = 0; z < m; ++z) labels.push_back(mask_text(z, x));
      return FiniteLattice(
          m, [](int a, int b) { return (a & b) == b; }, labels, [](int a, int b) { return a | b; },
          [](int a, int b) { return a & b; });
    });
  }
  ObjId quotient_object(ObjId, int z) override { return __builtin_popcount(static_cast<unsigned>(z)); }
  MPoly delta_epi(ObjId x, int z) override { return tpow(x - __builtin_popcount(static_cast<unsigned>(z))); }
  std::optional<MPoly> restrict_epi(ObjId x, int z, int y) override {
    const auto& p = partitions(x)[y];
    std::vector<char> used(x + 1, 0);
    for (int i = 0; i < x; ++i)
      if (z >> i & 1) {
        if (used[p[i]]) return std::nullopt;
        used[p[i]] = 1;
      }
    return tpow(block_count(p) - __builtin_popcount(static_cast<unsigned>(z)));
  }
  int quot_transfer(ObjId x, int z, int w) override {
    if ((w & z) != w) throw std::invalid_argument("quotient is not below");
    int out = 0, k = 0;
    for (int i = 0; i < x; ++i)
      if (z >> i & 1) {
        if (w >> i & 1) out |= 1 << k;
        ++k;
      }
    return out;
  }

  const FiniteGroup& aut(ObjId x) override { return sym(x).group; }
  Integer aut_order(ObjId x) override { return factorial(static_cast<unsigned>(x)); }
  const CharacterTable& aut_table(ObjId x) override {
    auto& s = sym(x);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = tables_.find(x);
    if (it == tables_.end())
      it = tables_.emplace(x, std::make_unique<CharacterTable>(character_table_sn_group(s.group, s.perms))).first;
    return *it->second;
  }
  int act_quot(ObjId x, int g, int z) override {
    const auto& p = sym(x).perms[g];
    int out = 0;
    for (int i = 0; i < x; ++i)
      if (z >> i & 1) out |= 1 << p[i];
    return out;
  }
  bool trivial_on_quotient(ObjId x, int g, int z) override {
    const auto& p = sym(x).perms[g];
    for (int i = 0; i < x; ++i)
      if ((z >> i & 1) && p[i] != i) return false;
    return true;
  }
  std::vector<int> aut_embed_product(ObjId a, ObjId b) override {
    auto& sa = sym(a);
    auto& sb = sym(b);
    auto& sp = sym(a + b);
    std::vector<int> out;
    for (const auto& pa : sa.perms)
      for (const auto& pb : sb.perms) {
        std::vector<int> p(pa);
        for (int v : pb) p.push_back(v + a);
        out.push_back(sp.index.at(p));
      }
    return out;
  }

  RelCode rel_identity(ObjId x) override { return rel_diagonal(x, 0, true); }
  RelCode rel_diagonal(ObjId x, int y) override { return rel_diagonal(x, y, false); }
  RelCode rel_kernel_pair(ObjId x, int z) override {
    std::vector<int> l(2 * x);
    for (int i = 0; i < x; ++i) {
      l[i] = i;
      l[x + i] = (z >> i & 1) ? i : x + i;
    }
    return canonical(l);
  }
  RelCode rel_graph(ObjId x, int g) override {
    const auto& p = sym(x).perms[g];
    std::vector<int> l(2 * x);
    for (int i = 0; i < x; ++i) {
      l[i] = i;
      l[x + p[i]] = i;
    }
    return canonical(l);
  }
  RelCode rel_epi_graph(ObjId x, int z) override {
    std::vector<int> l;
    for (int i = 0; i < x; ++i) l.push_back(i);
    for (int i = 0; i < x; ++i)
      if (z >> i & 1) l.push_back(i);
    return canonical(l);
  }
  std::pair<RelCode, MPoly> rel_compose(ObjId x, ObjId y, ObjId w, const RelCode& r, const RelCode& s) override {
    check_rel(r, x + y);
    check_rel(s, y + w);
    UnionFind uf(x + y + w);
    unite_labels(uf, r, 0);
    unite_labels(uf, s, x);
    std::vector<char> outer(x + y + w, 0);
    for (int i = 0; i < x; ++i) outer[uf.find(i)] = 1;
    for (int i = x + y; i < x + y + w; ++i) outer[uf.find(i)] = 1;
    std::vector<char> seen(x + y + w, 0);
    int middle = 0;
    for (int i = x; i < x + y; ++i) {
      int root = uf.find(i);
      if (!outer[root] && !seen[root]) {
        seen[root] = 1;
        ++middle;
      }
    }
    std::vector<int> l;
    for (int i = 0; i < x; ++i) l.push_back(uf.find(i));
    for (int i = x + y; i < x + y + w; ++i) l.push_back(uf.find(i));
    return {canonical(l), tpow(middle)};
  }
  RelCode rel_swap(ObjId x, ObjId y, const RelCode& r) override {
    check_rel(r, x + y);
    std::vector<int> l(r.begin() + x, r.end());
    l.insert(l.end(), r.begin(), r.begin() + x);
    return canonical(l);
  }
  RelCode rel_tensor(ObjId x1, ObjId y1, ObjId x2, ObjId y2, const RelCode& r1, const RelCode& r2) override {
    check_rel(r1, x1 + y1);
    check_rel(r2, x2 + y2);
    int off = block_count(r1);
    std::vector<int> l;
    for (int i = 0; i < x1; ++i) l.push_back(r1[i]);
    for (int i = 0; i < x2; ++i) l.push_back(r2[i] + off);
    for (int i = 0; i < y1; ++i) l.push_back(r1[x1 + i]);
    for (int i = 0; i < y2; ++i) l.push_back(r2[x2 + i] + off);
    return canonical(l);
  }
  MPoly rel_trace(ObjId x, const RelCode& r) override {
    check_rel(r, 2 * x);
    UnionFind uf(2 * x);
    unite_labels(uf, r, 0);
    for (int i = 0; i < x; ++i) uf.unite(i, x + i);
    return tpow(block_count(labels_of(uf, 0, 2 * x)));
  }

  std::vector<RelCode> direct_relations(ObjId x, ObjId y) override {
    if (x + y > kMaxDirectPoints) throw ScaleLimit("direct enumeration limited to 10 points");
    return all_partitions(x + y);
  }
  std::vector<GoursatTriple> goursat_triples(ObjId x, ObjId y) override {
    std::vector<GoursatTriple> out;
    auto px = all_partitions(x), py = all_partitions(y);
    for (const auto& a : px) {
      int ba = block_count(a);
      for (int ca = 0; ca < (1 << ba); ++ca) {
        int k = __builtin_popcount(static_cast<unsigned>(ca));
        for (const auto& b : py) {
          int bb = block_count(b);
          for (int cb = 0; cb < (1 << bb); ++cb) {
            if (__builtin_popcount(static_cast<unsigned>(cb)) != k) continue;
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            do {
              GoursatTriple t;
              t.x_side = a;
              t.x_side.push_back(ca);
              t.y_side = b;
              t.y_side.push_back(cb);
              t.iso = perm;
              out.push_back(std::move(t));
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
        }
      }
    }
    return out;
  }
  GoursatTriple triple_of(ObjId x, ObjId y, const RelCode& r) override {
    check_rel(r, x + y);
    RelCode a = canonical(std::vector<int>(r.begin(), r.begin() + x));
    RelCode b = canonical(std::vector<int>(r.begin() + x, r.end()));
    // r-block of each block of a and b
    std::map<int, int> ablock_to_r, bblock_to_r;
    for (int i = 0; i < x; ++i) ablock_to_r[a[i]] = r[i];
    for (int j = 0; j < y; ++j) bblock_to_r[b[j]] = r[x + j];
    std::set<int> rx, ry;
    for (auto& [blk, rb] : ablock_to_r) rx.insert(rb);
    for (auto& [blk, rb] : bblock_to_r) ry.insert(rb);
    int ca = 0, cb = 0;
    std::vector<int> a_common, b_common;
    for (auto& [blk, rb] : ablock_to_r)
      if (ry.count(rb)) {
        ca |= 1 << blk;
        a_common.push_back(rb);
      }
    for (auto& [blk, rb] : bblock_to_r)
      if (rx.count(rb)) {
        cb |= 1 << blk;
        b_common.push_back(rb);
      }
    GoursatTriple t;
    t.x_side = a;
    t.x_side.push_back(ca);
    t.y_side = b;
    t.y_side.push_back(cb);
    for (int rb : a_common)
      t.iso.push_back(static_cast<int>(std::find(b_common.begin(), b_common.end(), rb) - b_common.begin()));
    return t;
  }
  RelCode relation_of(ObjId x, ObjId y, const GoursatTriple& t) override {
    if (static_cast<int>(t.x_side.size()) != x + 1 || static_cast<int>(t.y_side.size()) != y + 1)
      throw std::invalid_argument("Goursat triple does not match the objects");
    int ba = block_count(RelCode(t.x_side.begin(), t.x_side.end() - 1));
    std::vector<int> ca, cb;
    for (int i = 0; i < 31; ++i) {
      if (t.x_side.back() >> i & 1) ca.push_back(i);
      if (t.y_side.back() >> i & 1) cb.push_back(i);
    }
    if (ca.size() != cb.size() || t.iso.size() != ca.size()) throw std::invalid_argument("Goursat triple sizes differ");
    std::vector<int> ymap(64, -1);
    for (int j = 0; j < 64; ++j) ymap[j] = ba + j;
    for (std::size_t k = 0; k < ca.size(); ++k) ymap[cb[t.iso[k]]] = ca[k];
    std::vector<int> l;
    for (int i = 0; i < x; ++i) l.push_back(t.x_side[i]);
    for (int j = 0; j < y; ++j) l.push_back(ymap[t.y_side[j]]);
    return canonical(l);
  }

  std::vector<RelCode> enumerate_T(const std::vector<ObjId>& xs) override {
    std::vector<int> factor;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (int k = 0; k < xs[i]; ++k) factor.push_back(static_cast<int>(i));
    int n = static_cast<int>(factor.size());
    if (n > 18) throw ScaleLimit("T enumeration limited to 18 points");
    std::vector<RelCode> out;
    Rgs cur(n);
    std::vector<std::vector<char>> has;  // block -> factor occupancy
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        for (const auto& occ : has)
          if (std::count(occ.begin(), occ.end(), 1) < 2) return;
        out.push_back(cur);
        return;
      }
      // blocks that can no longer reach two factors are pruned at the end
      for (std::size_t b = 0; b < has.size(); ++b) {
        if (has[b][factor[i]]) continue;
        has[b][factor[i]] = 1;
        cur[i] = static_cast<int>(b);
        rec(i + 1);
        has[b][factor[i]] = 0;
      }
      // a new block needs a later point from another factor
      bool later_other = false;
      for (int j = i + 1; j < n; ++j)
        if (factor[j] != factor[i]) later_other = true;
      if (!later_other) return;
      has.emplace_back(xs.size(), 0);
      has.back()[factor[i]] = 1;
      cur[i] = static_cast<int>(has.size()) - 1;
      rec(i + 1);
      has.pop_back();
    };
    rec(0);
    return out;
  }
  RelCode act_T(const std::vector<ObjId>& xs, const std::vector<int>& g, const RelCode& r) override {
    std::vector<int> l(r.size());
    int off = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& p = sym(xs[i]).perms[g[i]];
      for (int k = 0; k < xs[i]; ++k) l[off + p[k]] = r[off + k];
      off += xs[i];
    }
    return canonical(l);
  }

 private:
  struct Sym {
    FiniteGroup group;
    std::vector<std::vector<int>> perms;
    std::map<std::vector<int>, int> index;
  };

  static void check_size(ObjId x) {
    if (x < 0) throw std::invalid_argument("negative set size");
    if (x > kMaxSetSize) throw ScaleLimit("Set^op objects limited to 6 points");
  }
  static void check_rel(const RelCode& r, int n) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("relation does not match the objects");
  }

  RelCode rel_diagonal(ObjId x, int y, bool identity) {
    Rgs p;
    if (identity) {
      p.resize(x);
      std::iota(p.begin(), p.end(), 0);
    } else {
      p = partitions(x)[y];
    }
    std::vector<int> l(p);
    l.insert(l.end(), p.begin(), p.end());
    return canonical(l);
  }

  const std::vector<Rgs>& partitions(ObjId x) {
    check_size(x);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = parts_.find(x);
    if (it == parts_.end()) {
      auto ps = all_partitions(x);
      // coarsest first, discrete partition (x itself) last
      std::stable_sort(ps.begin(), ps.end(), [](const Rgs& a, const Rgs& b) { return block_count(a) < block_count(b); });
      it = parts_.emplace(x, std::move(ps)).first;
    }
    return it->second;
  }

  Sym& sym(ObjId x) {
    check_size(x);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = syms_.find(x);
    if (it == syms_.end()) {
      auto [g, perms] = groups::symmetric_with_perms(x);
      auto s = std::make_unique<Sym>(Sym{std::move(g), std::move(perms), {}});
      for (std::size_t i = 0; i < s->perms.size(); ++i) s->index[s->perms[i]] = static_cast<int>(i);
      it = syms_.emplace(x, std::move(s)).first;
    }
    return *it->second;
  }

  template <class F>
  const FiniteLattice& lazy(std::map<ObjId, std::unique_ptr<FiniteLattice>>& cache, ObjId x, F make) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache.find(x);
      if (it != cache.end()) return *it->second;
    }
    auto L = std::make_unique<FiniteLattice>(make());
    std::lock_guard<std::mutex> lock(mutex_);
    return *cache.emplace(x, std::move(L)).first->second;
  }

  std::mutex mutex_;
  std::map<ObjId, std::vector<Rgs>> parts_;
  std::map<ObjId, std::unique_ptr<Sym>> syms_;
  std::map<ObjId, std::unique_ptr<FiniteLattice>> subs_, quots_;
};

}  // namespace

std::unique_ptr<MalcevBackend> make_setop_backend() { return std::make_unique<SetOpBackend>(); }

}  // namespace tenv
