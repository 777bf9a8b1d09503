#include <algorithm>
#include <numeric>
#include <set>

#include "tenv/backends/backend.hpp"
#include "tenv/groupchar/automorphism.hpp"

namespace tenv {

namespace {

constexpr int kMaxObjectOrder = 24;
constexpr int kMaxEnumerationOrder = 600;

using Elems = std::vector<int>;

std::vector<Elems> all_subgroups(const FiniteGroup& g) {
  std::set<Elems> seen;
  std::vector<std::pair<Elems, Elems>> work;  // (elements, generators)
  std::vector<int> cyclic_gens;
  auto add = [&](Elems gens) {
    auto h = g.generated(gens);
    if (seen.insert(h).second) work.emplace_back(std::move(h), std::move(gens));
  };
  add({});
  std::set<Elems> cyclic;
  for (int a = 0; a < g.order(); ++a)
    if (cyclic.insert(g.generated({a})).second) cyclic_gens.push_back(a);
  for (int a : cyclic_gens) add({a});
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (int c : cyclic_gens) {
      const auto& h = work[i].first;
      if (std::binary_search(h.begin(), h.end(), c)) continue;
      Elems gens = work[i].second;
      gens.push_back(c);
      add(gens);
    }
  }
  std::vector<Elems> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Elems& a, const Elems& b) { return a.size() < b.size(); });
  return out;
}

bool normal_in(const FiniteGroup& g, const Elems& ambient, const Elems& n) {
  for (int a : ambient)
    for (int x : n)
      if (!std::binary_search(n.begin(), n.end(), g.conj(x, a))) return false;
  return true;
}

MPoly delta_of_order(long m) {
  MPoly d(1);
  for (int p : order_prime_factors(static_cast<int>(m))) d *= MPoly::variable("t_C" + std::to_string(p));
  return d;
}

Elems intersect(const Elems& a, const Elems& b) {
  Elems out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// subquotient G1/N1 of g with coset bookkeeping in global indices
struct SubQuot {
  Elems g1, n1;
  FiniteGroup q;
  std::vector<int> coset;      // global element -> coset, -1 outside g1
  std::vector<int> coset_min;  // coset -> least global element
};

SubQuot make_subquot(const FiniteGroup& g, const Elems& g1, const Elems& n1) {
  SubQuot s;
  s.g1 = g1;
  s.n1 = n1;
  FiniteGroup sub = g.subgroup(g1);
  Elems npos;
  for (int v : n1) npos.push_back(static_cast<int>(std::lower_bound(g1.begin(), g1.end(), v) - g1.begin()));
  std::vector<int> local;
  s.q = sub.quotient(npos, &local);
  s.coset.assign(g.order(), -1);
  s.coset_min.assign(s.q.order(), -1);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    s.coset[g1[i]] = local[i];
    if (s.coset_min[local[i]] < 0) s.coset_min[local[i]] = g1[i];
  }
  return s;
}

class GroupBackend final : public MalcevBackend {
 public:
  GroupBackend() { register_group(groups::cyclic(1)); }

  std::string name() const override { return "group"; }
  std::vector<std::string> variables() const override {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::string> v;
    for (int p : primes_) v.push_back("t_C" + std::to_string(p));
    return v;
  }

  ObjId register_group(const FiniteGroup& g) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(g.table());
    if (it != index_.end()) return it->second;
    if (!is_solvable(g)) throw std::invalid_argument("group backend requires solvable groups");
    for (int p : order_prime_factors(g.order())) primes_.insert(p);
    auto e = std::make_unique<Entry>();
    e->g = g;
    ObjId id = static_cast<ObjId>(entries_.size());
    entries_.push_back(std::move(e));
    index_[g.table()] = id;
    return id;
  }

  ObjId terminal() override { return 0; }
  ObjId product(ObjId a, ObjId b) override {
    const auto& ga = grp(a);
    const auto& gb = grp(b);
    if (static_cast<long>(ga.order()) * gb.order() > FiniteGroup::kMaxOrder) throw ScaleLimit("product group too large");
    return register_group(direct_product(ga, gb));
  }
  ObjId parse_object(const std::string& text) override {
    auto num = [&](std::size_t from) {
      std::size_t pos = 0;
      int n = std::stoi(text.substr(from), &pos);
      if (from + pos != text.size() || n < 1) throw std::invalid_argument("bad group '" + text + "'");
      return n;
    };
    auto xpos = text.find('x');
    if (xpos != std::string::npos)
      return product(parse_object(text.substr(0, xpos)), parse_object(text.substr(xpos + 1)));
    try {
      if (text == "1") return terminal();
      if (text == "Q8") return register_group(groups::quaternion());
      if (text == "A4") return register_group(groups::alternating(4));
      if (!text.empty() && (text[0] == 'C' || text[0] == 'Z')) return register_group(groups::cyclic(num(1)));
      if (!text.empty() && text[0] == 'S') return register_group(groups::symmetric(num(1)));
      if (!text.empty() && text[0] == 'D') return register_group(groups::dihedral(num(1)));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad group '" + text + "'");
    }
    throw std::invalid_argument("unknown group '" + text + "'");
  }
  std::string describe(ObjId x) override { return "group " + label(x) + " of order " + std::to_string(grp(x).order()); }
  std::string label(ObjId x) override {
    auto& e = entry(x);
    std::lock_guard<std::mutex> lock(mutex_);
    if (e.label.empty()) e.label = iso_label(e.g);
    return e.label;
  }
  Integer element_count(ObjId x) override { return grp(x).order(); }

  const FiniteLattice& sub_lattice(ObjId x) override { return lattices(x).sub; }
  MPoly delta_sub(ObjId x, int y) override { return delta_of_order(static_cast<long>(lattices(x).subs[y].size())); }
  ObjId sub_object(ObjId x, int y) override { return register_group(grp(x).subgroup(lattices(x).subs[y])); }

  const FiniteLattice& quot_lattice(ObjId x) override { return lattices(x).quot; }
  ObjId quotient_object(ObjId x, int z) override { return quotient_data(x, z).object; }
  MPoly delta_epi(ObjId x, int z) override { return delta_of_order(static_cast<long>(lattices(x).normals[z].size())); }
  std::optional<MPoly> restrict_epi(ObjId x, int z, int y) override {
    const auto& L = lattices(x);
    const auto& n = L.normals[z];
    const auto& h = L.subs[y];
    auto hn = intersect(h, n);
    if (h.size() * n.size() != hn.size() * static_cast<std::size_t>(grp(x).order())) return std::nullopt;
    return delta_of_order(static_cast<long>(hn.size()));
  }
  int quot_transfer(ObjId x, int z, int w) override {
    const auto& qd = quotient_data(x, z);
    const auto& m = lattices(x).normals[w];
    const auto& n = lattices(x).normals[z];
    if (!std::includes(m.begin(), m.end(), n.begin(), n.end())) throw std::invalid_argument("quotient is not below");
    Elems img;
    for (int v : m) img.push_back(qd.coset_of[v]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return normal_index(qd.object, img);
  }

  const FiniteGroup& aut(ObjId x) override { return auts(x).group; }
  int act_quot(ObjId x, int g, int z) override {
    const auto& a = auts(x).perms[g];
    Elems img;
    for (int v : lattices(x).normals[z]) img.push_back(a[v]);
    std::sort(img.begin(), img.end());
    return normal_index(x, img);
  }
  bool trivial_on_quotient(ObjId x, int g, int z) override {
    const auto& a = auts(x).perms[g];
    const auto& n = lattices(x).normals[z];
    const auto& G = grp(x);
    if (act_quot(x, g, z) != z) return false;
    for (int v = 0; v < G.order(); ++v)
      if (!std::binary_search(n.begin(), n.end(), G.mul(a[v], G.inv(v)))) return false;
    return true;
  }
  std::vector<int> aut_embed_product(ObjId a, ObjId b) override {
    ObjId p = product(a, b);
    auto& aa = auts(a);
    auto& ab = auts(b);
    auto& ap = auts(p);
    int nb = grp(b).order();
    std::vector<int> out;
    for (const auto& pa : aa.perms)
      for (const auto& pb : ab.perms) {
        std::vector<int> m(static_cast<std::size_t>(grp(p).order()));
        for (int i = 0; i < grp(a).order(); ++i)
          for (int j = 0; j < nb; ++j) m[i * nb + j] = pa[i] * nb + pb[j];
        out.push_back(ap.index.at(m));
      }
    return out;
  }

  RelCode rel_identity(ObjId x) override { return rel_diagonal(x, lattices(x).sub.top()); }
  RelCode rel_diagonal(ObjId x, int y) override {
    int n = grp(x).order();
    RelCode r;
    for (int h : lattices(x).subs[y]) r.push_back(h * n + h);
    std::sort(r.begin(), r.end());
    return r;
  }
  RelCode rel_kernel_pair(ObjId x, int z) override {
    const auto& G = grp(x);
    const auto& nrm = lattices(x).normals[z];
    RelCode r;
    for (int a = 0; a < G.order(); ++a)
      for (int k : nrm) r.push_back(a * G.order() + G.mul(a, k));
    std::sort(r.begin(), r.end());
    return r;
  }
  RelCode rel_graph(ObjId x, int g) override {
    const auto& a = auts(x).perms[g];
    int n = grp(x).order();
    RelCode r;
    for (int v = 0; v < n; ++v) r.push_back(v * n + a[v]);
    std::sort(r.begin(), r.end());
    return r;
  }
  RelCode rel_epi_graph(ObjId x, int z) override {
    const auto& qd = quotient_data(x, z);
    int m = grp(qd.object).order();
    RelCode r;
    for (int v = 0; v < grp(x).order(); ++v) r.push_back(v * m + qd.coset_of[v]);
    return r;
  }
  std::pair<RelCode, MPoly> rel_compose(ObjId x, ObjId y, ObjId w, const RelCode& r, const RelCode& s) override {
    int ny = grp(y).order(), nw = grp(w).order();
    int ex = grp(x).identity(), ew = grp(w).identity();
    std::vector<std::vector<int>> by_first(ny);
    for (int code : s) by_first[code / nw].push_back(code % nw);
    std::set<int> out;
    for (int code : r)
      for (int c : by_first[code % ny]) out.insert(code / ny * nw + c);
    long kernel = 0;
    for (int b = 0; b < ny; ++b)
      if (std::binary_search(r.begin(), r.end(), ex * ny + b) && std::binary_search(s.begin(), s.end(), b * nw + ew))
        ++kernel;
    return {RelCode(out.begin(), out.end()), delta_of_order(kernel)};
  }
  RelCode rel_swap(ObjId x, ObjId y, const RelCode& r) override {
    int nx = grp(x).order(), ny = grp(y).order();
    RelCode out;
    for (int code : r) out.push_back(code % ny * nx + code / ny);
    std::sort(out.begin(), out.end());
    return out;
  }
  RelCode rel_tensor(ObjId x1, ObjId y1, ObjId x2, ObjId y2, const RelCode& r1, const RelCode& r2) override {
    int nx2 = grp(x2).order(), ny1 = grp(y1).order(), ny2 = grp(y2).order();
    RelCode out;
    for (int c1 : r1)
      for (int c2 : r2) {
        int p = c1 / ny1 * nx2 + c2 / ny2;
        int q = c1 % ny1 * ny2 + c2 % ny2;
        out.push_back(p * ny1 * ny2 + q);
      }
    std::sort(out.begin(), out.end());
    return out;
  }
  MPoly rel_trace(ObjId x, const RelCode& r) override {
    int n = grp(x).order();
    long fixed = 0;
    for (int code : r)
      if (code / n == code % n) ++fixed;
    return delta_of_order(fixed);
  }

  std::vector<RelCode> direct_relations(ObjId x, ObjId y) override {
    ObjId p = product(x, y);
    if (grp(p).order() > kMaxEnumerationOrder) throw ScaleLimit("subgroup enumeration limited to order 600");
    return all_subgroups(grp(p));
  }
  std::vector<GoursatTriple> goursat_triples(ObjId x, ObjId y) override {
    auto sx = subquots(x), sy = subquots(y);
    std::vector<GoursatTriple> out;
    for (const auto& a : sx)
      for (const auto& b : sy) {
        if (a.q.order() != b.q.order()) continue;
        for (const auto& phi : isomorphisms(a.q, b.q)) {
          GoursatTriple t;
          t.x_side = side_code(a);
          t.y_side = side_code(b);
          for (int c = 0; c < a.q.order(); ++c) t.iso.push_back(b.coset_min[phi[c]]);
          out.push_back(std::move(t));
        }
      }
    return out;
  }
  GoursatTriple triple_of(ObjId x, ObjId y, const RelCode& r) override {
    const auto& G = grp(x);
    const auto& H = grp(y);
    int ny = H.order();
    std::set<int> g1, h1, n1, n2;
    for (int code : r) {
      int a = code / ny, b = code % ny;
      g1.insert(a);
      h1.insert(b);
      if (b == H.identity()) n1.insert(a);
      if (a == G.identity()) n2.insert(b);
    }
    SubQuot a = make_subquot(G, Elems(g1.begin(), g1.end()), Elems(n1.begin(), n1.end()));
    SubQuot b = make_subquot(H, Elems(h1.begin(), h1.end()), Elems(n2.begin(), n2.end()));
    GoursatTriple t;
    t.x_side = side_code(a);
    t.y_side = side_code(b);
    t.iso.assign(a.q.order(), -1);
    for (int code : r) {
      int c = a.coset[code / ny];
      if (t.iso[c] < 0) t.iso[c] = b.coset_min[b.coset[code % ny]];
    }
    return t;
  }
  RelCode relation_of(ObjId x, ObjId y, const GoursatTriple& t) override {
    const auto& G = grp(x);
    const auto& H = grp(y);
    SubQuot a = parse_side(G, t.x_side), b = parse_side(H, t.y_side);
    if (static_cast<int>(t.iso.size()) != a.q.order() || a.q.order() != b.q.order())
      throw std::invalid_argument("Goursat triple sizes differ");
    RelCode r;
    for (int g : a.g1)
      for (int h : b.g1)
        if (b.coset_min[b.coset[h]] == t.iso[a.coset[g]]) r.push_back(g * H.order() + h);
    return r;
  }

  std::vector<RelCode> enumerate_T(const std::vector<ObjId>& xs) override {
    if (xs.empty()) return {RelCode{0}};
    std::vector<ObjId> head(xs.begin(), xs.end() - 1);
    ObjId p = MalcevBackend::product(head);
    ObjId last = xs.back();
    const auto& P = grp(p);
    const auto& L = grp(last);
    if (P.order() > kMaxEnumerationOrder) throw ScaleLimit("T enumeration limited to order 600");
    std::vector<RelCode> out;
    for (const auto& s : all_subgroups(P)) {
      if (s.size() % static_cast<std::size_t>(L.order()) != 0) continue;
      FiniteGroup sub = P.subgroup(s);
      for (const auto& npos : all_subgroups(sub)) {
        if (npos.size() * static_cast<std::size_t>(L.order()) != s.size() || !sub.is_normal(npos)) continue;
        std::vector<int> coset;
        FiniteGroup q = sub.quotient(npos, &coset);
        for (const auto& phi : isomorphisms(q, L)) {
          RelCode r;
          for (std::size_t i = 0; i < s.size(); ++i) r.push_back(s[i] * L.order() + phi[coset[i]]);
          std::sort(r.begin(), r.end());
          if (satisfies_T(r, xs)) out.push_back(std::move(r));
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  RelCode act_T(const std::vector<ObjId>& xs, const std::vector<int>& g, const RelCode& r) override {
    std::vector<const std::vector<int>*> perms;
    for (std::size_t i = 0; i < xs.size(); ++i) perms.push_back(&auts(xs[i]).perms[g[i]]);
    RelCode out;
    for (int code : r) {
      int rest = code, mult = 1, img = 0;
      for (std::size_t i = xs.size(); i-- > 0;) {
        int n = grp(xs[i]).order();
        img += (*perms[i])[rest % n] * mult;
        rest /= n;
        mult *= n;
      }
      out.push_back(img);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Lats {
    std::vector<Elems> subs, normals;
    FiniteLattice sub, quot;
    std::map<Elems, int> normal_index;
  };
  struct Auts {
    FiniteGroup group;
    std::vector<std::vector<int>> perms;
    std::map<std::vector<int>, int> index;
  };
  struct QuotData {
    ObjId object;
    std::vector<int> coset_of;
  };
  struct Entry {
    FiniteGroup g;
    std::string label;
    std::unique_ptr<Lats> lats;
    std::unique_ptr<Auts> auts;
    std::map<int, QuotData> quots;
  };

  Entry& entry(ObjId x) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (x < 0 || x >= static_cast<int>(entries_.size())) throw std::invalid_argument("unknown group object");
    return *entries_[x];
  }
  const FiniteGroup& grp(ObjId x) { return entry(x).g; }

  Lats& lattices(ObjId x) {
    auto& e = entry(x);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (e.lats) return *e.lats;
    }
    if (e.g.order() > kMaxObjectOrder) throw ScaleLimit("group objects limited to order 24");
    auto L = std::make_unique<Lats>();
    L->subs = all_subgroups(e.g);
    Elems all(e.g.order());
    std::iota(all.begin(), all.end(), 0);
    for (const auto& h : L->subs)
      if (normal_in(e.g, all, h)) L->normals.push_back(h);
    for (std::size_t i = 0; i < L->normals.size(); ++i) L->normal_index[L->normals[i]] = static_cast<int>(i);
    auto incl = [](const std::vector<Elems>& v) {
      return [&v](int a, int b) { return std::includes(v[b].begin(), v[b].end(), v[a].begin(), v[a].end()); };
    };
    auto labels = [](const std::vector<Elems>& v) {
      std::vector<std::string> out;
      for (const auto& h : v) {
        std::string s = "{";
        for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
        out.push_back(s + "}");
      }
      return out;
    };
    L->sub = FiniteLattice(static_cast<int>(L->subs.size()), incl(L->subs), labels(L->subs));
    L->quot = FiniteLattice(static_cast<int>(L->normals.size()), incl(L->normals), labels(L->normals));
    std::lock_guard<std::mutex> lock(mutex_);
    if (!e.lats) e.lats = std::move(L);
    return *e.lats;
  }

  int normal_index(ObjId x, const Elems& n) {
    const auto& L = lattices(x);
    auto it = L.normal_index.find(n);
    if (it == L.normal_index.end()) throw std::logic_error("not a normal subgroup");
    return it->second;
  }

  const QuotData& quotient_data(ObjId x, int z) {
    auto& e = entry(x);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = e.quots.find(z);
      if (it != e.quots.end()) return it->second;
    }
    std::vector<int> coset;
    FiniteGroup q = e.g.quotient(lattices(x).normals[z], &coset);
    ObjId id = register_group(q);
    std::lock_guard<std::mutex> lock(mutex_);
    return e.quots.emplace(z, QuotData{id, coset}).first->second;
  }

  Auts& auts(ObjId x) {
    auto& e = entry(x);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (e.auts) return *e.auts;
    }
    auto a = std::make_unique<Auts>();
    try {
      auto [g, perms] = automorphism_group(e.g);
      a->group = std::move(g);
      a->perms = std::move(perms);
    } catch (const std::length_error& err) {
      throw ScaleLimit(std::string("automorphism group too large: ") + err.what());
    }
    for (std::size_t i = 0; i < a->perms.size(); ++i) a->index[a->perms[i]] = static_cast<int>(i);
    std::lock_guard<std::mutex> lock(mutex_);
    if (!e.auts) e.auts = std::move(a);
    return *e.auts;
  }

  std::vector<SubQuot> subquots(ObjId x) {
    const auto& G = grp(x);
    std::vector<SubQuot> out;
    for (const auto& g1 : lattices(x).subs) {
      FiniteGroup sub = G.subgroup(g1);
      for (const auto& npos : all_subgroups(sub)) {
        if (!sub.is_normal(npos)) continue;
        Elems n1;
        for (int i : npos) n1.push_back(g1[i]);
        out.push_back(make_subquot(G, g1, n1));
      }
    }
    return out;
  }

  static std::vector<int> side_code(const SubQuot& s) {
    std::vector<int> c{static_cast<int>(s.g1.size())};
    c.insert(c.end(), s.g1.begin(), s.g1.end());
    c.push_back(static_cast<int>(s.n1.size()));
    c.insert(c.end(), s.n1.begin(), s.n1.end());
    return c;
  }

  static SubQuot parse_side(const FiniteGroup& g, const std::vector<int>& c) {
    std::size_t a = c.at(0);
    Elems g1(c.begin() + 1, c.begin() + 1 + static_cast<long>(a));
    std::size_t b = c.at(1 + a);
    Elems n1(c.begin() + 2 + static_cast<long>(a), c.begin() + 2 + static_cast<long>(a + b));
    return make_subquot(g, g1, n1);
  }

  bool satisfies_T(const RelCode& r, const std::vector<ObjId>& xs) {
    std::size_t k = xs.size();
    std::vector<int> orders, ids;
    for (ObjId x : xs) {
      orders.push_back(grp(x).order());
      ids.push_back(grp(x).identity());
    }
    std::vector<std::set<int>> proj(k);
    for (int code : r) {
      std::vector<int> coord(k);
      int rest = code;
      for (std::size_t i = k; i-- > 0;) {
        coord[i] = rest % orders[i];
        rest /= orders[i];
      }
      int nontrivial = 0;
      for (std::size_t i = 0; i < k; ++i) {
        proj[i].insert(coord[i]);
        if (coord[i] != ids[i]) ++nontrivial;
      }
      if (nontrivial == 1) return false;  // r meets a single factor
    }
    for (std::size_t i = 0; i < k; ++i)
      if (static_cast<int>(proj[i].size()) != orders[i]) return false;
    return true;
  }

  mutable std::mutex mutex_;
  std::vector<std::unique_ptr<Entry>> entries_;
  std::map<std::vector<int>, ObjId> index_;
  std::set<int> primes_;
};

}  // namespace

std::unique_ptr<MalcevBackend> make_group_backend() { return std::make_unique<GroupBackend>(); }

ObjId register_group(MalcevBackend& backend, const FiniteGroup& g) {
  auto* gb = dynamic_cast<GroupBackend*>(&backend);
  if (!gb) throw std::invalid_argument("not a group backend");
  return gb->register_group(g);
}

}  // namespace tenv
