#include "tenv/engine/engine.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "tenv/core/linalg.hpp"

namespace tenv {

void TMorphism::add(const RelCode& r, const MPoly& c) {
  if (c.is_zero()) return;
  auto it = terms.find(r);
  if (it == terms.end()) {
    terms.emplace(r, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

TMorphism& TMorphism::operator+=(const TMorphism& o) {
  if (o.source != source || o.target != target) throw std::invalid_argument("adding morphisms with different ends");
  for (const auto& [r, c] : o.terms) add(r, c);
  return *this;
}

TMorphism operator*(const MPoly& c, TMorphism f) {
  TMorphism out{f.source, f.target, {}};
  for (auto& [r, v] : f.terms) out.add(r, c * v);
  return out;
}

// ------------------------------------------------------------ morphisms

TMorphism Engine::relation(ObjId x, ObjId y, const RelCode& r, const MPoly& c) const {
  TMorphism f{x, y, {}};
  f.add(r, c);
  return f;
}

TMorphism Engine::identity(ObjId x) { return relation(x, x, b_.rel_identity(x)); }
TMorphism Engine::graph(ObjId x, int g) { return relation(x, x, b_.rel_graph(x, g)); }
TMorphism Engine::p(ObjId x, int y) { return relation(x, x, b_.rel_diagonal(x, y)); }
TMorphism Engine::q(ObjId x, int z) { return relation(x, x, b_.rel_kernel_pair(x, z)); }
TMorphism Engine::epi(ObjId x, int z) { return relation(x, b_.quotient_object(x, z), b_.rel_epi_graph(x, z)); }

TMorphism Engine::compose(const TMorphism& f, const TMorphism& g) {
  if (g.target != f.source) throw std::invalid_argument("compose: target of the first map is not the source of the second");
  TMorphism out{g.source, f.target, {}};
  for (const auto& [s, c] : g.terms)
    for (const auto& [r, d] : f.terms) {
      auto [rs, delta] = b_.rel_compose(g.source, g.target, f.target, s, r);
      out.add(rs, c * d * delta);
    }
  return out;
}

TMorphism Engine::tensor(const TMorphism& f, const TMorphism& g) {
  TMorphism out{b_.product(f.source, g.source), b_.product(f.target, g.target), {}};
  for (const auto& [r, c] : f.terms)
    for (const auto& [s, d] : g.terms) out.add(b_.rel_tensor(f.source, f.target, g.source, g.target, r, s), c * d);
  return out;
}

TMorphism Engine::dual(const TMorphism& f) {
  TMorphism out{f.target, f.source, {}};
  for (const auto& [r, c] : f.terms) out.add(b_.rel_swap(f.source, f.target, r), c);
  return out;
}

MPoly Engine::trace(const TMorphism& f) {
  if (f.source != f.target) throw std::invalid_argument("trace of a non-endomorphism");
  MPoly t;
  for (const auto& [r, c] : f.terms) t += c * b_.rel_trace(f.source, r);
  return t;
}

std::vector<TMorphism> Engine::sod_idempotents(ObjId x) {
  const auto& S = b_.sub_lattice(x);
  std::vector<TMorphism> out;
  for (int y = 0; y < S.size(); ++y) {
    auto mu = S.mobius_to(y);
    TMorphism f{x, x, {}};
    for (int w = 0; w < S.size(); ++w)
      if (mu[w] != 0) f.add(b_.rel_diagonal(x, w), MPoly(Rational(mu[w])));
    out.push_back(std::move(f));
  }
  return out;
}

EndDimCheck Engine::end_dim_check(ObjId x) {
  EndDimCheck c;
  c.goursat = static_cast<long>(b_.goursat_triples(x, x).size());
  c.direct = static_cast<long>(b_.direct_relations(x, x).size());
  std::map<std::string, std::pair<long, ObjId>> groups;
  for (const auto& sq : b_.subquotients(x)) {
    auto& g = groups[sq.label];
    ++g.first;
    g.second = sq.object;
  }
  for (const auto& [lab, g] : groups) c.grouped += Integer(g.first * g.first) * b_.aut_order(g.second);
  return c;
}

// ------------------------------------------------------------ characters

std::vector<int> Engine::quot_perm(ObjId x, int g) {
  const auto& Q = b_.quot_lattice(x);
  std::vector<int> perm(Q.size());
  for (int z = 0; z < Q.size(); ++z) perm[z] = b_.act_quot(x, g, z);
  return perm;
}

MPoly Engine::char_x(ObjId x, int g) { return trace(graph(x, g)); }

MPoly Engine::char_x_star(ObjId x, int g) {
  const auto& S = b_.sub_lattice(x);
  return trace(compose(graph(x, g), sod_idempotents(x)[S.top()]));
}

MPoly Engine::char_x0(ObjId x, int g) {
  const auto& Q = b_.quot_lattice(x);
  auto fixed = Q.fixed_points(quot_perm(x, g));
  std::sort(fixed.begin(), fixed.end(), [&](int a, int c) {
    auto& o = Q.linear_order();
    return std::find(o.begin(), o.end(), a) < std::find(o.begin(), o.end(), c);
  });
  FiniteLattice Lg = Q.induced(fixed);
  int xg = Q.top();
  for (int z : fixed)
    if (b_.trivial_on_quotient(x, g, z)) xg = Q.meet(xg, z);
  if (!b_.trivial_on_quotient(x, g, xg)) throw InvariantFailure("g is not trivial on the meet of its trivial quotients");
  int xhat = fixed[socle(Lg)];
  if (!Q.leq(xg, xhat)) return MPoly();
  auto mu = Lg.mobius_from(Lg.bottom());
  MPoly s;
  for (int i = 0; i < Lg.size(); ++i) {
    int z = fixed[i];
    if (mu[i] == 0 || !Q.leq(xg, z) || !Q.leq(z, xhat)) continue;
    s += b_.omega_object(b_.quotient_object(x, z)) * Rational(mu[i]);
  }
  return s;
}

Integer Engine::hopf_trace(ObjId x, int z, int k) {
  auto key = std::make_tuple(x, z, k);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = hopf_cache_.find(key);
    if (it != hopf_cache_.end()) return it->second;
  }
  const auto& Q = b_.quot_lattice(x);
  auto iv = Q.interval(Q.bottom(), z);
  FiniteLattice I = Q.induced(iv);
  std::vector<int> pos(Q.size(), -1);
  for (std::size_t i = 0; i < iv.size(); ++i) pos[iv[i]] = static_cast<int>(i);
  std::vector<int> perm(iv.size());
  for (std::size_t i = 0; i < iv.size(); ++i) {
    perm[i] = pos[b_.act_quot(x, k, iv[i])];
    if (perm[i] < 0) throw InvariantFailure("inertia element does not preserve the interval");
  }
  int r = lattice_rank(I);
  Integer h = euler_characteristic(fixed_chain_counts(I, perm));
  if (r % 2) h = -h;
  std::lock_guard<std::mutex> lock(mutex_);
  hopf_cache_.emplace(key, h);
  return h;
}

MPoly Engine::char_x0_homological(ObjId x, int g) {
  const auto& Q = b_.quot_lattice(x);
  const auto& A = b_.aut(x);
  int xhat = socle(Q);
  MPoly total;
  for (int z = 0; z < Q.size(); ++z) {
    if (!Q.leq(z, xhat)) continue;
    int r = lattice_rank(Q.induced(Q.interval(Q.bottom(), z)));
    // (1/[A : A(x/z)]) ind h at g = (1/|A|) sum_{a : a g a^-1 in A(x/z)} h(a g a^-1)
    Integer s = 0;
    for (int a = 0; a < A.order(); ++a) {
      int k = A.conj(g, a);
      if (!b_.trivial_on_quotient(x, k, z)) continue;
      s += hopf_trace(x, z, k);
    }
    if (s == 0) continue;
    Rational c = Rational(s) / Rational(A.order());
    if (r % 2) c = -c;
    total += b_.omega_object(b_.quotient_object(x, z)) * c;
  }
  return total;
}

const std::vector<MPoly>& Engine::char_x0_classes(ObjId x) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = char_cache_.find(x);
    if (it != char_cache_.end()) return it->second;
  }
  const auto& A = b_.aut(x);
  std::vector<MPoly> v;
  for (int c = 0; c < A.class_count(); ++c) v.push_back(char_x0(x, A.class_rep(c)));
  std::lock_guard<std::mutex> lock(mutex_);
  return char_cache_.emplace(x, std::move(v)).first->second;
}

MPoly Engine::simple_dim(const SimpleLabel& label) {
  const auto& t = b_.aut_table(label.object);
  if (label.chi < 0 || label.chi >= t.size()) throw std::invalid_argument("character index out of range");
  ClassFunction<MPoly> f{t.classes, char_x0_classes(label.object)};
  return inner_product(f, t.character(label.chi));
}

MPoly Engine::dim_x0(ObjId x) {
  const auto& Q = b_.quot_lattice(x);
  auto mu = Q.mobius_from(Q.bottom());
  MPoly s;
  for (int z = 0; z < Q.size(); ++z)
    if (mu[z] != 0) s += b_.omega_object(b_.quotient_object(x, z)) * Rational(mu[z]);
  return s;
}

std::vector<DimensionRow> Engine::dims(ObjId x) {
  const auto& t = b_.aut_table(x);
  std::vector<DimensionRow> rows;
  for (int i = 0; i < t.size(); ++i) {
    DimensionRow r;
    r.label = {x, i};
    r.name = label_name(r.label);
    r.degree = t.degree(i);
    r.polynomial = simple_dim(r.label);
    r.factored = factor_linear(r.polynomial).to_string();
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& c) { return a.degree < c.degree; });
  return rows;
}

std::string Engine::label_name(const SimpleLabel& l) {
  return b_.label(l.object) + ":" + b_.aut_table(l.object).row_labels[l.chi];
}

ObjId Engine::canonical(ObjId x) {
  std::string l = b_.label(x);
  std::lock_guard<std::mutex> lock(mutex_);
  return canonical_.emplace(l, x).first->second;
}

// ------------------------------------------------------------ T-sets

std::vector<RelCode> Engine::enumerate_T(const std::vector<ObjId>& xs) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = t_cache_.find(xs);
    if (it != t_cache_.end()) return it->second;
  }
  auto t = b_.enumerate_T(xs);
  std::lock_guard<std::mutex> lock(mutex_);
  return t_cache_.emplace(xs, std::move(t)).first->second;
}

Integer Engine::chi_T(const std::vector<ObjId>& xs, const std::vector<int>& g) {
  if (g.size() != xs.size()) throw std::invalid_argument("chi_T needs one automorphism per factor");
  long n = 0;
  for (const auto& r : enumerate_T(xs))
    if (b_.act_T(xs, g, r) == r) ++n;
  return n;
}

const std::vector<Integer>& Engine::chi_T_classes(const std::vector<ObjId>& xs) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = chi_t_cache_.find(xs);
    if (it != chi_t_cache_.end()) return it->second;
  }
  auto T = enumerate_T(xs);
  std::vector<int> radix;
  std::size_t total = 1;
  for (ObjId x : xs) {
    radix.push_back(b_.aut(x).class_count());
    total *= radix.back();
  }
  std::vector<Integer> out(total);
  std::vector<int> g(xs.size());
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = static_cast<int>(xs.size()) - 1; i >= 0; --i) {
      g[i] = b_.aut(xs[i]).class_rep(static_cast<int>(rest % radix[i]));
      rest /= radix[i];
    }
    long n = 0;
    for (const auto& r : T)
      if (b_.act_T(xs, g, r) == r) ++n;
    out[idx] = n;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return chi_t_cache_.emplace(xs, std::move(out)).first->second;
}

namespace {

Integer to_integer(const Cyclotomic& c, const char* what) {
  if (!c.is_rational()) throw InvariantFailure(std::string(what) + " is not rational");
  Rational r = c.to_rational();
  if (r.get_den() != 1 || r < 0) throw InvariantFailure(std::string(what) + " is not a nonnegative integer: " + to_string(r));
  return r.get_num();
}

}  // namespace

Integer Engine::hom_unit_multiplicity(const std::vector<SimpleLabel>& labels) {
  std::vector<ObjId> xs;
  for (const auto& l : labels) xs.push_back(l.object);
  const auto& chi = chi_T_classes(xs);
  std::vector<const CharacterTable*> tabs;
  Integer order = 1;
  for (ObjId x : xs) {
    tabs.push_back(&b_.aut_table(x));
    order *= b_.aut_order(x);
  }
  Cyclotomic s = 0;
  for (std::size_t idx = 0; idx < chi.size(); ++idx) {
    if (chi[idx] == 0) continue;
    std::size_t rest = idx;
    Cyclotomic v = Rational(chi[idx]);
    for (int i = static_cast<int>(xs.size()) - 1; i >= 0; --i) {
      int c = static_cast<int>(rest % tabs[i]->classes->count());
      rest /= tabs[i]->classes->count();
      v *= tabs[i]->rows[labels[i].chi][c].conj();
      v *= Rational(tabs[i]->classes->sizes[c]);
    }
    s += v;
  }
  Integer m = to_integer(s / Rational(order), "multiplicity");
  if (order <= 2000 && m != hom_unit_multiplicity_orbits(labels))
    throw InvariantFailure("class-sum and orbit-sum multiplicities differ");
  return m;
}

Integer Engine::hom_unit_multiplicity_orbits(const std::vector<SimpleLabel>& labels) {
  std::vector<ObjId> xs;
  for (const auto& l : labels) xs.push_back(l.object);
  auto T = enumerate_T(xs);
  std::map<RelCode, int> index;
  for (std::size_t i = 0; i < T.size(); ++i) index[T[i]] = static_cast<int>(i);
  int n = static_cast<int>(xs.size());
  std::vector<int> ident(n);
  for (int i = 0; i < n; ++i) ident[i] = b_.aut(xs[i]).identity();
  std::vector<std::vector<int>> gens;
  for (int i = 0; i < n; ++i)
    for (int h : b_.aut(xs[i]).generators()) {
      auto g = ident;
      g[i] = h;
      gens.push_back(g);
    }
  std::vector<int> orbit(T.size(), -1);
  std::vector<int> reps;
  for (std::size_t s = 0; s < T.size(); ++s) {
    if (orbit[s] >= 0) continue;
    int o = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(s));
    std::vector<int> stack{static_cast<int>(s)};
    orbit[s] = o;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        int v = index.at(b_.act_T(xs, g, T[u]));
        if (orbit[v] < 0) {
          orbit[v] = o;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<const CharacterTable*> tabs;
  std::size_t total = 1;
  for (ObjId x : xs) {
    tabs.push_back(&b_.aut_table(x));
    total *= b_.aut(x).order();
  }
  // sum over orbits of <1 | res chi> on the stabilizer
  Cyclotomic m = 0;
  std::vector<int> g(n);
  for (int rep : reps) {
    Cyclotomic s = 0;
    long stab = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (int i = n - 1; i >= 0; --i) {
        g[i] = static_cast<int>(rest % b_.aut(xs[i]).order());
        rest /= b_.aut(xs[i]).order();
      }
      if (b_.act_T(xs, g, T[rep]) != T[rep]) continue;
      ++stab;
      Cyclotomic v = 1;
      for (int i = 0; i < n; ++i) v *= tabs[i]->rows[labels[i].chi][b_.aut(xs[i]).class_of(g[i])].conj();
      s += v;
    }
    m += s / Rational(stab);
  }
  return to_integer(m, "orbit multiplicity");
}

MultiplicityTable Engine::tensor_decompose(const SimpleLabel& a, const SimpleLabel& b) {
  ObjId x1 = a.object, x2 = b.object;
  ObjId P = b_.product(x1, x2);
  std::map<std::string, ObjId> classes;
  for (const auto& sq : b_.subquotients(P)) classes.emplace(sq.label, canonical(sq.object));
  std::vector<ObjId> objs;
  for (const auto& [l, o] : classes) objs.push_back(o);
  std::sort(objs.begin(), objs.end(), [&](ObjId u, ObjId v) {
    Integer cu = b_.element_count(u), cv = b_.element_count(v);
    if (cu != cv) return cu < cv;
    return b_.label(u) < b_.label(v);
  });
  const auto& t1 = b_.aut_table(x1);
  const auto& t2 = b_.aut_table(x2);
  MultiplicityTable out;
  for (ObjId x : objs) {
    const auto& t = b_.aut_table(x);
    const auto& chi = chi_T_classes({x1, x2, x});
    int k1 = t1.classes->count(), k2 = t2.classes->count(), k = t.classes->count();
    Rational order = Rational(b_.aut_order(x1) * b_.aut_order(x2) * b_.aut_order(x));
    for (int row = 0; row < t.size(); ++row) {
      Cyclotomic s = 0;
      for (int c1 = 0; c1 < k1; ++c1)
        for (int c2 = 0; c2 < k2; ++c2) {
          Cyclotomic w = t1.rows[a.chi][c1].conj() * t2.rows[b.chi][c2].conj();
          if (w.is_zero()) continue;
          w *= Rational(t1.classes->sizes[c1] * t2.classes->sizes[c2]);
          for (int c = 0; c < k; ++c) {
            const Integer& v = chi[(static_cast<std::size_t>(c1) * k2 + c2) * k + c];
            if (v == 0) continue;
            s += w * t.rows[row][c] * Rational(v * t.classes->sizes[c]);
          }
        }
      Integer m = to_integer(s / order, "tensor multiplicity");
      if (m == 0) continue;
      MultiplicityEntry e;
      e.label = {x, row};
      e.object_class = b_.label(x);
      e.character = t.row_labels[row];
      e.character_degree = t.degree(row);
      e.multiplicity = m;
      out.entries.push_back(e);
    }
  }
  for (const auto& e : out.entries) out.audit_lhs += simple_dim(e.label) * Rational(e.multiplicity);
  out.audit_rhs = simple_dim(a) * simple_dim(b);
  return out;
}

// ------------------------------------------------------------ Grothendieck ring

bool GrothendieckElement::is_zero() const {
  for (const auto& [x, f] : components)
    for (const auto& v : f)
      if (!v.is_zero()) return false;
  return true;
}

bool operator==(const GrothendieckElement& a, const GrothendieckElement& b) {
  auto strip = [](const GrothendieckElement& e) {
    std::map<ObjId, std::vector<Cyclotomic>> m;
    for (const auto& [x, f] : e.components)
      if (std::any_of(f.begin(), f.end(), [](const Cyclotomic& v) { return !v.is_zero(); })) m.emplace(x, f);
    return m;
  };
  return strip(a) == strip(b);
}

GrothendieckElement Engine::grothendieck_unit() { return grothendieck_simple({canonical(b_.terminal()), 0}); }

GrothendieckElement Engine::grothendieck_simple(const SimpleLabel& label) {
  if (canonical(label.object) != label.object) throw std::invalid_argument("label object is not the class representative");
  const auto& t = b_.aut_table(label.object);
  GrothendieckElement e;
  e.components[label.object] = t.rows[label.chi];
  return e;
}

std::vector<Cyclotomic> Engine::grothendieck_component(ObjId x1, const std::vector<Cyclotomic>& f1, ObjId x2,
                                                        const std::vector<Cyclotomic>& f2, ObjId x) {
  const auto& chi = chi_T_classes({x1, x2, x});
  const auto& c1s = *b_.aut(x1).class_data();
  const auto& c2s = *b_.aut(x2).class_data();
  int k2 = c2s.count(), k = b_.aut(x).class_count();
  std::vector<Cyclotomic> out(k);
  Rational scale = Rational(1) / Rational(b_.aut_order(x1) * b_.aut_order(x2));
  for (int c1 = 0; c1 < c1s.count(); ++c1)
    for (int c2 = 0; c2 < k2; ++c2) {
      Cyclotomic w = f1[c1] * f2[c2];
      if (w.is_zero()) continue;
      w *= Rational(c1s.sizes[c1] * c2s.sizes[c2]) * scale;
      for (int c = 0; c < k; ++c) {
        const Integer& v = chi[(static_cast<std::size_t>(c1) * k2 + c2) * k + c];
        if (v != 0) out[c] += w * Rational(v);
      }
    }
  return out;
}

GrothendieckElement Engine::grothendieck_product(const GrothendieckElement& f, const GrothendieckElement& g) {
  GrothendieckElement out;
  for (const auto& [x1, f1] : f.components)
    for (const auto& [x2, f2] : g.components) {
      ObjId P = b_.product(x1, x2);
      Integer bound = b_.element_count(x1) * b_.element_count(x2);
      std::map<std::string, ObjId> classes;
      for (const auto& sq : b_.subquotients(P)) classes.emplace(sq.label, canonical(sq.object));
      for (const auto& [lab, x] : classes) {
        auto comp = grothendieck_component(x1, f1, x2, f2, x);
        bool nonzero = std::any_of(comp.begin(), comp.end(), [](const Cyclotomic& v) { return !v.is_zero(); });
        if (nonzero && b_.element_count(x) > bound) throw InvariantFailure("component above the valuation bound");
        auto& acc = out.components[x];
        if (acc.empty()) acc.assign(comp.size(), Cyclotomic(0));
        for (std::size_t i = 0; i < comp.size(); ++i) acc[i] += comp[i];
      }
      // the x1 x x2 component is the induced class function
      const auto& A1 = b_.aut(x1);
      const auto& A2 = b_.aut(x2);
      FiniteGroup H = direct_product(A1, A2);
      std::vector<Cyclotomic> hv(H.class_count());
      for (int c = 0; c < H.class_count(); ++c) {
        int e = H.class_rep(c);
        hv[c] = f1[A1.class_of(e / A2.order())] * f2[A2.class_of(e % A2.order())];
      }
      auto ind = induce(H, {H.class_data(), hv}, b_.aut(P), b_.aut_embed_product(x1, x2));
      if (ind.values != grothendieck_component(x1, f1, x2, f2, P))
        throw InvariantFailure("top component differs from the induced product");
    }
  for (auto it = out.components.begin(); it != out.components.end();) {
    if (std::all_of(it->second.begin(), it->second.end(), [](const Cyclotomic& v) { return v.is_zero(); }))
      it = out.components.erase(it);
    else
      ++it;
  }
  return out;
}

std::map<SimpleLabel, Integer> Engine::grothendieck_decompose(const GrothendieckElement& f) {
  std::map<SimpleLabel, Integer> out;
  for (const auto& [x, v] : f.components) {
    const auto& t = b_.aut_table(x);
    ClassFunction<Cyclotomic> cf{t.classes, v};
    for (int r = 0; r < t.size(); ++r) {
      Cyclotomic m = inner_product(cf, t.character(r));
      if (!m.is_rational() || m.to_rational().get_den() != 1) throw InvariantFailure("non-integral Grothendieck coordinate");
      if (!m.is_zero()) out[{x, r}] = m.to_rational().get_num();
    }
  }
  return out;
}

std::vector<ObjId> Engine::ordered_support(const GrothendieckElement& f) {
  std::vector<ObjId> xs;
  for (const auto& [x, v] : f.components) xs.push_back(x);
  std::sort(xs.begin(), xs.end(), [&](ObjId u, ObjId v) {
    Integer cu = b_.element_count(u), cv = b_.element_count(v);
    if (cu != cv) return cu < cv;
    return b_.label(u) < b_.label(v);
  });
  return xs;
}

// ------------------------------------------------------------ reports

FactorizationReport Engine::dim_factorization_check(const SimpleLabel& label) {
  FactorizationReport r;
  r.polynomial = simple_dim(label);
  r.factors = factor_linear(r.polynomial);
  r.linear = r.factors.complete();
  r.omega_shaped = r.linear;
  if (b_.name() == "setop") {
    for (const auto& [v, root] : r.factors.factors) r.omega_shaped = r.omega_shaped && root >= 0;
  } else if (b_.name() == "vectfq") {
    Integer q = b_.element_count(b_.parse_object("1"));
    for (const auto& [v, root] : r.factors.factors) {
      Integer x = root;
      while (x > 1 && x % q == 0) x /= q;
      r.omega_shaped = r.omega_shaped && x == 1;
    }
  }
  return r;
}

RankReport Engine::lem_surj_rank_check(ObjId x, int z) {
  const auto& Q = b_.quot_lattice(x);
  if (z < 0 || z >= Q.size()) throw std::invalid_argument("not an epimorphism of the object");
  ObjId zo = b_.quotient_object(x, z);
  RelCode dual_e = b_.rel_swap(x, zo, b_.rel_epi_graph(x, z));
  auto cols = b_.direct_relations(zo, zo);
  auto rows = b_.direct_relations(zo, x);
  std::map<RelCode, int> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  RankReport rep;
  std::mt19937 rng(0x5eed);
  for (const auto& v : b_.variables()) rep.point[v] = Rational(static_cast<long>(7 + rng() % 90), static_cast<long>(1 + rng() % 5));
  RationalMatrix m(rows.size(), std::vector<Rational>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto [c, d] = b_.rel_compose(zo, zo, x, cols[j], dual_e);
    Rational val = d.evaluate(rep.point).constant_term();
    if (val == 0) throw InvariantFailure("degenerate specialization in rank check");
    m[row_of.at(c)][j] += val;
  }
  rep.rows = rows.size();
  rep.columns = cols.size();
  rep.rank = matrix_rank(std::move(m));
  return rep;
}

std::vector<NondegeneracyEntry> Engine::nondegeneracy_report(const std::vector<ObjId>& objects,
                                                             const std::map<std::string, Rational>* point) {
  std::vector<NondegeneracyEntry> out;
  for (ObjId x : objects) {
    const auto& Q = b_.quot_lattice(x);
    for (int z : Q.upper_covers(Q.bottom())) {
      NondegeneracyEntry e{x, z, b_.describe(x) + " ->> " + b_.describe(b_.quotient_object(x, z)), b_.omega(x, z), {}, false};
      if (point) {
        MPoly v = e.omega.evaluate(*point);
        if (!v.is_constant()) throw std::invalid_argument("specialization does not fix every variable");
        e.value = v.constant_term();
        e.vanishes = *e.value == 0;
      } else {
        e.vanishes = e.omega.is_zero();
      }
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace tenv
