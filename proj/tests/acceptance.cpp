// One line per acceptance criterion: "AC<n> PASS|FAIL <summary> (<seconds>s)".
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "tenv/backends/fq_linalg.hpp"
#include "tenv/engine/engine.hpp"
#include "tenv/groupchar/automorphism.hpp"
#include "tenv/lattice/lattice.hpp"
#include "tenv/symfunc/symfunc.hpp"

using namespace tenv;

namespace {

MPoly P(const char* s) { return MPoly::parse(s); }

struct Outcome {
  bool pass = true;
  std::string detail;
  long checks = 0;
  std::string note;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

int row_of(const CharacterTable& t, const std::string& label) {
  for (int i = 0; i < t.size(); ++i)
    if (t.row_labels[i] == label) return i;
  throw std::logic_error("no character " + label);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SchurVector as_schur(MalcevBackend& b, const MultiplicityTable& t) {
  SchurVector v;
  for (const auto& e : t.entries) v.add(Partition::parse(b.aut_table(e.label.object).row_labels[e.label.chi]), e.multiplicity);
  return v;
}

std::vector<ObjId> groups_up_to_8(MalcevBackend& g) {
  std::vector<ObjId> xs;
  for (const char* n : {"1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2", "D4", "Q8"})
    xs.push_back(g.parse_object(n));
  return xs;
}

// ------------------------------------------------------------ criteria

Outcome ac1() {
  Outcome o;
  auto b = make_vectfq_backend(2);
  Engine e(*b);
  ObjId x = b->parse_object("F2^3");
  auto rows = e.dims(x);
  std::map<Rational, std::vector<MPoly>> want{
      {1, {P("1/168*(t-1)*(t-2)*(t-32)")}},
      {3, {P("3/168*(t-1)*(t-2)*(t-4)"), P("3/168*(t-1)*(t-2)*(t-4)")}},
      {6, {P("6/168*(t-1)*(t-4)*(t-16)")}},
      {7, {P("7/168*(t-1)*(t-2)*(t-8)")}},
      {8, {P("8/168*(t-2)*(t-4)*(t-8)")}}};
  o.expect(rows.size() == 6, "expected six simples");
  std::map<Rational, std::vector<MPoly>> got;
  for (const auto& r : rows) got[r.degree].push_back(r.polynomial);
  o.expect(got == want, "polynomials differ from the F2^3 table");
  for (std::size_t i = 1; i < rows.size(); ++i) o.expect(rows[i - 1].degree <= rows[i].degree, "rows not sorted by degree");
  return o;
}

Outcome ac2() {
  Outcome o;
  auto b = make_vectfq_backend(2);
  Engine e(*b);
  std::vector<fq::Mat> reps{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
                            {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}},
                            {{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}, {{0, 1, 0}, {1, 1, 0}, {0, 0, 1}}};
  std::vector<MPoly> want{P("t^3-14*t^2+49*t-44"), P("-(t-1)*(t-4)"), P("0"), P("-1"), P("-1"), P("-(t-2)")};
  auto mats = fq::automorphism_matrices(3, 2);
  std::set<int> classes;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    int g = static_cast<int>(std::find(mats.begin(), mats.end(), reps[i]) - mats.begin());
    classes.insert(b->aut(3).class_of(g));
    MPoly v = e.char_x0(3, g);
    o.expect(v == want[i], "class " + std::to_string(i) + ": got " + v.to_string());
  }
  o.expect(classes.size() == 6, "representatives are not six distinct classes");
  return o;
}

Outcome ac3() {
  Outcome o;
  auto b = make_group_backend();
  Engine e(*b);
  ObjId s3 = register_group(*b, groups::from_json(read_file(std::string(TENV_DATA_DIR) + "/s3.json")));
  const auto& t = b->aut_table(s3);
  int sign = -1, two = -1;
  for (int i = 1; i < t.size(); ++i) (t.degree(i) == 1 ? sign : two) = i;
  o.expect(t.size() == 3 && sign > 0 && two > 0, "Aut(S3) table shape");
  o.expect(e.simple_dim({s3, 0}) == P("1/6*(t_C2-1)*(t_C3-9)"), "trivial character");
  o.expect(e.simple_dim({s3, sign}) == P("1/6*(t_C2-1)*(t_C3-3)"), "sign character");
  o.expect(e.simple_dim({s3, two}) == P("1/3*(t_C2-1)*(t_C3-3)"), "two-dimensional character");
  for (int p : {2, 3, 5}) {
    ObjId x = b->parse_object("C" + std::to_string(p));
    MPoly want = (MPoly::variable("t_C" + std::to_string(p)) - MPoly(p)) / Rational(p - 1);
    o.expect(e.simple_dim({x, 0}) == want, "Z_" + std::to_string(p));
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  auto b = make_setop_backend();
  Engine e(*b);
  for (const auto& lam : partitions_up_to(5)) {
    MPoly a = charlier_dimension_sum(lam), d = deligne_dim(lam);
    MPoly s = e.simple_dim({lam.size(), row_of(b->aut_table(lam.size()), lam.to_string())});
    o.expect(a == d && d == s, lam.to_string());
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  auto b = make_setop_backend();
  Engine e(*b);
  long mismatches = 0, pairs = 0;
  std::string first;
  for (const auto& lam : partitions_up_to(3))
    for (const auto& mu : partitions_up_to(3)) {
      ++pairs;
      SchurVector lw = stable_kronecker_littlewood(lam, mu);
      SchurVector lim = stable_kronecker_limit(lam, mu, 8);
      auto d = e.tensor_decompose({lam.size(), row_of(b->aut_table(lam.size()), lam.to_string())},
                                  {mu.size(), row_of(b->aut_table(mu.size()), mu.to_string())});
      SchurVector td = as_schur(*b, d);
      o.expect(lw == td, "tensor_decompose differs from Littlewood at " + lam.to_string() + " " + mu.to_string());
      if (lw != lim) {
        ++mismatches;
        if (first.empty()) first = lam.to_string() + " * " + mu.to_string();
      }
    }
  o.expect(mismatches == 0, "limit at n = 8 differs on " + std::to_string(mismatches) + "/" + std::to_string(pairs) +
                                " pairs, first " + first);
  // at the stability bound n = |lambda| + |mu| + lambda_1 + mu_1 the three agree
  long bad = 0;
  for (const auto& lam : partitions_up_to(3))
    for (const auto& mu : partitions_up_to(3))
      bad += stable_kronecker_littlewood(lam, mu) != stable_kronecker_limit(lam, mu, 12);
  o.note = std::string("at n = 12 the limit matches Littlewood on all pairs: ") + (bad == 0 ? "yes" : "no");
  return o;
}

Outcome ac6() {
  Outcome o;
  auto s = make_setop_backend();
  auto v2 = make_vectfq_backend(2);
  auto v3 = make_vectfq_backend(3);
  auto g = make_group_backend();
  std::vector<std::pair<MalcevBackend*, std::vector<ObjId>>> cases{
      {s.get(), {0, 1, 2, 3, 4}}, {v2.get(), {0, 1, 2, 3}}, {v3.get(), {0, 1, 2}}};
  std::vector<ObjId> gs = groups_up_to_8(*g);
  for (const char* n : {"A4", "D6", "C3xC3", "S4"}) gs.push_back(g->parse_object(n));
  cases.push_back({g.get(), gs});
  for (auto& [b, xs] : cases) {
    Engine e(*b);
    for (ObjId x : xs) {
      const auto& A = b->aut(x);
      for (int c = 0; c < A.class_count(); ++c) {
        int h = A.class_rep(c);
        o.expect(e.char_x0(x, h) == e.char_x0_homological(x, h), b->label(x) + " class " + std::to_string(c));
      }
    }
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  auto s = make_setop_backend();
  auto v = make_vectfq_backend(2);
  auto g = make_group_backend();
  std::vector<std::pair<MalcevBackend*, std::vector<ObjId>>> cases{
      {s.get(), {0, 1, 2, 3, 4}}, {v.get(), {0, 1, 2}}, {g.get(), groups_up_to_8(*g)}};
  for (auto& [b, xs] : cases) {
    Engine e(*b);
    for (ObjId x : xs) {
      // grouped count from the subquotient data, independently of the engine
      Integer grouped = 0;
      std::map<std::string, std::pair<Integer, Integer>> by_class;
      for (const auto& sq : b->subquotients(x)) {
        auto& [n, a] = by_class[sq.label];
        n += 1;
        a = b->aut_order(sq.object);
      }
      for (const auto& [lab, na] : by_class) grouped += na.first * na.first * na.second;
      Integer goursat = static_cast<unsigned long>(b->goursat_triples(x, x).size());
      o.expect(goursat == grouped, b->label(x) + ": " + to_string(goursat) + " vs " + to_string(grouped));
      auto c = e.end_dim_check(x);
      o.expect(c.goursat == goursat && c.grouped == grouped, b->label(x) + " engine count");
    }
  }
  o.expect(Engine(*s).end_dim_check(2).grouped == 15, "Set^op 2-set");
  return o;
}

Outcome ac8() {
  Outcome o;
  auto s = make_setop_backend();
  auto v2 = make_vectfq_backend(2);
  auto v3 = make_vectfq_backend(3);
  auto g = make_group_backend();
  std::vector<ObjId> gs;
  for (const char* n : {"1", "C2", "C3", "C4", "C2xC2", "S3", "C5", "C6"}) gs.push_back(g->parse_object(n));
  std::vector<std::pair<MalcevBackend*, std::vector<ObjId>>> cases{
      {s.get(), {0, 1, 2, 3}}, {v2.get(), {0, 1, 2}}, {v3.get(), {0, 1, 2}}, {g.get(), gs}};
  for (auto& [b, xs] : cases) {
    Engine e(*b);
    for (ObjId x : xs) {
      std::string name = b->label(x);
      const auto& S = b->sub_lattice(x);
      auto ps = e.sod_idempotents(x);
      TMorphism sum{x, x, {}};
      for (int y = 0; y < S.size(); ++y) {
        sum += ps[y];
        for (int w = 0; w < S.size(); ++w) {
          o.expect(e.compose(e.p(x, y), e.p(x, w)) == e.compose(e.p(x, w), e.p(x, y)), name + ": p_y commute");
          auto pw = e.compose(ps[y], ps[w]);
          o.expect(y == w ? pw == ps[y] : pw.is_zero(), name + ": p* orthogonal idempotents");
        }
      }
      o.expect(sum == e.identity(x), name + ": p* complete");
      o.expect(e.trace(ps[S.top()]) == b->omega_object(x), name + ": trace p*_x = omega_x");
      const auto& Q = b->quot_lattice(x);
      for (int z = 0; z < Q.size(); ++z)
        o.expect(e.compose(e.q(x, z), e.q(x, z)) == b->delta_epi(x, z) * e.q(x, z), name + ": q_z^2");
      const auto& A = b->aut(x);
      for (int h = 0; h < A.order(); ++h)
        o.expect(e.char_x_star(x, h) == (h == A.identity() ? b->omega_object(x) : MPoly()), name + ": char of [x]*");
    }
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  std::vector<FiniteLattice> qs;
  auto s = make_setop_backend();
  for (int n = 0; n <= 5; ++n) qs.push_back(s->quot_lattice(n));
  for (int q : {2, 3}) {
    auto v = make_vectfq_backend(q);
    for (int n = 0; n <= (q == 2 ? 3 : 2); ++n) qs.push_back(v->quot_lattice(n));
  }
  qs.push_back(fq::subspace_lattice(4, 2));
  auto g = make_group_backend();
  for (const char* n : {"S3", "D4", "Q8", "A4", "S4", "C2xC2xC2", "D6", "C3xC3"}) qs.push_back(g->quot_lattice(g->parse_object(n)));
  for (const auto& L : qs) {
    std::string name = "lattice of size " + std::to_string(L.size());
    o.expect(is_modular(L), name + ": not modular");
    for (const auto& f : mu_vanishing_profile(L)) o.expect(f.all_equal(), name + ": four conditions disagree");
    if (L.size() <= 80) {
      int r = lattice_rank(L);
      auto h = order_complex_homology(L);
      Integer mu = L.mobius(L.bottom(), L.top());
      for (int d = 0; d < static_cast<int>(h.size()); ++d)
        o.expect(d == r ? h[d] == (r % 2 ? -mu : mu) : h[d] == 0, name + ": homology");
    }
  }
  for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 5}, {2, 7}}) {
    auto L = fq::subspace_lattice(n, q);
    Integer want = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) want *= q;
    if (n % 2) want = -want;
    o.expect(L.mobius(L.bottom(), L.top()) == want, "subspace Mobius n=" + std::to_string(n) + " q=" + std::to_string(q));
  }
  auto v = make_vectfq_backend(2);
  const auto& L = v->quot_lattice(3);
  const auto& G = v->aut(3);
  for (int h = 0; h < G.order(); ++h) {
    std::vector<int> perm(L.size());
    for (int z = 0; z < L.size(); ++z) perm[z] = v->act_quot(3, h, z);
    auto fixed = fixed_sublattice(L, perm);
    o.expect(euler_characteristic(fixed_chain_counts(L, perm)) == fixed.mobius(fixed.bottom(), fixed.top()), "Hopf on L_3(2)");
  }
  auto b4 = s->quot_lattice(4);
  const auto& A = s->aut(4);
  for (int h = 0; h < A.order(); ++h) {
    std::vector<int> perm(b4.size());
    for (int z = 0; z < b4.size(); ++z) perm[z] = s->act_quot(4, h, z);
    auto fixed = fixed_sublattice(b4, perm);
    o.expect(euler_characteristic(fixed_chain_counts(b4, perm)) == fixed.mobius(fixed.bottom(), fixed.top()), "Hopf on Pi_4");
  }
  return o;
}

void grothendieck_checks(Outcome& o, MalcevBackend& b, Engine& e, const std::vector<SimpleLabel>& labels) {
  for (const auto& l1 : labels)
    for (const auto& l2 : labels) {
      ObjId x1 = l1.object, x2 = l2.object, P = b.product(x1, x2);
      auto f1 = e.grothendieck_simple(l1), f2 = e.grothendieck_simple(l2);
      auto f = e.grothendieck_product(f1, f2);
      std::string name = e.label_name(l1) + " * " + e.label_name(l2);
      // top component against elementwise induction from Aut(x1) x Aut(x2)
      const auto& A1 = b.aut(x1);
      const auto& A2 = b.aut(x2);
      auto embed = b.aut_embed_product(x1, x2);
      std::vector<Cyclotomic> vals;
      for (int a1 = 0; a1 < A1.order(); ++a1)
        for (int a2 = 0; a2 < A2.order(); ++a2)
          vals.push_back(f1.components.at(x1)[A1.class_of(a1)] * f2.components.at(x2)[A2.class_of(a2)]);
      auto ind = induce_elementwise(b.aut(P), embed, vals);
      auto top = e.grothendieck_component(x1, f1.components.at(x1), x2, f2.components.at(x2), P);
      o.expect(ind.values == top, name + ": top component");
      // filtration: support below v(x1) + v(x2), equality only at x1 x x2
      Integer bound = b.element_count(x1) * b.element_count(x2);
      for (const auto& [x, v] : f.components) {
        o.expect(b.element_count(x) <= bound, name + ": valuation bound");
        if (b.element_count(x) == bound) o.expect(b.label(x) == b.label(P), name + ": top degree object");
      }
      o.expect(f == e.grothendieck_product(f2, f1), name + ": commutativity");
      o.expect(e.grothendieck_product(f1, e.grothendieck_unit()) == f1, name + ": unit");
    }
}

Outcome ac10() {
  Outcome o;
  auto s = make_setop_backend();
  Engine es(*s);
  std::vector<SimpleLabel> sl;
  for (int n = 0; n <= 2; ++n)
    for (int i = 0; i < s->aut_table(n).size(); ++i) sl.push_back({n, i});
  grothendieck_checks(o, *s, es, sl);
  for (const auto& a : sl)
    for (const auto& c : sl) {
      auto f = es.grothendieck_product(es.grothendieck_simple(a), es.grothendieck_simple(c));
      SchurVector sv;
      for (const auto& [l, m] : es.grothendieck_decompose(f)) sv.add(Partition::parse(s->aut_table(l.object).row_labels[l.chi]), m);
      auto pa = Partition::parse(s->aut_table(a.object).row_labels[a.chi]);
      auto pc = Partition::parse(s->aut_table(c.object).row_labels[c.chi]);
      o.expect(sv.degree_part(a.object + c.object) == schur_multiply(SchurVector::schur(pa), SchurVector::schur(pc)),
               "Set^op top degree is the LR product");
      for (const auto& d : sl) {
        if (a.object + c.object + d.object > 3) continue;
        auto fd = es.grothendieck_simple(d);
        o.expect(es.grothendieck_product(f, fd) ==
                     es.grothendieck_product(es.grothendieck_simple(a), es.grothendieck_product(es.grothendieck_simple(c), fd)),
                 "associativity");
      }
    }
  auto v = make_vectfq_backend(2);
  Engine ev(*v);
  std::vector<SimpleLabel> vl;
  for (int n = 0; n <= 1; ++n)
    for (int i = 0; i < v->aut_table(n).size(); ++i) vl.push_back({n, i});
  grothendieck_checks(o, *v, ev, vl);
  auto g = make_group_backend();
  Engine eg(*g);
  std::vector<SimpleLabel> gl;
  for (const char* n : {"1", "C2", "C3"}) {
    ObjId x = eg.canonical(g->parse_object(n));
    for (int i = 0; i < g->aut_table(x).size(); ++i) gl.push_back({x, i});
  }
  grothendieck_checks(o, *g, eg, gl);
  return o;
}

Outcome ac11() {
  Outcome o;
  auto s = make_setop_backend();
  auto v2 = make_vectfq_backend(2);
  auto v3 = make_vectfq_backend(3);
  std::vector<std::pair<MalcevBackend*, std::vector<ObjId>>> cases{
      {s.get(), {0, 1, 2, 3, 4, 5}}, {v2.get(), {0, 1, 2, 3}}, {v3.get(), {0, 1, 2}}};
  for (auto& [b, xs] : cases) {
    Engine e(*b);
    for (ObjId x : xs)
      for (int i = 0; i < b->aut_table(x).size(); ++i) {
        auto f = e.dim_factorization_check({x, i});
        o.expect(f.linear && f.omega_shaped, e.label_name({x, i}) + " = " + f.to_string());
      }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"F2^3 dimension table", ac1},
      {"F2^3 character column", ac2},
      {"S3 and Z_p group dimensions", ac3},
      {"Charlier sum = Deligne formula = Set^op simple dimension, |lambda| <= 5", ac4},
      {"Littlewood = stability limit at n = 8 = Set^op tensor decomposition, |lambda|, |mu| <= 3", ac5},
      {"two character formulas agree", ac6},
      {"end-dimension counting identity", ac7},
      {"idempotent suite", ac8},
      {"lattice suite", ac9},
      {"Grothendieck ring", ac10},
      {"dimension factorization", ac11}};
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "--only expects 1..%zu\n", all.size());
    return 2;
  }
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (only && static_cast<int>(k) + 1 != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%zu %s %s [%ld checks, %.2fs]%s%s\n", k + 1, o.pass ? "PASS" : "FAIL", all[k].first.c_str(), o.checks, sec,
                o.pass ? "" : ": ", o.detail.c_str());
    if (!o.note.empty()) std::printf("     note: %s\n", o.note.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
