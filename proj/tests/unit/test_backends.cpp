#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "tenv/backends/backend.hpp"
#include "tenv/backends/fq_linalg.hpp"
#include "tenv/groupchar/automorphism.hpp"

using namespace tenv;

namespace {

MPoly P(const char* s) { return MPoly::parse(s); }

void check_goursat(MalcevBackend& b, ObjId x, ObjId y) {
  auto direct = b.direct_relations(x, y);
  auto triples = b.goursat_triples(x, y);
  CHECK(triples.size() == direct.size());
  std::set<RelCode> from_triples;
  for (const auto& t : triples) {
    RelCode r = b.relation_of(x, y, t);
    CHECK(b.triple_of(x, y, r) == t);
    from_triples.insert(r);
  }
  std::set<RelCode> d(direct.begin(), direct.end());
  CHECK(from_triples == d);
}

void check_omega_multiplicative(MalcevBackend& b, ObjId x) {
  const auto& Q = b.quot_lattice(x);
  for (int z = 0; z < Q.size(); ++z)
    for (int w = 0; w < Q.size(); ++w) {
      if (!Q.leq(z, w)) continue;
      ObjId zo = b.quotient_object(x, z);
      int w2 = b.quot_transfer(x, z, w);
      CHECK(b.omega(x, w) == b.omega(x, z) * b.omega(zo, w2));
    }
}

}  // namespace

TEST_SUITE("backends") {
  TEST_CASE("F_q linear algebra") {
    CHECK(fq::all_subspaces(3, 2).size() == 16);
    CHECK(fq::all_subspaces(2, 3).size() == 6);
    CHECK(fq::general_linear(2, 2).size() == 6);
    CHECK(fq::general_linear(3, 2).size() == 168);
    auto L = fq::subspace_lattice(3, 2);
    CHECK(L.mobius(L.bottom(), L.top()) == -8);
    CHECK(is_modular(L));
    auto a = fq::span(3, {{1, 0, 0}, {0, 1, 0}}, 2), b = fq::span(3, {{0, 1, 0}, {0, 0, 1}}, 2);
    CHECK(fq::intersect(a, b, 2).dim() == 1);
    CHECK(fq::sum(a, b, 2).dim() == 3);
  }

  TEST_CASE("group iso labels and automorphisms") {
    CHECK(iso_label(groups::cyclic(6)) == "C6");
    CHECK(iso_label(direct_product(groups::cyclic(2), groups::cyclic(2))) == "C2xC2");
    CHECK(iso_label(direct_product(groups::cyclic(2), groups::cyclic(6))) == "C2xC6");
    CHECK(iso_label(groups::symmetric(3)) == "S3");
    CHECK(iso_label(groups::dihedral(4)) == "D4");
    CHECK(iso_label(groups::quaternion()) == "Q8");
    CHECK(iso_label(groups::alternating(4)) == "A4");
    CHECK(iso_label(groups::dihedral(6)) == iso_label(direct_product(groups::symmetric(3), groups::cyclic(2))));
    CHECK(automorphism_group(groups::symmetric(3)).first.order() == 6);
    CHECK(automorphism_group(groups::dihedral(4)).first.order() == 8);
    CHECK(automorphism_group(direct_product(groups::cyclic(2), groups::cyclic(2))).first.order() == 6);
    CHECK(automorphism_group(groups::quaternion()).first.order() == 24);
    CHECK(canonical_table(groups::dihedral(3)) == canonical_table(groups::symmetric(3)));
  }

  TEST_CASE("omega and delta examples") {
    auto s = make_setop_backend();
    CHECK(s->omega_object(3) == P("t^3 - 3*t^2 + 2*t"));
    CHECK(s->omega_object(0) == MPoly(1));
    CHECK(s->delta_sub(3, s->sub_lattice(3).top()) == P("t^3"));
    auto v = make_vectfq_backend(2);
    CHECK(v->omega_object(1) == P("t - 1"));
    CHECK(v->omega_object(3) == P("(t-1)*(t-2)*(t-4)"));
    auto v3 = make_vectfq_backend(3);
    CHECK(v3->omega_object(2) == P("(t-1)*(t-3)"));
    auto g = make_group_backend();
    ObjId c2 = g->parse_object("C2"), s3 = g->parse_object("S3");
    CHECK(g->omega_object(c2) == P("t_C2 - 1"));
    CHECK(g->delta_sub(s3, g->sub_lattice(s3).top()) == P("t_C2*t_C3"));
    CHECK(g->label(s3) == "S3");
    CHECK(g->omega_object(g->parse_object("C5")) == P("t_C5 - 1"));
  }

  TEST_CASE("omega is multiplicative") {
    auto s = make_setop_backend();
    for (int n = 0; n <= 4; ++n) check_omega_multiplicative(*s, n);
    auto v = make_vectfq_backend(2);
    for (int n = 0; n <= 3; ++n) check_omega_multiplicative(*v, n);
    auto g = make_group_backend();
    for (const char* name : {"C2", "C4", "S3", "D4", "Q8", "C2xC2"}) check_omega_multiplicative(*g, g->parse_object(name));
  }

  TEST_CASE("quotient lattices are modular") {
    auto s = make_setop_backend();
    for (int n = 0; n <= 5; ++n) CHECK(is_modular(s->quot_lattice(n)));
    auto v = make_vectfq_backend(3);
    for (int n = 0; n <= 3; ++n) CHECK(is_modular(v->quot_lattice(n)));
    auto g = make_group_backend();
    for (const char* name : {"S3", "D4", "Q8", "A4", "S4", "C2xC2xC2", "D6"}) CHECK(is_modular(g->quot_lattice(g->parse_object(name))));
  }

  TEST_CASE("Goursat round trip against direct enumeration") {
    auto s = make_setop_backend();
    CHECK(s->direct_relations(2, 2).size() == 15);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) check_goursat(*s, a, b);
    auto v = make_vectfq_backend(2);
    CHECK(v->direct_relations(1, 1).size() == 5);
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) check_goursat(*v, a, b);
    auto v3 = make_vectfq_backend(3);
    check_goursat(*v3, 1, 1);
    check_goursat(*v3, 2, 1);
    auto g = make_group_backend();
    for (const char* a : {"1", "C2", "C3", "S3", "C2xC2"})
      for (const char* b : {"1", "C2", "S3"}) check_goursat(*g, g->parse_object(a), g->parse_object(b));
  }

  TEST_CASE("subquotients") {
    auto s = make_setop_backend();
    std::map<std::string, int> count;
    for (const auto& sq : s->subquotients(2)) count[sq.label]++;
    CHECK(count == std::map<std::string, int>{{"set0", 2}, {"set1", 3}, {"set2", 1}});
    auto g = make_group_backend();
    std::set<std::string> labels;
    for (const auto& sq : g->subquotients(g->parse_object("S3"))) labels.insert(sq.label);
    CHECK(labels == std::set<std::string>{"1", "C2", "C3", "S3"});
  }

  TEST_CASE("valuation") {
    auto s = make_setop_backend();
    CHECK(s->element_count(s->product(2, 3)) == s->element_count(2) * s->element_count(3));
    auto g = make_group_backend();
    ObjId a = g->parse_object("S3"), b = g->parse_object("C2");
    CHECK(g->element_count(g->product(a, b)) == g->element_count(a) * g->element_count(b));
    for (const auto& sq : g->subquotients(a)) {
      bool whole = g->label(sq.object) == g->label(a);
      CHECK((whole || g->element_count(sq.object) < g->element_count(a)));
    }
  }

  TEST_CASE("regularity spot checks") {
    // restricting an epi along a subobject and then pulling back preserves
    // the onto condition when the subobject already surjects
    auto v = make_vectfq_backend(2);
    const auto& S = v->sub_lattice(2);
    const auto& Q = v->quot_lattice(2);
    for (int z = 0; z < Q.size(); ++z)
      for (int y = 0; y < S.size(); ++y)
        for (int y2 = 0; y2 < S.size(); ++y2)
          if (S.leq(y, y2) && v->restrict_epi(2, z, y)) CHECK(v->restrict_epi(2, z, y2).has_value());
    auto s = make_setop_backend();
    CHECK(s->restrict_epi(3, 0b111, s->sub_lattice(3).top()).value() == MPoly(1));
    CHECK(!s->restrict_epi(3, 0b111, s->sub_lattice(3).bottom()).has_value());
  }

  TEST_CASE("relation calculus basics") {
    auto s = make_setop_backend();
    int n = 3;
    const auto& G = s->aut(n);
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b) {
        auto [r, d] = s->rel_compose(n, n, n, s->rel_graph(n, b), s->rel_graph(n, a));
        CHECK(r == s->rel_graph(n, G.mul(a, b)));
        CHECK(d == MPoly(1));
      }
    CHECK(s->rel_trace(3, s->rel_identity(3)) == P("t^3"));
    auto v = make_vectfq_backend(2);
    const auto& GL = v->aut(2);
    for (int a = 0; a < GL.order(); ++a) {
      auto [r, d] = v->rel_compose(2, 2, 2, v->rel_graph(2, a), v->rel_graph(2, GL.inv(a)));
      CHECK(r == v->rel_identity(2));
      CHECK(v->rel_swap(2, 2, v->rel_graph(2, a)) == v->rel_graph(2, GL.inv(a)));
    }
  }
}
