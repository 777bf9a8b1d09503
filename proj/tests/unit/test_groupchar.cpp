#include <array>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "tenv/groupchar/character.hpp"

using namespace tenv;

namespace {

using M3 = std::array<int, 9>;

M3 mat_mul2(const M3& a, const M3& b) {
  M3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      c[i * 3 + j] = s % 2;
    }
  return c;
}

FiniteGroup gl32() {
  M3 id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  M3 a{1, 1, 0, 0, 1, 0, 0, 0, 1};
  M3 b{0, 0, 1, 1, 0, 0, 0, 1, 0};
  return group_from_generators<M3>({a, b}, id, mat_mul2).first;
}

std::vector<Integer> degrees(const CharacterTable& t) {
  std::vector<Integer> d;
  for (int i = 0; i < t.size(); ++i) d.push_back(t.degree(i).get_num());
  return d;
}

}  // namespace

TEST_SUITE("groupchar") {
  TEST_CASE("group basics") {
    auto s3 = groups::symmetric(3);
    CHECK(s3.order() == 6);
    REQUIRE(s3.class_count() == 3);
    std::vector<Integer> sizes = s3.class_data()->sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<Integer>{1, 2, 3});
    CHECK(!s3.is_abelian());
    CHECK(groups::cyclic(12).exponent() == 12);
    CHECK(groups::quaternion().class_count() == 5);
    CHECK(groups::alternating(4).order() == 12);
    CHECK_THROWS(FiniteGroup({0, 0, 0, 0}, 2));  // not a group
  }

  TEST_CASE("group json round trip") {
    auto d4 = groups::dihedral(4);
    auto back = groups::from_json(groups::to_json(d4));
    CHECK(back == d4);
  }

  TEST_CASE("murnaghan-nakayama against hand values") {
    CHECK(murnaghan_nakayama({2, 1}, {1, 1, 1}) == 2);
    CHECK(murnaghan_nakayama({2, 1}, {2, 1}) == 0);
    CHECK(murnaghan_nakayama({2, 1}, {3}) == -1);
    CHECK(murnaghan_nakayama({3, 1}, {2, 2}) == -1);
    CHECK(murnaghan_nakayama({2, 2}, {2, 2}) == 2);
    CHECK(murnaghan_nakayama({1, 1, 1, 1}, {4}) == -1);
    // hook length formula for degrees
    CHECK(murnaghan_nakayama({3, 2}, {1, 1, 1, 1, 1}) == 5);
    CHECK(murnaghan_nakayama({4, 2, 1}, {1, 1, 1, 1, 1, 1, 1}) == 35);
  }

  TEST_CASE("S_n tables") {
    auto t3 = character_table_sn(3);
    CHECK(t3.classes->labels == std::vector<std::string>{"[1,1,1]", "[2,1]", "[3]"});
    CHECK(t3.row_labels[1] == "[2,1]");
    CHECK(t3.rows[1] == std::vector<Cyclotomic>{Cyclotomic(2), Cyclotomic(0), Cyclotomic(-1)});
    for (int n = 1; n <= 7; ++n) CHECK_NOTHROW(verify_character_table(character_table_sn(n)));
    CHECK_THROWS(character_table_sn(11));
  }

  TEST_CASE("generic tables agree with S_n tables") {
    for (int n = 1; n <= 5; ++n) {
      auto [g, perms] = groups::symmetric_with_perms(n);
      auto a = character_table_generic(g);
      auto b = character_table_sn_group(g, perms);
      auto ra = a.rows, rb = b.rows;
      auto key = [](const std::vector<Cyclotomic>& r) {
        std::string s;
        for (const auto& v : r) s += v.to_string() + ";";
        return s;
      };
      std::vector<std::string> ka, kb;
      for (auto& r : ra) ka.push_back(key(r));
      for (auto& r : rb) kb.push_back(key(r));
      std::sort(ka.begin(), ka.end());
      std::sort(kb.begin(), kb.end());
      CHECK(ka == kb);
    }
  }

  TEST_CASE("small generic tables") {
    auto t2 = character_table_generic(groups::cyclic(2));
    CHECK(t2.rows[0] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(1)});
    CHECK(t2.rows[1] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(-1)});
    auto t5 = character_table_generic(groups::cyclic(5));
    CHECK(t5.size() == 5);
    int nonreal = 0;
    for (int i = 0; i < t5.size(); ++i)
      if (t5.dual_row(i) != i) ++nonreal;
    CHECK(nonreal == 4);
    CHECK(degrees(character_table_generic(groups::quaternion())) == std::vector<Integer>{1, 1, 1, 1, 2});
    CHECK(degrees(character_table_generic(groups::alternating(4))) == std::vector<Integer>{1, 1, 1, 3});
  }

  TEST_CASE("GL(3,2)") {
    auto g = gl32();
    REQUIRE(g.order() == 168);
    auto t = character_table_generic(g);
    CHECK(t.size() == 6);
    CHECK(degrees(t) == std::vector<Integer>{1, 3, 3, 6, 7, 8});
    // the two degree 3 characters are complex conjugate with values b7
    CHECK(t.dual_row(1) == 2);
  }

  TEST_CASE("induction and Frobenius reciprocity") {
    auto [s3, perms] = groups::symmetric_with_perms(3);
    // subgroup S2 x S1 fixing the point 2
    std::vector<int> h;
    for (int i = 0; i < s3.order(); ++i)
      if (perms[i][2] == 2) h.push_back(i);
    auto ind = induce_elementwise(s3, h, std::vector<Cyclotomic>(h.size(), Cyclotomic(1)));
    auto t = character_table_sn_group(s3, perms);
    CHECK(decompose(t, ind) == std::vector<Integer>{1, 1, 0});

    auto perm = permutation_character(s3, 3, [&](int g, int p) { return perms[g][p]; });
    std::vector<Rational> vals;
    for (const auto& v : perm.values) vals.push_back(v.to_rational());
    // classes in S3 order: identity first; compare through cycle types
    for (int c = 0; c < s3.class_count(); ++c) {
      auto ct = cycle_type(perms[s3.class_rep(c)]);
      long fixed = std::count(ct.begin(), ct.end(), 1);
      CHECK(vals[c] == Rational(fixed));
    }
    CHECK(ind.values == perm.values);

    auto reg = regular_character(s3);
    CHECK(decompose(t, reg) == std::vector<Integer>{1, 2, 1});

    // reciprocity on A4 inside S4 with random class functions
    auto [s4, p4] = groups::symmetric_with_perms(4);
    auto t4 = character_table_sn_group(s4, p4);
    std::vector<int> a4;
    for (int i = 0; i < s4.order(); ++i) {
      auto ct = cycle_type(p4[i]);
      if ((4 - static_cast<int>(ct.size())) % 2 == 0) a4.push_back(i);
    }
    auto sub = s4.subgroup(a4);
    auto ta4 = character_table_generic(sub);
    for (int i = 0; i < ta4.size(); ++i) {
      auto up = induce(sub, ta4.character(i), s4, a4);
      for (int j = 0; j < t4.size(); ++j) {
        auto down = restrict_to(sub, s4, t4.character(j), a4);
        CHECK(inner_product(up, t4.character(j)) == inner_product(ta4.character(i), down));
      }
    }
  }

  TEST_CASE("polynomial inner product") {
    auto t = character_table_sn(3);
    ClassFunction<MPoly> f{t.classes, {MPoly::parse("t"), MPoly::parse("t"), MPoly::parse("t")}};
    CHECK(inner_product(f, t.character(0)) == MPoly::parse("t"));
    CHECK(inner_product(f, t.character(1)).is_zero());
  }
}
