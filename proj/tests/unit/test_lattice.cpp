#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "tenv/backends/fq_linalg.hpp"
#include "tenv/lattice/lattice.hpp"

using namespace tenv;

namespace {

// mu by the defining recursion, independent of the library's table
Integer mobius_oracle(const FiniteLattice& L, int a, int b) {
  if (a == b) return 1;
  Integer s = 0;
  for (int z = 0; z < L.size(); ++z)
    if (L.leq(a, z) && L.lt(z, b)) s -= mobius_oracle(L, a, z);
  return s;
}

// permutation of subspaces induced by a matrix
std::vector<int> matrix_action(const std::vector<fq::Subspace>& subs, const fq::Mat& m, int q) {
  std::map<fq::Subspace, int> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i]] = static_cast<int>(i);
  std::vector<int> perm;
  for (const auto& s : subs) {
    std::vector<fq::Vec> img;
    for (const auto& r : s.rows) img.push_back(fq::apply(m, r, q));
    perm.push_back(index.at(fq::span(s.n, img, q)));
  }
  return perm;
}

std::vector<int> coordinate_action(int n, const std::vector<int>& sigma) {
  std::vector<int> perm(1 << n);
  for (int s = 0; s < (1 << n); ++s) {
    int t = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1) t |= 1 << sigma[i];
    perm[s] = t;
  }
  return perm;
}

// union-closed families of subsets of {0..n-1} containing 0 and the full set
FiniteLattice random_lattice(std::mt19937& rng, int n) {
  std::vector<int> fam{0, (1 << n) - 1};
  int extra = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < extra; ++i) fam.push_back(static_cast<int>(rng() % (1 << n)));
  bool grown = true;
  while (grown) {
    grown = false;
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    std::size_t m = fam.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!std::binary_search(fam.begin(), fam.begin() + m, fam[i] | fam[j])) {
          fam.push_back(fam[i] | fam[j]);
          grown = true;
        }
  }
  return FiniteLattice(static_cast<int>(fam.size()), [&](int a, int b) { return (fam[a] & ~fam[b]) == 0; });
}

std::vector<FiniteLattice> shipped() {
  std::vector<FiniteLattice> out{lattices::boolean(1), lattices::boolean(2), lattices::boolean(3), lattices::chain(2),
                                 lattices::chain(4),   lattices::pentagon(), lattices::diamond(3), lattices::diamond(4),
                                 lattices::partitions(3), lattices::partitions(4)};
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}, {4, 2}, {2, 5}, {3, 3}})
    out.push_back(fq::subspace_lattice(n, q));
  out.push_back(lattices::product(lattices::boolean(1), lattices::diamond(3)));
  return out;
}

}  // namespace

TEST_SUITE("lattice") {

  TEST_CASE("mobius examples") {
    auto b3 = lattices::boolean(3);
    CHECK(b3.mobius(b3.bottom(), b3.top()) == -1);
    auto f23 = fq::subspace_lattice(3, 2);
    CHECK(f23.size() == 16);
    CHECK(f23.mobius(f23.bottom(), f23.top()) == -8);
    auto c = lattices::chain(3);
    CHECK(c.mobius(c.bottom(), c.top()) == 0);
    CHECK(c.mobius(0, 0) == 1);
    CHECK_THROWS_AS(c.mobius(2, 0), std::invalid_argument);
    auto pi4 = lattices::partitions(4);
    CHECK(pi4.size() == 15);
    CHECK(pi4.mobius(pi4.bottom(), pi4.top()) == -6);
  }

  TEST_CASE("mobius agrees with the recursion and convolves to delta") {
    for (const auto& L : shipped()) {
      if (L.size() > 40) continue;
      for (int a = 0; a < L.size(); ++a) {
        auto from = L.mobius_from(a);
        for (int b = 0; b < L.size(); ++b) {
          if (!L.leq(a, b)) continue;
          CHECK(from[b] == mobius_oracle(L, a, b));
          Integer s = 0;
          for (int z : L.interval(a, b)) s += from[z];
          CHECK(s == (a == b ? 1 : 0));
        }
      }
    }
  }

  TEST_CASE("subspace lattice mobius") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 5}}) {
      auto L = fq::subspace_lattice(n, q);
      Integer expect = 1;
      for (int i = 0; i < n * (n - 1) / 2; ++i) expect *= q;
      if (n % 2) expect = -expect;
      CHECK(L.mobius(L.bottom(), L.top()) == expect);
      CHECK(is_modular(L));
      CHECK(lattice_rank(L) == n);
    }
  }

  TEST_CASE("structure") {
    auto s = structure(lattices::boolean(3));
    CHECK(s.is_modular);
    CHECK(s.is_complemented);
    CHECK(s.rank == 3);
    CHECK(s.atoms.size() == 3);
    CHECK(s.socle == 7);
    CHECK_FALSE(structure(lattices::pentagon()).is_modular);
    auto f = structure(fq::subspace_lattice(3, 2));
    CHECK(f.is_modular);
    CHECK(f.is_complemented);
    CHECK(f.rank == 3);
    CHECK(f.atoms.size() == 7);
    auto c = structure(lattices::chain(3));
    CHECK(c.is_modular);
    CHECK_FALSE(c.is_complemented);
    CHECK(c.socle == 1);
    // 0 < a < 1 together with 0 < b < c < 1 has chains of length 2 and 3
    static const bool rel[5][5] = {{1, 1, 1, 1, 1}, {0, 1, 0, 0, 1}, {0, 0, 1, 1, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
    FiniteLattice ng(5, [](int a, int b) { return rel[a][b]; });
    CHECK_FALSE(structure(ng).rank.has_value());
    CHECK_THROWS_WITH_AS(lattice_rank(ng), doctest::Contains("not graded"), std::domain_error);
  }

  TEST_CASE("mu vanishing profile") {
    auto b2 = lattices::boolean(2);
    auto p = mu_vanishing_profile(b2);
    auto t = p[b2.top()];
    CHECK((t.mobius_nonzero && t.join_of_atoms && t.interval_complemented && t.below_socle));
    auto c = lattices::chain(3);
    auto q = mu_vanishing_profile(c)[c.top()];
    CHECK_FALSE((q.mobius_nonzero || q.join_of_atoms || q.interval_complemented || q.below_socle));
    for (const auto& f : mu_vanishing_profile(fq::subspace_lattice(2, 2))) CHECK(f.all_equal());
    CHECK_THROWS_WITH_AS(mu_vanishing_profile(lattices::pentagon()), doctest::Contains("modularity required"),
                         std::domain_error);
  }

  TEST_CASE("order complex homology") {
    auto h = order_complex_homology(lattices::boolean(2));
    CHECK(h == std::vector<Integer>{0, 0, 1});
    for (const auto& x : order_complex_homology(lattices::chain(3))) CHECK(x == 0);
    auto f = order_complex_homology(fq::subspace_lattice(2, 2));
    CHECK(f == std::vector<Integer>{0, 0, 2});
    for (const auto& L : shipped()) {
      if (L.size() > 70 || !is_modular(L)) continue;
      int r = lattice_rank(L);
      auto hr = order_complex_homology(L);
      Integer mu = L.mobius(L.bottom(), L.top());
      for (int d = 0; d < static_cast<int>(hr.size()); ++d) {
        if (d == r) CHECK(hr[d] == (r % 2 ? -mu : mu));
        else CHECK(hr[d] == 0);
      }
    }
  }

  TEST_CASE("mobius is the reduced Euler characteristic of chains") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      auto L = random_lattice(rng, 4);
      CHECK(euler_characteristic(chain_counts(L)) == L.mobius(L.bottom(), L.top()));
      if (is_modular(L)) {
        int r = lattice_rank(L);
        auto h = order_complex_homology(L);
        for (int d = 0; d < static_cast<int>(h.size()); ++d)
          if (d != r) CHECK(h[d] == 0);
        for (const auto& f : mu_vanishing_profile(L)) CHECK(f.all_equal());
      }
    }
  }

  TEST_CASE("fixed sublattices") {
    auto b3 = lattices::boolean(3);
    std::vector<int> id(b3.size());
    for (int i = 0; i < b3.size(); ++i) id[i] = i;
    CHECK(isomorphic(fixed_sublattice(b3, id), b3));
    auto swap = coordinate_action(3, {1, 0, 2});
    auto fx = b3.fixed_points(swap);
    std::sort(fx.begin(), fx.end());
    CHECK(fx == std::vector<int>{0, 3, 4, 7});
    CHECK(isomorphic(fixed_sublattice(b3, swap), lattices::boolean(2)));
    std::vector<int> bad(b3.size(), 0);
    CHECK_THROWS_AS(fixed_sublattice(b3, bad), std::invalid_argument);

    std::vector<fq::Subspace> subs;
    auto L = fq::subspace_lattice(3, 2, &subs);
    // single Jordan block (order 4): one fixed line, one fixed plane
    fq::Mat j3{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}};
    auto fj = fixed_sublattice(L, matrix_action(subs, j3, 2));
    CHECK(isomorphic(fj, lattices::chain(4)));
    // transvection: three fixed lines and three fixed planes
    fq::Mat tv{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    auto ft = fixed_sublattice(L, matrix_action(subs, tv, 2));
    CHECK(ft.size() == 8);
    CHECK(atoms(ft).size() == 3);
    CHECK(is_modular(ft));
  }

  TEST_CASE("Hopf trace formula") {
    std::vector<fq::Subspace> subs;
    auto L = fq::subspace_lattice(3, 2, &subs);
    for (const auto& g : fq::general_linear(3, 2)) {
      auto perm = matrix_action(subs, g, 2);
      auto fixed = fixed_sublattice(L, perm);
      CHECK(euler_characteristic(fixed_chain_counts(L, perm)) == fixed.mobius(fixed.bottom(), fixed.top()));
    }
    auto pi4 = lattices::partitions(4);
    // S_4 acting on set partitions through relabelling
    std::vector<int> sigma{0, 1, 2, 3};
    auto key = [&](int e) { return pi4.label(e); };
    std::map<std::string, int> by_label;
    for (int e = 0; e < pi4.size(); ++e) by_label[key(e)] = e;
    auto canon = [](std::vector<std::vector<int>> blocks) {
      for (auto& b : blocks) std::sort(b.begin(), b.end());
      std::sort(blocks.begin(), blocks.end());
      std::string l;
      for (auto& b : blocks) {
        l += "{";
        for (std::size_t i = 0; i < b.size(); ++i) l += (i ? "," : "") + std::to_string(b[i] + 1);
        l += "}";
      }
      return l;
    };
    // recover blocks from labels like {1,2}{3}{4}
    auto blocks_of = [](const std::string& l) {
      std::vector<std::vector<int>> out;
      for (char c : l) {
        if (c == '{') out.emplace_back();
        else if (std::isdigit(static_cast<unsigned char>(c))) out.back().push_back(c - '1');
      }
      return out;
    };
    REQUIRE(canon(blocks_of(pi4.label(pi4.top()))) == pi4.label(pi4.top()));
    do {
      std::vector<int> perm(pi4.size());
      for (int e = 0; e < pi4.size(); ++e) {
        auto b = blocks_of(pi4.label(e));
        for (auto& blk : b)
          for (auto& x : blk) x = sigma[x];
        perm[e] = by_label.at(canon(b));
      }
      REQUIRE(pi4.is_automorphism(perm));
      auto fixed = fixed_sublattice(pi4, perm);
      CHECK(euler_characteristic(fixed_chain_counts(pi4, perm)) == fixed.mobius(fixed.bottom(), fixed.top()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  TEST_CASE("direct product factorization") {
    auto f = factor_direct_product(lattices::boolean(2));
    REQUIRE(f.size() == 2);
    CHECK(f[0].size() == 2);
    CHECK(f[1].size() == 2);
    auto m3 = fq::subspace_lattice(2, 2);
    auto g = factor_direct_product(m3);
    REQUIRE(g.size() == 1);
    CHECK(isomorphic(g[0], lattices::diamond(3)));
    auto prod = lattices::product(lattices::boolean(1), lattices::diamond(3));
    auto h = factor_direct_product(prod);
    REQUIRE(h.size() == 2);
    CHECK(isomorphic(h[0], lattices::diamond(3)));
    CHECK(isomorphic(h[1], lattices::boolean(1)));
    Integer mu = 1;
    for (const auto& x : h) mu *= x.mobius(x.bottom(), x.top());
    CHECK(mu == prod.mobius(prod.bottom(), prod.top()));
    CHECK(classify(prod) == "B1 x M_3");
    CHECK(classify(fq::subspace_lattice(3, 2)) == "L_3(2)");
    CHECK(classify(lattices::boolean(3)) == "B1^3");
    CHECK_THROWS_AS(factor_direct_product(lattices::chain(3)), std::domain_error);
    CHECK_THROWS_AS(factor_direct_product(lattices::pentagon()), std::domain_error);
  }

  TEST_CASE("json round trip") {
    for (const auto& L : shipped()) {
      if (L.size() > 100) continue;
      auto text = lattice_to_json(L);
      auto back = lattice_from_json(text);
      CHECK(isomorphic(back, L));
      CHECK(lattice_to_json(back) == text);
    }
    CHECK_THROWS(lattice_from_json(R"({"size":3,"covers":[[0,1],[0,2]]})"));
  }

}  // TEST_SUITE
