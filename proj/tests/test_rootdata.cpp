#include <set>

#include "doctest.h"
#include "ldo/rootdata.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

ParabolicDescriptor from_list(int n, std::initializer_list<std::pair<int, int>> pos) {
  ParabolicDescriptor d{n, 0};
  for (auto [i, j] : pos) d.positions |= 1ull << ((i - 1) * n + (j - 1));
  return d;
}

}  // namespace

TEST_CASE("weyl enumeration") {
  CHECK(all_weyl(2).size() == 2);
  CHECK(all_weyl(3).size() == 6);
  CHECK(all_weyl(5).size() == 120);
  CHECK(support::kind_of([] { all_weyl(6); }) == ErrorKind::TooLarge);
  auto s = all_weyl(2)[1];
  CHECK(s.matrix() == std::vector<std::vector<int>>{{0, 1}, {-1, 0}});
  for (int n = 2; n <= 5; ++n) {
    auto ws = all_weyl(n);
    for (size_t i = 0; i < ws.size(); ++i) {
      CHECK(weyl_index(ws[i]) == static_cast<int>(i));
      // determinant of the signed representative is 1
      int sgn = permutation_sign(ws[i].perm);
      int prod = 1;
      for (int x : ws[i].sign) prod *= x;
      CHECK(sgn * prod == 1);
      if (i > 0) CHECK(ws[i - 1].perm < ws[i].perm);
    }
  }
}

TEST_CASE("longest element") {
  CHECK(longest_element(2).perm == std::vector<int>{1, 0});
  CHECK(longest_element(3).perm == std::vector<int>{2, 1, 0});
  auto w0 = longest_element(4);
  auto lower = parabolic_descriptor(RootSubset::empty(4), WeylElement::identity(4), true);
  auto upper = parabolic_descriptor(RootSubset::empty(4), WeylElement::identity(4), false);
  CHECK(conjugate(lower, w0) == upper);
}

TEST_CASE("parabolic descriptors") {
  auto e2 = WeylElement::identity(2);
  CHECK(parabolic_descriptor(RootSubset::empty(2), e2, false) == from_list(2, {{1, 2}}));
  RootSubset a1{3, 1u};
  CHECK(parabolic_descriptor(a1, WeylElement::identity(3), false) == from_list(3, {{1, 2}, {2, 1}, {1, 3}, {2, 3}}));
  auto s = all_weyl(2)[1];
  CHECK(parabolic_descriptor(RootSubset::empty(2), s, false) == from_list(2, {{2, 1}}));
  auto b3 = parabolic_descriptor(RootSubset::empty(3), WeylElement::identity(3), false);
  CHECK(contains(b3, parabolic_descriptor(a1, WeylElement::identity(3), false)));
  CHECK_FALSE(contains(parabolic_descriptor(RootSubset::empty(2), e2, false),
                       parabolic_descriptor(RootSubset::empty(2), e2, true)));
  for (const auto& psi : all_root_subsets(4))
    for (const auto& w : all_weyl(4))
      for (bool opp : {false, true}) {
        auto d = parabolic_descriptor(psi, w, opp);
        CHECK(d.pattern_closed());
        CHECK(contains(d, parabolic_descriptor(RootSubset::full(4), w, opp)));
      }
}

TEST_CASE("n_psi and cosets") {
  CHECK(n_psi(2, RootSubset::empty(2)) == 2);
  CHECK(n_psi(3, RootSubset{3, 1u}) == 3);
  for (int n = 2; n <= 5; ++n) {
    CHECK(n_psi(n, RootSubset::full(n)) == 1);
    for (const auto& psi : all_root_subsets(n)) {
      CHECK(n_psi(n, psi) == n_psi_formula(n, psi));
      CHECK(static_cast<long>(coset_representatives(n, psi).size()) == n_psi_formula(n, psi));
    }
  }
  CHECK(coset_representatives(2, RootSubset::empty(2)).size() == 2);
  CHECK(coset_representatives(3, RootSubset{3, 1u}).size() == 3);
  CHECK(coset_representatives(3, RootSubset::full(3)).size() == 1);
}

TEST_CASE("descriptor constant on cosets") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& psi : all_root_subsets(n))
      for (const auto& w : all_weyl(n))
        for (const auto& u : all_weyl(n)) {
          if (!in_weyl_subgroup(u, psi)) continue;
          for (bool opp : {false, true})
            CHECK(parabolic_descriptor(psi, compose(w, u), opp) == parabolic_descriptor(psi, w, opp));
        }
}

TEST_CASE("opposite parabolics are conjugate in type A") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& psi : all_root_subsets(n)) {
      auto opp = parabolic_descriptor(psi, WeylElement::identity(n), true);
      bool found = false;
      for (const auto& w : all_weyl(n)) {
        RootSubset q = psi;
        // reversed composition
        q.mask = 0;
        for (int i = 1; i < n; ++i)
          if (psi.has(n - i)) q.mask |= 1u << (i - 1);
        if (parabolic_descriptor(q, w, false) == opp) found = true;
      }
      CHECK(found);
    }
}

TEST_CASE("unipotent positions") {
  CHECK(unipotent_positions(RootSubset::empty(3), 1) == from_list(3, {{1, 2}, {1, 3}, {2, 3}}));
  CHECK(unipotent_positions(RootSubset{3, 1u}, 1) == from_list(3, {{1, 3}, {2, 3}}));
  CHECK(unipotent_positions(RootSubset::full(3), 1).positions == 0);
  // V_{Psi1} = V_{Psi2} disjoint-union (Levi of Psi2 intersected with V_{Psi1}) for Psi1 in Psi2
  for (int n = 2; n <= 5; ++n)
    for (const auto& p1 : all_root_subsets(n))
      for (const auto& p2 : all_root_subsets(n)) {
        if ((p1.mask & ~p2.mask) != 0) continue;
        auto v1 = unipotent_positions(p1, 1).positions, v2 = unipotent_positions(p2, 1).positions;
        auto mid = levi_positions(p2).positions & v1;
        CHECK((v2 & mid) == 0);
        CHECK((v2 | mid) == v1);
      }
}

TEST_CASE("minimal descriptors are the Borels") {
  for (int n = 2; n <= 4; ++n) {
    std::set<std::uint64_t> all;
    for (const auto& psi : all_root_subsets(n))
      for (const auto& w : all_weyl(n))
        for (bool opp : {false, true}) all.insert(parabolic_descriptor(psi, w, opp).positions);
    int minimal = 0;
    for (auto p : all) {
      bool is_min = true;
      for (auto q : all)
        if (q != p && (q & ~p) == 0) is_min = false;
      if (is_min) {
        ++minimal;
        CHECK(is_borel(ParabolicDescriptor{n, p}));
      }
    }
    long fact = 1;
    for (int t = 2; t <= n; ++t) fact *= t;
    CHECK(minimal == fact);
  }
}
