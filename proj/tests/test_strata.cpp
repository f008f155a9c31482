#include <chrono>
#include <map>
#include <set>

#include "doctest.h"
#include "ldo/catalog.hpp"
#include "ldo/strata.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

using support::PairKey;
using support::oracle_pairs;
using support::pairs_of;

bool block_pattern(const MatrixK& m, const RootSubset& psi, int kind) {
  // kind -1: unit block lower, 0: block diagonal, +1: unit block upper
  auto b = psi.block_of();
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) {
      bool zero = m(i, j).is_zero();
      if (b[i] == b[j]) {
        if (kind != 0 && m(i, j) != (i == j ? m.field().one() : m.field().zero())) return false;
      } else if (kind == 0 || (kind < 0 && b[i] < b[j]) || (kind > 0 && b[i] > b[j])) {
        if (!zero) return false;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("SL2 examples") {
  auto k = catalog::q_sqrt2();
  auto e = MatrixK::identity(k, 2);
  auto g = enumerate_strata(MatrixK::from_ints(k, {{1, 1}, {1, 2}}), e);
  CHECK(g.records.size() == 5);
  CHECK(closed_strata(g).size() == 4);
  CHECK(g.edges.size() == 4);
  for (auto [lo, hi] : g.edges) CHECK(hi == 4);
  CHECK(strata_summary(g) == "strata=5 closed=4 bound=5 generic=true");
  auto c = verify_counts(g);
  CHECK(c.pairs == 5);
  CHECK(c.closed_pairs == 4);
  // integral g1: the (e,s) and (s,e) strata are certified to be one T-orbit
  CHECK(c.orbits == 4);
  CHECK(g.records[2].orbit_class == 1);

  auto u = enumerate_strata(MatrixK::from_ints(k, {{1, 1}, {0, 1}}), e);
  CHECK(u.records.size() == 4);
  for (const auto& r : u.records)
    if (r.pair.psi.mask == 0) CHECK_FALSE((r.pair.w1.perm == std::vector<int>{1, 0} && r.pair.w2.is_identity()));
  auto cu = verify_counts(u);
  CHECK(cu.pairs == 4);
  CHECK(cu.closed_pairs == 3);
  CHECK_FALSE(cu.generic);

  // diagonal quotient: every present pair carries g itself, one orbit
  auto d = enumerate_strata(MatrixK::diagonal({k.from_int(2), k.from_rational(rat(1, 2))}), e);
  for (const auto& r : d.records) {
    CHECK(r.rep1 == d.g1);
    CHECK(r.rep2 == d.g2);
  }
  CHECK(verify_counts(d).orbits == 1);
  CHECK(verify_counts(d).closed_orbits == 1);
}

TEST_CASE("SL3 generic count") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(21);
  auto g1 = support::generic_sl(k, 3, rng), g2 = support::random_sl(k, 3, rng);
  auto t0 = std::chrono::steady_clock::now();
  auto s = enumerate_strata(g1 * g2, g2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(s.records.size() == 55);
  CHECK(closed_strata(s).size() == 36);
  auto c = verify_counts(s);
  CHECK(c.orbits == 55);
  CHECK(c.closed_orbits == 36);
  CHECK(c.generic);
  CHECK(secs < 10.0);
}

TEST_CASE("oracle agreement and representatives") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(4);
  for (int it = 0; it < 12; ++it) {
    int n = 2 + it % 2;
    auto g2 = support::random_sl(k, n, rng);
    auto h = it % 3 == 0 ? support::random_sl(k, n, rng, 2) : support::random_sl(k, n, rng);
    auto g1 = h * g2;
    auto s = enumerate_strata(g1, g2);
    CHECK(pairs_of(s) == oracle_pairs(g1, g2));
    for (const auto& r : s.records) {
      auto W1 = MatrixK::from_weyl(k, r.pair.w1), W2 = MatrixK::from_weyl(k, r.pair.w2);
      CHECK(mat_det(r.rep1).is_one());
      CHECK(mat_det(r.rep2).is_one());
      CHECK(block_pattern(mat_inv(W1) * r.rep1 * mat_inv(g1) * W1, r.pair.psi, -1));
      CHECK(block_pattern(mat_inv(W2) * r.rep2 * mat_inv(g2) * W2, r.pair.psi, 1));
      CHECK(block_pattern(mat_inv(W1) * r.rep1 * mat_inv(r.rep2) * W2, r.pair.psi, 0));
      if (r.pair.psi.mask == RootSubset::full(n).mask) {
        CHECK(r.rep1 == g1);
        CHECK(r.rep2 == g2);
      }
    }
  }
}

TEST_CASE("poset structure") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(9);
  for (int it = 0; it < 6; ++it) {
    int n = 2 + it % 2;
    auto g = support::random_sl(k, n, rng, it < 3 ? 2 : 8);
    auto s = enumerate_strata(g, MatrixK::identity(k, n));
    const size_t m = s.records.size();
    // brute-force strict containment and its transitive reduction
    auto below = [&](size_t a, size_t b) {
      return a != b && contains(s.records[a].pair.first, s.records[b].pair.first) &&
             contains(s.records[a].pair.second, s.records[b].pair.second);
    };
    std::vector<std::pair<int, int>> brute;
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) {
        if (!below(a, b)) continue;
        bool cover = true;
        for (size_t c = 0; c < m; ++c)
          if (below(a, c) && below(c, b)) cover = false;
        if (cover) brute.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    std::sort(brute.begin(), brute.end());
    CHECK(s.edges == brute);
    // the full pair is the top: never below anything
    size_t top = m - 1;
    CHECK(s.records[top].pair.psi.mask == RootSubset::full(n).mask);
    for (auto [lo, hi] : s.edges) CHECK(lo != static_cast<int>(top));
    // monotonicity: every enlargement of a present pair is present
    std::set<PairKey> present = pairs_of(s);
    for (const auto& r : s.records)
      for (const auto& q : all_root_subsets(n))
        if ((r.pair.psi.mask & ~q.mask) == 0)
          CHECK(present.count({parabolic_descriptor(q, r.pair.w1, true).positions,
                               parabolic_descriptor(q, r.pair.w2, false).positions}) == 1);
  }
}

TEST_CASE("closedness") {
  auto k = catalog::q_sqrt2();
  auto q = MatrixK::from_ints(k, {{2, 1}, {1, 1}});
  auto w0 = MatrixK::from_weyl(k, longest_element(2));
  CHECK(is_orbit_closed({w0 * q, q}));
  CHECK_FALSE(is_orbit_closed({MatrixK::from_ints(k, {{1, 1}, {0, 1}}), MatrixK::identity(k, 2)}));
  auto e = MatrixK::identity(k, 2);
  CHECK_FALSE(is_orbit_closed({w0, MatrixK::from_ints(k, {{1, 1}, {0, 1}}), e}));
  support::Rng rng(2);
  for (int it = 0; it < 8; ++it) {
    int n = 2 + it % 2;
    auto g2 = support::random_sl(k, n, rng);
    auto mono = support::random_torus(k, n, rng) * MatrixK::from_weyl(k, all_weyl(n)[it % all_weyl(n).size()]);
    auto s = enumerate_strata(mono * g2, g2);
    CHECK(is_orbit_closed({mono * g2, g2}));
    CHECK(verify_counts(s).orbits == 1);
  }
}

TEST_CASE("equivariance under monomial translation") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(14);
  auto g2 = support::random_sl(k, 3, rng);
  auto g1 = support::random_sl(k, 3, rng, 3) * g2;
  auto base = enumerate_strata(g1, g2);
  auto ws = all_weyl(3);
  for (size_t a = 0; a < ws.size(); a += 2)
    for (size_t b = 1; b < ws.size(); b += 2) {
      auto M1 = MatrixK::from_weyl(k, ws[a]), M2 = MatrixK::from_weyl(k, ws[b]);
      auto moved = enumerate_strata(M1 * g1, M2 * g2);
      REQUIRE(moved.records.size() == base.records.size());
      std::map<PairKey, const StratumRecord*> by_pair;
      for (const auto& r : moved.records) by_pair[{r.pair.first.positions, r.pair.second.positions}] = &r;
      for (const auto& r : base.records) {
        PairKey key{conjugate(r.pair.first, ws[a]).positions, conjugate(r.pair.second, ws[b]).positions};
        REQUIRE(by_pair.count(key) == 1);
        CHECK(by_pair[key]->rep1 == M1 * r.rep1);
        CHECK(by_pair[key]->rep2 == M2 * r.rep2);
      }
    }
}

TEST_CASE("genericity and orbit certificate") {
  auto k = catalog::q_sqrt2();
  CHECK(genericity_check(MatrixK::from_ints(k, {{1, 1}, {1, 2}})));
  CHECK_FALSE(genericity_check(MatrixK::from_ints(k, {{1, 1}, {0, 1}})));
  CHECK_FALSE(genericity_check(MatrixK::identity(k, 3)));
  // (x1, x2) and (D1 x1 g, D2 x2 g) with unit diagonals and g integral are recognised
  support::Rng rng(6);
  auto x1 = support::random_sl(k, 2, rng), x2 = support::random_sl(k, 2, rng);
  auto u = k.one() + k.theta();
  auto gam = MatrixK::from_ints(k, {{2, 1}, {1, 1}});
  auto D1 = MatrixK::diagonal({u, u.inverse()});
  CHECK(same_torus_orbit(x1, x2, D1 * x1 * gam, x2 * gam));
  CHECK_FALSE(same_torus_orbit(x1, x2, x1, MatrixK::from_ints(k, {{1, 3}, {0, 1}}) * x2));
  CHECK(support::kind_of([&] { enumerate_strata(MatrixK::identity(k, 6), MatrixK::identity(k, 6)); }) ==
        ErrorKind::TooLarge);
}
