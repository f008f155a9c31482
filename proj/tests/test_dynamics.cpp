#include <chrono>

#include "doctest.h"
#include "ldo/catalog.hpp"
#include "ldo/dynamics.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

std::vector<std::vector<Rational>> flat(int n, int r) {
  return std::vector<std::vector<Rational>>(static_cast<size_t>(r), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
}

// Exhaustive minimum over the coefficient box of height <= H, same tie rules.
std::pair<double, std::vector<long>> brute_systole(const std::vector<MatrixK>& g, const std::vector<std::vector<Rational>>& t,
                                                   long H) {
  const NumberField& k = g[0].field();
  const int n = g[0].n(), deg = k.degree(), dim = n * deg;
  std::vector<long> c(static_cast<size_t>(dim), -H);
  double best = 1e300;
  std::vector<long> arg;
  long best_h = 0, best_l1 = 0;
  for (;;) {
    bool nonzero = false, canon = false;
    for (long x : c)
      if (x != 0) {
        nonzero = true;
        canon = x > 0;
        break;
      }
    if (nonzero && canon) {
      double f = 1;
      for (int v = 0; v < k.r(); ++v) {
        const auto& pl = k.places()[static_cast<size_t>(v)];
        double nv = 0;
        for (int i = 0; i < n; ++i) {
          FieldElement y = k.zero();
          for (int j = 0; j < n; ++j) {
            std::vector<Rational> co(static_cast<size_t>(deg));
            for (int d = 0; d < deg; ++d) co[static_cast<size_t>(d)] = c[static_cast<size_t>(j * deg + d)];
            y += g[static_cast<size_t>(v)](i, j) * k.from_coeffs(co);
          }
          nv = std::max(nv, abs(embed(y, pl)).mid_d() * std::pow(2.0, t[static_cast<size_t>(v)][static_cast<size_t>(i)].get_d()));
        }
        f *= std::pow(nv, pl.exponent());
      }
      long h = 0, l1 = 0;
      for (long x : c) {
        h = std::max(h, std::labs(x));
        l1 += std::labs(x);
      }
      double tol = 1e-9 * std::max(f, best);
      bool take = arg.empty() || f < best - tol ||
                  (f <= best + tol && (h < best_h || (h == best_h && (l1 < best_l1 || (l1 == best_l1 && c > arg)))));
      if (take) {
        best = f;
        arg = c;
        best_h = h;
        best_l1 = l1;
      }
    }
    size_t i = 0;
    while (i < c.size() && c[i] == H) c[i++] = -H;
    if (i == c.size()) break;
    ++c[i];
  }
  return {best, arg};
}

std::vector<long> coeff_vector(const std::vector<FieldElement>& xi) {
  std::vector<long> c;
  for (const auto& x : xi)
    for (const auto& q : x.coeffs()) c.push_back(q.get_num().get_si());
  return c;
}

}  // namespace

TEST_CASE("horospherical data of a diagonal torus element") {
  auto h = horospherical_data({Rational(1), Rational(0), Rational(-1)});
  CHECK(h.psi == RootSubset::empty(3));
  CHECK(h.w_plus == unipotent_positions(RootSubset::empty(3), +1));
  CHECK(h.w_minus == unipotent_positions(RootSubset::empty(3), -1));

  auto g = horospherical_data({Rational(0), Rational(1), Rational(1)});
  CHECK(g.psi == RootSubset{3, 1u});
  CHECK(g.w_plus.has(1, 0));
  CHECK(g.w_plus.has(2, 0));
  CHECK(g.levi.has(1, 2));
  CHECK(g.w_minus.has(0, 1));
  CHECK(g.w_plus.count() + g.w_minus.count() + g.levi.count() == 6);

  // reversing the element swaps the expanding and contracting groups
  auto r = horospherical_data({Rational(0), Rational(-1), Rational(-1)});
  CHECK(r.w_plus == g.w_minus);
  CHECK(r.w_minus == g.w_plus);
}

TEST_CASE("numeric horospherical data certifies equal moduli or refuses") {
  auto k = catalog::q_sqrt2();
  const auto& v = k.places()[0];
  FieldElement th = k.theta();
  auto h = horospherical_data({th, -th, th.inverse() * Rational(1, 2)}, v, 1e-6);
  CHECK(h.psi.has(1));
  CHECK_FALSE(h.psi.has(2));
  FieldElement a = k.from_rational(Rational(1000001, 1000000));
  CHECK(support::kind_of([&] { horospherical_data({a, k.one(), a.inverse()}, v, 1e-3); }) == ErrorKind::ToleranceAmbiguous);
  CHECK_NOTHROW(horospherical_data({a, k.one(), a.inverse()}, v, 1e-9));
}

TEST_CASE("systole of the standard lattice") {
  auto k = catalog::q_sqrt2();
  std::vector<MatrixK> g(2, MatrixK::identity(k, 2));
  auto s = systole(g, flat(2, 2), {2, 2});
  CHECK(s.complete);
  CHECK(s.value.contains(Rational(1)));
  REQUIRE(s.witness.size() == 2);
  CHECK(s.witness[0].is_one());
  CHECK(s.witness[1].is_zero());
  CHECK(s.lower_bound <= s.value_d * (1 + 1e-12));
}

TEST_CASE("systole agrees with exhaustive search at small height") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<MatrixK> g = {support::random_sl(k, 2, rng, 4, 1), support::random_sl(k, 2, rng, 4, 1)};
    auto t = flat(2, 2);
    t[0] = {Rational(trial % 3, 2), Rational(-(trial % 3), 2)};
    t[1] = {Rational(-(trial % 2)), Rational(trial % 2)};
    DynamicsConfig cfg;
    cfg.height = 2;
    auto s = systole(g, t, {2, 2}, cfg);
    auto [f, arg] = brute_systole(g, t, 2);
    CHECK(s.complete);
    CHECK(s.value_d == doctest::Approx(f).epsilon(1e-9));
    CHECK(coeff_vector(s.witness) == arg);
    CHECK(s.value.lo_d() <= f * (1 + 1e-12));
    CHECK(s.value.hi_d() >= f * (1 - 1e-12));
  }
}

TEST_CASE("systole is monotone in the height bound") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<MatrixK> g = {support::random_sl(k, 2, rng, 5), support::random_sl(k, 2, rng, 5)};
    auto t = flat(2, 2);
    t[1] = {Rational(-3), Rational(3)};
    double prev = 1e300;
    for (long H : {1L, 3L, 10L, 20L}) {
      DynamicsConfig cfg;
      cfg.height = H;
      auto r = systole(g, t, {2, 2}, cfg);
      CHECK(r.complete);
      double v = r.value_d;
      CHECK(v <= prev * (1 + 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("systole is invariant under signed permutations and unit scalars") {
  auto k = catalog::q_sqrt2();
  support::Rng rng(5);
  FieldElement u = k.one() + k.theta();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<MatrixK> g = {support::random_sl(k, 3, rng), support::random_sl(k, 3, rng)};
    double base = systole(g, flat(3, 2), {2, 2}).value_d;
    MatrixK m = MatrixK::from_weyl(k, WeylElement::from_perm({2, 0, 1}));
    MatrixK sc = MatrixK::diagonal({u, u, u});
    CHECK(systole({m * g[0], m * g[1]}, flat(3, 2), {2, 2}).value_d == doctest::Approx(base).epsilon(1e-9));
    auto t = flat(3, 2);
    t[0] = {Rational(2), Rational(0), Rational(-2)};
    double tb = systole(g, t, {2, 2}).value_d;
    CHECK(systole({sc * g[0], sc * g[1]}, t, {2, 2}).value_d == doctest::Approx(tb).epsilon(1e-9));
  }
}

TEST_CASE("torus path diagonal and validation") {
  auto p = support::linear_path(3, 4, {1, 2}, {0, -1});
  auto x = p.log_diagonal(0, 1);  // root exponents (2, 4)
  CHECK(x[0] - x[1] == 2);
  CHECK(x[1] - x[2] == 4);
  CHECK(x[0] + x[1] + x[2] == 0);
  CHECK(p.reversed().exponents[1][3][1] == 4);
  CHECK(support::kind_of([&] { p.validate(3, 3); }) == ErrorKind::WrongPlaceCount);
  CHECK(support::kind_of([&] { p.validate(2, 2); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("run_path is independent of the thread count") {
  auto suite = support::dynamics_suite(6);
  const auto& c = suite[0];
  DynamicsConfig one, four;
  four.threads = 4;
  auto a = run_path({c.g1, c.g2}, c.path, one);
  auto b = run_path({c.g1, c.g2}, c.path, four);
  REQUIRE(a.values.size() == b.values.size());
  for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i].value_d == b.values[i].value_d);
  CHECK(trace_csv(a) == trace_csv(b));
}

TEST_CASE("boundedness criterion agrees with the systole on the twelve configurations") {
  auto start = std::chrono::steady_clock::now();
  auto suite = support::dynamics_suite();
  REQUIRE(suite.size() == 12);
  DynamicsConfig cfg;
  cfg.threads = 4;
  for (const auto& c : suite) {
    CAPTURE(c.name);
    auto rep = check_boundedness(c.g1, c.g2, c.psi, c.path, c.C, cfg);
    CAPTURE(rep.note);
    CHECK(rep.membership == c.expect_membership);
    CHECK(rep.condition_ii == c.expect_ii);
    CHECK(rep.agrees);
    for (const auto& v : rep.trace.values) CHECK(v.complete);
  }
  MESSAGE("twelve configurations in "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
}

TEST_CASE("boundedness hypotheses are enforced") {
  auto suite = support::dynamics_suite(5);
  const auto& c = suite[0];
  CHECK(support::kind_of([&] { check_boundedness(c.g1, c.g2, RootSubset::full(2), c.path, 4.0); }) ==
        ErrorKind::HypothesisViolated);
  auto up = c.path.reversed();  // alpha(t_n) grows off Psi and alpha(s_n) shrinks
  CHECK(support::kind_of([&] { check_boundedness(c.g1, c.g2, c.psi, up, 4.0); }) == ErrorKind::HypothesisViolated);
  auto k3 = catalog::cyclic_cubic();
  auto p3 = c.path;
  CHECK(support::kind_of([&] {
          check_boundedness(MatrixK::identity(k3, 2), MatrixK::identity(k3, 2), c.psi, p3, 4.0);
        }) == ErrorKind::WrongPlaceCount);
}

TEST_CASE("predicted limit is approached along a conforming path") {
  auto suite = support::dynamics_suite();
  const auto& c = suite[2];  // sl2-mixed/balanced
  auto e = WeylElement::identity(2);
  auto p = predicted_limit(c.g1, c.g2, c.psi, e, e);
  CHECK(p.eps1 * p.rep1 == c.g1);
  CHECK(p.eps2 * p.rep2 == c.g2);
  // rep1 rep2^-1 is diagonal for the open cell
  CHECK((p.rep1 * mat_inv(p.rep2)).is_diagonal());
  double prev = 1e300;
  for (int s = 0; s < c.path.steps(); ++s) {
    double d = limit_defect(p, c.path, s);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-3);
  const auto& bad = suite[4];  // sl2-weyl: corner entry vanishes
  CHECK(support::kind_of([&] { predicted_limit(bad.g1, bad.g2, bad.psi, e, e); }) == ErrorKind::MembershipFails);
  auto w = WeylElement::from_perm({1, 0});
  CHECK_NOTHROW(predicted_limit(bad.g1, bad.g2, bad.psi, w, e));
}
