#include <set>

#include "doctest.h"
#include "ldo/catalog.hpp"
#include "ldo/forms.hpp"
#include "ldo/strata.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

struct Q2 {
  NumberField k = catalog::q_sqrt2();
  FieldElement X(long a) const { return k.from_int(a); }
  LinearForm lf(long a, long b) const { return {X(a), X(b)}; }
};

}  // namespace

TEST_CASE("make_form validates factor lists") {
  Q2 q;
  CHECK_NOTHROW(make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 1), q.lf(1, -1)}}));
  CHECK(support::kind_of([&] { make_form(q.k, {{q.lf(1, 1), q.lf(1, 1)}, {q.lf(1, 1), q.lf(1, -1)}}); }) ==
        ErrorKind::DependentFactors);
  auto f3 = make_form(q.k, {{{q.X(1), q.X(0), q.X(0)}, {q.X(0), q.X(1), q.X(0)}},
                            {{q.X(1), q.X(0), q.X(1)}, {q.X(0), q.X(1), q.X(1)}}});
  CHECK(f3.n == 3);
  CHECK(f3.m == 2);
  CHECK(support::kind_of([&] { make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}}); }) == ErrorKind::ArityMismatch);
  CHECK(support::kind_of([&] { make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 1)}}); }) == ErrorKind::ArityMismatch);
}

TEST_CASE("rationality is exact proportionality of the expanded products") {
  Q2 q;
  auto same = make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 1), q.lf(1, -1)}});
  CHECK(is_rational(same));
  auto other = make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 2), q.lf(1, -1)}});
  CHECK_FALSE(is_rational(other));
  FieldElement lam = q.X(3) + q.k.theta();
  LinearForm scaled = {lam, lam};
  auto sc = make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, -1), scaled}});
  CHECK(is_rational(sc));
  CHECK(is_rational(standard_form(q.k, 3)));
}

TEST_CASE("form_to_group reproduces the form") {
  Q2 q;
  auto f0 = standard_form(q.k, 2);
  auto gd = form_to_group(f0);
  for (int v = 0; v < 2; ++v) {
    CHECK(gd.g[static_cast<size_t>(v)].is_identity());
    CHECK(gd.alpha[static_cast<size_t>(v)].is_one());
  }
  auto f = make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 2), q.lf(1, -1)}});
  auto g = form_to_group(f);
  CHECK(g.alpha[0] == q.X(-2));
  CHECK(g.g[0](0, 0) == q.k.from_rational(Rational(-1, 2)));
  CHECK(g.g[0](1, 1) == q.X(-1));
  CHECK(mat_det(g.g[0]).is_one());
  CHECK(mat_det(g.g[1]).is_one());
  // exact re-expansion at sample points: alpha_v f_0(g_v z) = f_v(z)
  support::Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<FieldElement> z = {support::random_element(q.k, rng, 4), support::random_element(q.k, rng, 4)};
    for (int v = 0; v < 2; ++v) {
      const MatrixK& m = g.g[static_cast<size_t>(v)];
      FieldElement a = m(0, 0) * z[0] + m(0, 1) * z[1], b = m(1, 0) * z[0] + m(1, 1) * z[1];
      CHECK(g.alpha[static_cast<size_t>(v)] * a * b == f.value(v, z));
    }
  }
  // the non-rational form lands on a non-monomial quotient with several strata
  CHECK_FALSE((g.g[0] * mat_inv(g.g[1])).is_monomial());
  CHECK(enumerate_strata(g.g[0], g.g[1]).records.size() > 1);
}

TEST_CASE("variable reduction keeps factors independent and the witness non-proportional") {
  Q2 q;
  auto other = make_form(q.k, {{q.lf(1, 1), q.lf(1, -1)}, {q.lf(1, 2), q.lf(1, -1)}});
  auto id = reduce_variables(other);
  CHECK(id.phi == std::vector<std::vector<long>>{{1, 0}, {0, 1}});
  FieldElement o = q.X(1), z = q.X(0);
  auto f = make_form(q.k, {{{o, z, z}, {z, o, z}}, {{o, z, o}, {z, o, o}}});
  auto red = reduce_variables(f, 7);
  CHECK(red.form.n == 2);
  CHECK(red.form.m == 2);
  CHECK(red.phi.size() == 3);
  // recheck the substitution independently
  for (int v = 0; v < 2; ++v) {
    const auto& pl = red.form.factors[static_cast<size_t>(v)];
    CHECK(!(pl[0][0] * pl[1][1] - pl[0][1] * pl[1][0]).is_zero());
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        FieldElement s = q.X(0);
        for (int i = 0; i < 3; ++i)
          s += f.factors[static_cast<size_t>(v)][static_cast<size_t>(a)][static_cast<size_t>(i)] *
               Rational(red.phi[static_cast<size_t>(i)][static_cast<size_t>(c)]);
        CHECK(s == pl[static_cast<size_t>(a)][static_cast<size_t>(c)]);
      }
  }
  const auto& li = red.form.factors[static_cast<size_t>(red.place_i)][static_cast<size_t>(red.factor_i)];
  for (const auto& l : red.form.factors[static_cast<size_t>(red.place_j)]) CHECK(!(li[0] * l[1] - li[1] * l[0]).is_zero());
  auto shared = make_form(q.k, {{{o, z, z}, {z, o, z}}, {{z, o, z}, {o, z, z}}});
  CHECK(support::kind_of([&] { reduce_variables(shared); }) == ErrorKind::HypothesisFails);
}

TEST_CASE("scan values") {
  Q2 q;
  auto f0 = standard_form(q.k, 2);
  auto s = scan_values(f0, 1);
  CHECK(s.size() == 80);
  auto find = [&](const std::vector<long>& p) {
    for (size_t i = 0; i < s.size(); ++i)
      if (s.points[i] == p) return i;
    FAIL("point missing");
    return size_t{0};
  };
  size_t one = find({1, 0, 1, 0});
  CHECK(s.exact[one][0].is_one());
  CHECK(s.exact[one][1].is_one());
  CHECK_FALSE(s.degenerate[one]);
  CHECK(s.degenerate[find({1, 0, 0, 0})]);
  size_t u = find({1, 1, 1, 0});
  CHECK(s.exact[u][0] == q.X(1) + q.k.theta());
  CHECK(s.images[u][0].real() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(s.images[u][1].real() == doctest::Approx(1 - std::sqrt(2.0)));
  // every image re-evaluates from the exact value
  auto f = support::spectrum_form();
  auto t = scan_values(f, 2);
  for (size_t i = 0; i < t.size(); ++i)
    for (int v = 0; v < 2; ++v) {
      Interval e = embed(t.exact[i][static_cast<size_t>(v)], q.k.places()[static_cast<size_t>(v)]).re;
      double x = t.images[i][static_cast<size_t>(v)].real();
      CHECK(std::fabs(x - e.mid_d()) <= 1e-12 * (1 + std::fabs(x)));
    }
  ScanOptions cap;
  cap.max_points = 1000;
  CHECK(support::kind_of([&] { scan_values(f0, 5, cap); }) == ErrorKind::CapExceeded);
}

TEST_CASE("windowed scan equals the filtered box scan") {
  auto check = [](const DecomposableForm& f, long H) {
    Window w = default_window(f);
    ScanOptions o;
    o.exact = false;
    auto all = scan_values(f, H, o);
    std::set<std::vector<long>> expect;
    for (size_t i = 0; i < all.size(); ++i) {
      bool in = true;
      for (int v = 0; v < f.places(); ++v) {
        double x = all.images[i][static_cast<size_t>(v)].real();
        if (x < w[static_cast<size_t>(v)].first || x > w[static_cast<size_t>(v)].second) in = false;
      }
      if (in) expect.insert(all.points[i]);
    }
    o.threads = 3;
    auto win = scan_window(f, H, w, o);
    std::set<std::vector<long>> got(win.points.begin(), win.points.end());
    CHECK(got.size() == win.size());
    CHECK(got == expect);
    CHECK(std::is_sorted(win.points.begin(), win.points.end()));
  };
  check(support::density_form(), 2);
  check(support::spectrum_form(), 6);
  check(standard_form(catalog::cyclic_cubic(), 2), 2);
}

TEST_CASE("density report") {
  auto f = support::density_form();
  Window w = default_window(f);
  FormScan empty;
  CHECK(density_report(f, empty, w, 0.25).coverage == 0.0);
  // one synthetic value at the centre of every cell of a coarse grid
  FormScan full;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        full.points.push_back({a, b, c});
        full.images.push_back({-3.75 + 2.5 * a, -3.75 + 2.5 * b, -3.75 + 2.5 * c});
        full.degenerate.push_back(false);
      }
  CHECK(density_report(f, full, w, 2.5).coverage == 1.0);
  ScanOptions o;
  o.exact = false;
  o.threads = 4;
  double prev = -1;
  for (long H : {2L, 4L, 8L}) {
    auto s = scan_window(f, H, w, o);
    double c = density_report(f, s, w, 0.25).coverage;
    CHECK(c >= prev);
    prev = c;
    // nested grids: coarser cells are hit at least as often
    CHECK(density_report(f, s, w, 0.5).coverage >= c);
  }
}

TEST_CASE("two-place spectrum") {
  Q2 q;
  auto f0 = standard_form(q.k, 2);
  auto s = two_place_spectrum(f0, 4, 10.0);
  REQUIRE_FALSE(s.values.empty());
  for (double x : s.values) CHECK(std::fabs(x - std::round(x)) < 1e-9);
  CHECK(s.minimum == doctest::Approx(1.0));
  // rational form with denominators: products lie in (1/4) N
  Rational h(1, 2);
  LinearForm a = {q.X(1) * h, q.X(1) * h}, b = q.lf(1, -1);
  auto fr = make_form(q.k, {{a, b}, {a, b}});
  REQUIRE(is_rational(fr));
  auto r = two_place_spectrum(fr, 4, 10.0);
  for (double x : r.values) CHECK(std::fabs(4 * x - std::round(4 * x)) < 1e-9);
  CHECK(r.minimum == doctest::Approx(0.25));
  CHECK(r.min_spacing == doctest::Approx(0.25));
  // streaming and stored scans agree
  auto f = support::spectrum_form();
  ScanOptions o;
  o.exact = false;
  auto a1 = two_place_spectrum(f, scan_values(f, 5, o), 10.0);
  auto a2 = two_place_spectrum(f, 5, 10.0, 3);
  CHECK(a1.values == a2.values);
  CHECK(two_place_spectrum(f, FormScan{}, 10.0).values.empty());
  CHECK(support::kind_of([&] { two_place_spectrum(support::density_form(), 2); }) == ErrorKind::WrongPlaceCount);
}

TEST_CASE("CM obstruction over Q(zeta8)") {
  auto k = catalog::q_zeta8();
  auto f0 = standard_form(k, 2);
  // z = (1, 1): gamma = (1, 1), delta = 0
  auto rep = cm_obstruction_check(f0, {{1, 0, 0, 0, 1, 0, 0, 0}});
  CHECK(rep.l == 2);
  CHECK(rep.C == Rational(1, 256));
  REQUIRE(rep.records.size() == 1);
  CHECK_FALSE(rep.records[0].independent);
  REQUIRE(rep.records[0].ray_a.has_value());
  CHECK(rep.records[0].ray_a->is_zero());
  CHECK(rep.violations.empty());
  // z = (1, zeta^2): gamma = (1, 0), delta = (0, 1)
  auto ind = cm_obstruction_check(f0, {{1, 0, 0, 0, 0, 0, 1, 0}, {2, 1, 0, -1, 1, 0, 1, 1}});
  for (const auto& rec : ind.records) {
    CHECK(rec.independent);
    CHECK(rec.integral);
    CHECK(rec.sine_ok);
    auto z = point_vector(k, 2, rec.point);
    // brute-force oracle: prod_j |z1 z2|_{v_j} is the absolute norm of z1 z2
    CHECK(rec.value_product.contains(abs(field_norm(z[0] * z[1]))));
  }
  CHECK(ind.violations.empty());
  auto f = support::cm_form();
  ScanOptions o;
  o.exact = false;
  auto box = scan_values(f, 1, o);
  auto full = cm_obstruction_check(f, box.points, 4);
  CHECK(full.records.size() == 6560);
  CHECK(full.violations.empty());
  CHECK(full.max_sine_width < 1e-10);
  CHECK(full.rays > 0);
  CHECK(full.independent > 0);
  CHECK(support::kind_of([&] { cm_obstruction_check(standard_form(catalog::q_sqrt2(), 2), {}); }) == ErrorKind::NotCm);
  auto th = k.theta();
  auto bad = make_form(k, {{{k.one(), th}, {k.zero(), k.one()}}, {{k.one(), k.zero()}, {k.zero(), k.one()}}});
  CHECK(support::kind_of([&] { cm_obstruction_check(bad, {}); }) == ErrorKind::CoefficientsNotInF);
}
