// One line per acceptance criterion; exit status 1 when any criterion fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "ldo/catalog.hpp"
#include "ldo/decomp.hpp"
#include "ldo/dynamics.hpp"
#include "ldo/forms.hpp"
#include "ldo/strata.hpp"
#include "ldo/units.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Outcome stratification_counts() {
  Outcome o;
  auto k = catalog::q_sqrt2();
  auto t = Clock::now();
  auto s2 = enumerate_strata(MatrixK::from_ints(k, {{1, 1}, {1, 2}}), MatrixK::identity(k, 2));
  double t2 = since(t);
  o.require(s2.records.size() == 5 && closed_strata(s2).size() == 4, "SL2 counts");
  o.require(t2 < 10, "SL2 runtime");
  support::Rng rng(21);
  auto g1 = support::generic_sl(k, 3, rng), g2 = support::random_sl(k, 3, rng);
  t = Clock::now();
  auto s3 = enumerate_strata(g1 * g2, g2);
  double t3 = since(t);
  o.require(s3.records.size() == 55 && closed_strata(s3).size() == 36, "SL3 counts");
  o.require(t3 < 10, "SL3 runtime");
  o.detail << "SL2 " << s2.records.size() << "/" << closed_strata(s2).size() << " in " << t2 << " s, SL3 "
           << s3.records.size() << "/" << closed_strata(s3).size() << " in " << t3 << " s";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto k = catalog::q_sqrt2();
  support::Rng rng(1234);
  auto t = Clock::now();
  int agree = 0;
  for (int it = 0; it < 50; ++it) {
    int n = 2 + it % 2;
    auto g2 = support::random_sl(k, n, rng);
    // a third of the inputs are short words, so degenerate cells are exercised too
    auto h = it % 3 == 0 ? support::random_sl(k, n, rng, 2) : support::random_sl(k, n, rng);
    auto g1 = h * g2;
    agree += support::pairs_of(enumerate_strata(g1, g2)) == support::oracle_pairs(g1, g2);
  }
  double secs = since(t);
  o.require(agree == 50, "oracle mismatch");
  o.require(secs < 60, "runtime");
  o.detail << agree << "/50 inputs agree in " << secs << " s";
  return o;
}

Outcome closedness() {
  Outcome o;
  auto k = catalog::q_sqrt2();
  support::Rng rng(77);
  int mono_ok = 0, non_ok = 0;
  for (int it = 0; it < 20; ++it) {
    int n = 2 + it % 2;
    auto g2 = support::random_sl(k, n, rng);
    const auto& ws = all_weyl(n);
    auto m = support::random_torus(k, n, rng) * MatrixK::from_weyl(k, ws[static_cast<size_t>(it) % ws.size()]);
    mono_ok += is_orbit_closed({m * g2, g2}) && verify_counts(enumerate_strata(m * g2, g2)).orbits == 1;
  }
  for (int it = 0; it < 20; ++it) {
    int n = 2 + it % 2;
    auto g2 = support::random_sl(k, n, rng);
    MatrixK h;
    do h = support::random_sl(k, n, rng);
    while (h.is_monomial());
    non_ok += !is_orbit_closed({h * g2, g2}) && verify_counts(enumerate_strata(h * g2, g2)).orbits > 1;
  }
  o.require(mono_ok == 20, "monomial quotients");
  o.require(non_ok == 20, "non-monomial quotients");
  o.detail << "monomial " << mono_ok << "/20 closed with one stratum, non-monomial " << non_ok
           << "/20 not closed with several";
  return o;
}

Outcome ldu_identity() {
  Outcome o;
  auto k = catalog::q_sqrt2();
  support::Rng rng(99);
  auto W = MatrixK::from_weyl(k, longest_element(2)), Wi = mat_inv(W);
  int done = 0, ok = 0;
  while (done < 100) {
    auto a = support::random_element(k, rng, 4, false), b = support::random_element(k, rng, 4, false);
    auto c = k.one() + a * b;
    if (c.is_zero()) continue;
    ++done;
    // M = u-(b) u+(a) = U D L is read off the block LDU of w0 M w0^-1; then u+(a1) = D^-1 U D and u-(b1) = L
    auto M = u_minus(b) * u_plus(a);
    auto f = block_ldu(W * M * Wi, RootSubset::empty(2));
    if (!f) continue;
    auto U = Wi * f->v_minus * W, D = Wi * f->levi * W, L = Wi * f->v_plus * W;
    auto P = mat_inv(D) * U * D;
    bool shape = P(0, 0).is_one() && P(1, 1).is_one() && P(1, 0).is_zero() && L(0, 0).is_one() && L(1, 1).is_one() &&
                 L(0, 1).is_zero();
    ok += shape && P(0, 1) == c * a && L(1, 0) == c.inverse() * b && D == MatrixK::diagonal({c.inverse(), c}) &&
          D * P * L == M;
  }
  o.require(ok == 100, "identity");
  o.detail << ok << "/100 pairs reproduce the identity coefficient-exactly";
  return o;
}

Outcome product_formula() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> co(-50, 50), den(1, 9);
  double worst = 0;
  int ok = 0, total = 0;
  for (auto k : {catalog::q_sqrt2(), catalog::cyclic_cubic()}) {
    auto places = k.compute_places(128);
    for (int done = 0; done < 500;) {
      std::vector<Rational> c;
      for (int i = 0; i < k.degree(); ++i) c.push_back(rat(co(rng), den(rng)));
      FieldElement x = k.from_coeffs(c);
      if (x.is_zero()) continue;
      ++done;
      ++total;
      Interval p(1, 128);
      for (const auto& v : places) p = p * normalized_abs(x, v);
      double rel = p.width_d() / std::max(1.0, p.mid_d());
      worst = std::max(worst, rel);
      ok += p.contains(Rational(abs(field_norm(x)))) && rel < 1e-20;
    }
  }
  o.require(ok == total, "enclosure");
  o.detail << ok << "/" << total << " enclosures contain |N(x)|, widest relative width " << worst;
  return o;
}

Outcome unit_closure() {
  Outcome o;
  auto q2 = unit_closure_classify(catalog::q_sqrt2(), 0);
  auto cub = unit_closure_classify(catalog::cyclic_cubic(), 0);
  auto qc = unit_closure_classify(catalog::quartic_circle(), 2);
  o.require(q2.classification == ClosureKind::Discrete, "Q(sqrt2)");
  o.require(cub.classification == ClosureKind::PositiveReals && cub.exponent_box == 30 && cub.mesh_relative < 1e-2,
            "cubic");
  o.require(qc.classification == ClosureKind::Circle, "quartic");
  bool stable = true;
  for (auto [k, place] : {std::pair{catalog::q_sqrt2(), 0}, {catalog::cyclic_cubic(), 0}, {catalog::quartic_circle(), 2}})
    stable = stable && unit_closure_classify(k, place, 128).classification ==
                           unit_closure_classify(k, place, 256).classification;
  o.require(stable, "precision stability");
  o.detail << closure_name(q2.classification) << ", " << closure_name(cub.classification) << " (gap "
           << cub.mesh_relative << "), " << closure_name(qc.classification) << ", stable at 256 bits";
  return o;
}

Outcome cm_obstruction() {
  Outcome o;
  auto t = Clock::now();
  auto k = catalog::q_zeta8();
  ScanOptions so;
  so.exact = false;
  so.threads = workers();
  for (const auto& [name, f] : {std::pair{"f0", standard_form(k, 2)}, std::pair{"F-form", support::cm_form()}}) {
    auto pts = sample_values(f, 10, 12000, 2024, so).points;
    auto rep = cm_obstruction_check(f, pts, workers());
    bool integral = true, sine = true;
    for (const auto& r : rep.records) {
      if (r.independent) integral = integral && r.integral;
      sine = sine && (!r.independent || (r.sine_ok && r.sine_width < 1e-10));
    }
    o.require(rep.records.size() >= 10000, std::string(name) + " point count");
    o.require(rep.violations.empty(), std::string(name) + " violations");
    o.require(integral, std::string(name) + " norm products in (1/l^8)N");
    o.require(sine, std::string(name) + " sine identity");
    o.detail << name << ": " << rep.records.size() << " points, " << rep.independent << " independent, "
             << rep.violations.size() << " violations, l=" << rep.l.get_str() << ", widest sine enclosure "
             << rep.max_sine_width << "; ";
  }
  double secs = since(t);
  o.require(secs < 120, "runtime");
  o.detail << secs << " s";
  return o;
}

Outcome boundedness() {
  Outcome o;
  DynamicsConfig cfg;
  cfg.threads = workers();
  int agree = 0;
  auto suite = support::dynamics_suite(30);
  for (const auto& c : suite) {
    auto rep = check_boundedness(c.g1, c.g2, c.psi, c.path, c.C, cfg);
    bool ok = rep.agrees && rep.membership == c.expect_membership && rep.condition_ii == c.expect_ii;
    if (!ok) o.detail << " mismatch " << c.name << " (" << rep.note << ")";
    agree += ok;
  }
  o.require(agree == 12 && suite.size() == 12, "agreement");
  o.detail << agree << "/" << suite.size() << " configurations match at height " << cfg.height;
  return o;
}

Outcome density_trend() {
  Outcome o;
  auto f = support::density_form();
  o.require(f.field.r_real() == 3 && f.field.r_complex() == 0 && !is_cm(f.field), "totally real cubic");
  o.require(!is_rational(f), "non-rational form");
  Window w = default_window(f);
  ScanOptions so;
  so.exact = false;
  so.threads = workers();
  std::vector<double> cov;
  for (long H : {8L, 16L, 32L}) cov.push_back(density_report(f, scan_window(f, H, w, so), w, 0.25).coverage);
  o.require(cov[0] < cov[1] && cov[1] < cov[2], "strict increase");
  o.require(cov[2] > 0.5, "coverage at H=32");
  auto g = support::spectrum_form();
  std::vector<double> mins;
  for (long H : {8L, 16L, 32L}) mins.push_back(two_place_spectrum(g, H, 10.0, workers()).minimum);
  bool stable = mins[0] > 0;
  for (double m : mins) stable = stable && std::fabs(m - mins[0]) <= 1e-9 * mins[0];
  o.require(stable, "spectrum gap");
  o.detail << "coverage " << cov[0] << ", " << cov[1] << ", " << cov[2] << "; spectrum gap " << mins[0] << ", "
           << mins[1] << ", " << mins[2];
  return o;
}

std::string capture(const std::string& cmd, int& code) {
  std::string out;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  code = pclose(p);
  return out;
}

Outcome determinism() {
  Outcome o;
  std::string cli = LDO_CLI_PATH, d = std::string(LDO_DATA_DIR) + "/";
  const std::vector<std::string> configs = {
      "strata --field q-sqrt2 --n 3 --g1 " + d + "matrices/sl3-lower-g1.json --g2 " + d +
          "matrices/sl3-weyl-g1.json --format json --threads 4",
      "cm check --field q-zeta8 --form " + d + "forms/cm-zeta8.json --samples 500 --seed 9 --format csv --threads 4",
      "forms density --field cyclic-cubic --form " + d + "forms/density-cubic.json --height 8 --threads 4 --format json",
      "dynamics path --field q-sqrt2 --g " + d + "matrices/sl2-mixed-g1.json --g " + d + "matrices/sl2-mixed-g2.json --path " +
          d + "paths/sl2-balanced.json --threads 4",
  };
  for (const auto& cfg : configs) {
    int c0 = 0;
    std::string first = capture(cli + " " + cfg, c0);
    bool same = c0 == 0 && !first.empty();
    for (int run = 1; run < 3; ++run) {
      int c = 0;
      same = same && capture(cli + " " + cfg, c) == first && c == 0;
    }
    o.require(same, cfg.substr(0, cfg.find(' ', cfg.find(' ') + 1)));
  }
  o.detail << configs.size() << " configurations, 3 runs each";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"stratification counts", stratification_counts},
      {"brute-force oracle equivalence", oracle_equivalence},
      {"closedness equivalences", closedness},
      {"unipotent LDU identity", ldu_identity},
      {"product formula", product_formula},
      {"unit closure", unit_closure},
      {"CM obstruction", cm_obstruction},
      {"boundedness criterion", boundedness},
      {"density trend and spectrum gap", density_trend},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << ": "
              << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<size_t>(failed)) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
