#include "ldo/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldo/errors.hpp"
#include "ldo/lattice.hpp"

namespace ldo {

const char* closure_name(ClosureKind c) {
  switch (c) {
    case ClosureKind::Discrete: return "discrete";
    case ClosureKind::PositiveReals: return "positive_reals";
    case ClosureKind::Circle: return "circle";
    case ClosureKind::SpiralCandidate: return "spiral_candidate";
    case ClosureKind::Full: return "full";
  }
  return "?";
}

namespace {

void require_units(const NumberField& k) {
  if (k.r() == 1) fail(ErrorKind::NoUnits, "unit rank is zero (r = 1)");
  if (!k.has_full_unit_system())
    fail(ErrorKind::WrongUnitRank, "field '" + k.label() + "' lacks a verified system of r - 1 units");
}

// log of the normalized absolute value at every place, as midpoints
std::vector<double> log_vector(const FieldElement& x, const std::vector<ArchimedeanPlace>& places) {
  std::vector<double> out;
  for (const auto& p : places) out.push_back(log(normalized_abs(x, p)).mid_d());
  return out;
}

}  // namespace

BalanceResult balance_by_unit(const NumberField& k, const std::vector<FieldElement>& a, long m, long search_radius) {
  require_units(k);
  const auto& places = k.places();
  const size_t r = places.size();
  if (a.size() != r) fail(ErrorKind::ArityMismatch, "balance_by_unit expects one value per place");
  if (m < 1) fail(ErrorKind::Config, "m must be positive");
  std::vector<double> target(r);
  double total = 0;
  for (size_t i = 0; i < r; ++i) {
    if (a[i].is_zero()) fail(ErrorKind::DivisionByZero, "balance_by_unit needs nonzero values");
    target[i] = log(normalized_abs(a[i], places[i])).mid_d();
    total += target[i];
  }
  if (std::fabs(total) > 1e-6) fail(ErrorKind::Config, "prod_i |a_i|_i differs from 1");
  auto units = k.units();
  const size_t ku = units.size();
  std::vector<std::vector<double>> ul;  // ul[j][i] = log|u_j|_i
  for (const auto& u : units) ul.push_back(log_vector(u, places));
  // least squares centre: minimize |target + m * U e|
  std::vector<std::vector<double>> ata(ku, std::vector<double>(ku, 0.0));
  std::vector<double> atb(ku, 0.0);
  for (size_t p = 0; p < ku; ++p) {
    for (size_t q = 0; q < ku; ++q)
      for (size_t i = 0; i < r; ++i) ata[p][q] += ul[p][i] * ul[q][i] * m * m;
    for (size_t i = 0; i < r; ++i) atb[p] -= ul[p][i] * m * target[i];
  }
  // solve by Gaussian elimination (small, well conditioned)
  std::vector<double> centre(ku, 0.0);
  {
    auto A = ata;
    auto b = atb;
    for (size_t c = 0; c < ku; ++c) {
      size_t piv = c;
      for (size_t i = c + 1; i < ku; ++i)
        if (std::fabs(A[i][c]) > std::fabs(A[piv][c])) piv = i;
      std::swap(A[c], A[piv]);
      std::swap(b[c], b[piv]);
      for (size_t i = c + 1; i < ku; ++i) {
        double f = A[i][c] / A[c][c];
        for (size_t j = c; j < ku; ++j) A[i][j] -= f * A[c][j];
        b[i] -= f * b[c];
      }
    }
    for (size_t i = ku; i-- > 0;) {
      double s = b[i];
      for (size_t j = i + 1; j < ku; ++j) s -= A[i][j] * centre[j];
      centre[i] = s / A[i][i];
    }
  }
  std::vector<long> base(ku);
  for (size_t j = 0; j < ku; ++j) base[j] = std::lround(centre[j]);
  // exhaustive box search around the rounded centre; lexicographic order makes ties deterministic
  std::vector<long> e(ku), best;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<long> off(ku, -search_radius);
  while (true) {
    for (size_t j = 0; j < ku; ++j) e[j] = base[j] + off[j];
    double worst = 0;
    for (size_t i = 0; i < r; ++i) {
      double s = target[i];
      for (size_t j = 0; j < ku; ++j) s += static_cast<double>(m * e[j]) * ul[j][i];
      worst = std::max(worst, std::fabs(s));
    }
    // strict improvement beyond rounding noise; equal values keep the lexicographically smaller vector
    if (best.empty() || worst < best_val - 1e-9 * std::max(1.0, best_val)) {
      best_val = worst;
      best = e;
    }
    size_t pos = 0;
    while (pos < ku && off[pos] == search_radius) off[pos++] = -search_radius;
    if (pos == ku) break;
    ++off[pos];
  }
  // the loop above increments the first coordinate fastest; re-scan candidates within tolerance
  // and take the lexicographically smallest
  {
    std::vector<long> lexbest = best;
    std::fill(off.begin(), off.end(), -search_radius);
    while (true) {
      for (size_t j = 0; j < ku; ++j) e[j] = base[j] + off[j];
      double worst = 0;
      for (size_t i = 0; i < r; ++i) {
        double s = target[i];
        for (size_t j = 0; j < ku; ++j) s += static_cast<double>(m * e[j]) * ul[j][i];
        worst = std::max(worst, std::fabs(s));
      }
      if (worst <= best_val + 1e-9 * std::max(1.0, best_val) && e < lexbest) lexbest = e;
      size_t pos = 0;
      while (pos < ku && off[pos] == search_radius) off[pos++] = -search_radius;
      if (pos == ku) break;
      ++off[pos];
    }
    best = lexbest;
  }
  FieldElement xi = k.one();
  for (size_t j = 0; j < ku; ++j) xi = xi * units[j].pow(m * best[j]);
  // certified re-evaluation of the achieved bound
  Interval bound(1, kDefaultPrecision);
  for (size_t i = 0; i < r; ++i) {
    Interval v = normalized_abs(xi * a[i], places[i]);
    Interval w = Interval(1, kDefaultPrecision) / v;
    Interval mx = v.upper() > w.upper() ? v : w;
    if (mx.upper() > bound.upper()) bound = mx;
  }
  return {xi, best, bound};
}

UnitClosureReport unit_closure_classify(const NumberField& k, int target_place, mpfr_prec_t precision) {
  UnitClosureReport rep;
  rep.target_place = target_place;
  rep.precision = precision;
  if (target_place < 0 || target_place >= k.r()) fail(ErrorKind::Config, "target place out of range");
  if (k.r() == 1) {
    rep.classification = ClosureKind::Discrete;
    rep.rationale = "r = 1: the unit group is finite";
    return rep;
  }
  require_units(k);
  auto places = k.compute_places(precision);
  const ArchimedeanPlace& pl = places[static_cast<size_t>(target_place)];
  auto units = k.units();
  const size_t ku = units.size();
  std::vector<BigFloat> ell, ang;
  for (const auto& u : units) {
    ComplexInterval z = embed(u, pl);
    Interval lm = pl.real ? log(abs(z.re)) : log(norm2(z)) / Interval(2, precision);
    ell.push_back(lm.mid());
    double a = 0.0;
    if (pl.real) {
      ang.push_back(BigFloat(z.re.negative() ? Interval::pi(precision).mid() : BigFloat(precision)));
      a = z.re.negative() ? M_PI : 0.0;
    } else {
      Interval ar = arg(z);
      ang.push_back(ar.mid());
      a = ar.mid_d();
    }
    rep.log_lattice.emplace_back(lm.mid_d(), a);
  }
  rep.tolerance = std::ldexp(1.0, -static_cast<int>(precision) / 2);

  // gap statistics over the exponent box
  {
    long box = rep.exponent_box;
    while (box > 1 && std::pow(2.0 * box + 1, static_cast<double>(ku)) > 2e6) --box;
    rep.exponent_box = box;
    double mx = 0;
    std::vector<double> l;
    for (const auto& v : ell) {
      l.push_back(v.to_double());
      mx = std::max(mx, std::fabs(v.to_double()));
    }
    double least = std::numeric_limits<double>::infinity();
    std::vector<long> e(ku, -box);
    while (true) {
      double s = 0;
      for (size_t j = 0; j < ku; ++j) s += static_cast<double>(e[j]) * l[j];
      if (std::fabs(s) > 1e-12 && std::fabs(s) < least) least = std::fabs(s);
      size_t pos = 0;
      while (pos < ku && e[pos] == box) e[pos++] = -box;
      if (pos == ku) break;
      ++e[pos];
    }
    rep.mesh_absolute = std::isfinite(least) ? least : 0.0;
    rep.mesh_relative = (mx > 0 && std::isfinite(least)) ? least / (static_cast<double>(box) * mx) : 0.0;
  }

  if (k.r() == 2) {
    if (ell[0].is_zero() || std::fabs(ell[0].to_double()) < 1e-30)
      fail(ErrorKind::Inconclusive, "unit has trivial modulus at the target place");
    rep.classification = ClosureKind::Discrete;
    rep.rationale = "r = 2: the unit projections form a cyclic discrete group";
    return rep;
  }
  using S = RelationSearch::Status;
  std::vector<std::vector<BigFloat>> lv;
  for (const auto& v : ell) lv.push_back({v});
  RelationSearch mod = integer_relations(lv, rep.relation_bound, precision);
  if (mod.status == S::Ambiguous) fail(ErrorKind::Inconclusive, "relation detection among log moduli is below tolerance");
  for (const auto& rel : mod.relations) {
    std::vector<long> rr;
    for (const auto& c : rel) rr.push_back(c.get_si());
    rep.modulus_relations.push_back(rr);
  }
  const size_t rho = mod.relations.size();
  BigFloat two_pi = ldexp(Interval::pi(precision).mid(), 1);

  if (pl.real) {
    if (rho + 1 >= ku)
      fail(ErrorKind::Inconclusive, "log moduli at a real place look commensurable; refusing to guess");
    rep.classification = ClosureKind::PositiveReals;
    rep.rationale = "log moduli span a Q-space of dimension >= 2, so their closure is all of R";
    return rep;
  }
  // rationality of an angle: a relation (c, n) with c != 0 between the angle and 2 pi
  auto angle_rational = [&](const BigFloat& theta) -> int {
    RelationSearch s = integer_relations({{theta}, {two_pi}}, rep.relation_bound, precision);
    if (s.status == S::Ambiguous) return -1;
    for (const auto& rel : s.relations)
      if (rel[0] != 0) return 1;
    return 0;
  };
  if (rho + 1 >= ku) {
    // moduli generate a cyclic group; the kernel rotations decide
    bool irrational = false;
    for (const auto& rel : mod.relations) {
      BigFloat th(precision);
      for (size_t i = 0; i < ku; ++i) th = th + BigFloat(Rational(rel[i]), precision) * ang[i];
      int q = angle_rational(th);
      if (q < 0) fail(ErrorKind::Inconclusive, "rotation angle rationality is below tolerance");
      if (q == 0) irrational = true;
    }
    if (!irrational) fail(ErrorKind::Inconclusive, "moduli cyclic and all rotations rational, contradicting the unit rank");
    rep.classification = ClosureKind::Circle;
    rep.rationale = "log moduli are commensurable and a unit of modulus one rotates by an irrational angle";
    return rep;
  }
  bool all_rational = true;
  for (size_t i = 0; i < ku; ++i) {
    int q = angle_rational(ang[i]);
    if (q < 0) fail(ErrorKind::Inconclusive, "argument rationality is below tolerance");
    if (q == 0) all_rational = false;
  }
  if (all_rational) {
    rep.classification = ClosureKind::PositiveReals;
    rep.rationale = "dense moduli and every argument a rational multiple of 2 pi";
    return rep;
  }
  // annihilators (lambda, m) with m != 0: m x - n lies on the line R ell (x = arg / 2 pi)
  size_t j = 0;
  for (size_t i = 1; i < ku; ++i)
    if (abs(ell[i]) > abs(ell[j])) j = i;
  std::vector<BigFloat> x;
  for (size_t i = 0; i < ku; ++i) x.push_back(ang[i] / two_pi);
  std::vector<std::vector<BigFloat>> vecs;
  std::vector<BigFloat> vm;
  for (size_t i = 0; i < ku; ++i)
    if (i != j) vm.push_back(x[i] - ell[i] / ell[j] * x[j]);
  vecs.push_back(vm);
  for (size_t t = 0; t < ku; ++t) {
    std::vector<BigFloat> vn;
    for (size_t i = 0; i < ku; ++i) {
      if (i == j) continue;
      if (t == j)
        vn.push_back(ell[i] / ell[j]);
      else
        vn.push_back(BigFloat(t == i ? -1.0 : 0.0, precision));
    }
    vecs.push_back(vn);
  }
  RelationSearch sp = integer_relations(vecs, rep.relation_bound, precision);
  if (sp.status == S::Ambiguous) fail(ErrorKind::Inconclusive, "spiral annihilator detection is below tolerance");
  if (sp.status == S::Found) {
    rep.classification = ClosureKind::SpiralCandidate;
    rep.rationale = "an annihilator couples modulus and argument";
  } else {
    rep.classification = ClosureKind::Full;
    rep.rationale = "no annihilator with coefficients up to the bound";
  }
  return rep;
}

FieldElement pell_fundamental_unit(const NumberField& k) {
  const Poly& m = k.min_poly();
  if (m.degree() != 2 || m.coeff(1) != 0 || m.coeff(0) >= 0)
    fail(ErrorKind::Config, "Pell helper needs a field Q[x]/(x^2 - D) with D > 0");
  Integer D = Rational(-m.coeff(0)).get_num();
  Integer a0 = sqrt(D);
  // continued fraction of sqrt(D): m_{i+1} = d_i a_i - m_i, d_{i+1} = (D - m_{i+1}^2) / d_i
  Integer mm = 0, dd = 1, a = a0;
  Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
  for (int it = 0; it < 10000; ++it) {
    Integer nrm = p * p - D * q * q;
    if (nrm == 1 || nrm == -1) return k.from_coeffs({Rational(p), Rational(q)});
    mm = dd * a - mm;
    dd = (D - mm * mm) / dd;
    a = (a0 + mm) / dd;
    Integer p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
  }
  fail(ErrorKind::SearchExhausted, "continued fraction period too long");
}

}  // namespace ldo
