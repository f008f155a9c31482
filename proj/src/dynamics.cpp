#include "ldo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>

#include "ldo/errors.hpp"
#include "ldo/lattice.hpp"
#include "ldo/parallel.hpp"

namespace ldo {

namespace {

using cld = std::complex<long double>;

HorosphericalData from_ranking(const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return x[static_cast<size_t>(a)] > x[static_cast<size_t>(b)]; });
  HorosphericalData out;
  out.psi = RootSubset::empty(n);
  for (int k = 0; k + 1 < n; ++k)
    if (x[static_cast<size_t>(p[static_cast<size_t>(k)])] == x[static_cast<size_t>(p[static_cast<size_t>(k + 1)])])
      out.psi.mask |= 1u << k;
  out.basis_permutation = WeylElement::from_perm(p);
  out.w_plus = conjugate(unipotent_positions(out.psi, +1), out.basis_permutation);
  out.w_minus = conjugate(unipotent_positions(out.psi, -1), out.basis_permutation);
  out.levi = conjugate(levi_positions(out.psi), out.basis_permutation);
  return out;
}

Interval interval_max(const Interval& a, const Interval& b) {
  BigFloat lo = a.lower() > b.lower() ? a.lower() : b.lower();
  BigFloat hi = a.upper() > b.upper() ? a.upper() : b.upper();
  return Interval(lo, hi);
}

cld to_cld(const ComplexInterval& z) { return {z.re.mid().to_long_double(), z.im.mid().to_long_double()}; }

// Numeric data of one place for a fixed (g, t).
struct PlaceData {
  bool real = true;
  int e = 1;
  std::vector<cld> theta_pow;  // sigma_v(theta)^k
  std::vector<cld> m;          // M_v = T_v sigma_v(g_v), row-major
  long double inv_norm = 0;    // ||M_v^-1|| in the sup operator norm
};

struct Problem {
  int n = 0, deg = 0, r = 0, dim = 0;
  std::vector<PlaceData> places;

  // prod_v (max_i |(M_v xi)_i|)^e_v for coefficient vector c (index i*deg + k)
  long double value(const std::vector<long>& c) const {
    long double f = 1;
    std::vector<cld> xi(static_cast<size_t>(n));
    for (const auto& pd : places) {
      for (int i = 0; i < n; ++i) {
        cld s = 0;
        for (int k = 0; k < deg; ++k) s += static_cast<long double>(c[static_cast<size_t>(i * deg + k)]) * pd.theta_pow[static_cast<size_t>(k)];
        xi[static_cast<size_t>(i)] = s;
      }
      long double nv = 0;
      for (int i = 0; i < n; ++i) {
        cld y = 0;
        for (int j = 0; j < n; ++j) y += pd.m[static_cast<size_t>(i * n + j)] * xi[static_cast<size_t>(j)];
        nv = std::max(nv, std::abs(y));
      }
      f *= pd.e == 1 ? nv : nv * nv;
    }
    return f;
  }

  // real coordinates of the image of basis vector (i, k), scaled by 2^s_v at place v
  std::vector<std::vector<long double>> basis(const std::vector<long double>& s) const {
    std::vector<std::vector<long double>> b(static_cast<size_t>(dim));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < deg; ++k) {
        auto& row = b[static_cast<size_t>(i * deg + k)];
        row.assign(static_cast<size_t>(dim), 0.0L);
        row[static_cast<size_t>(i * deg + k)] = 1.0L;  // transform columns
        for (size_t v = 0; v < places.size(); ++v) {
          const auto& pd = places[v];
          long double sc = std::exp2(s[v]);
          for (int a = 0; a < n; ++a) {
            cld y = pd.m[static_cast<size_t>(a * n + i)] * pd.theta_pow[static_cast<size_t>(k)] * sc;
            row.push_back(y.real());
            if (!pd.real) row.push_back(y.imag());
          }
        }
      }
    return b;
  }
};

struct Candidate {
  std::vector<long> c;
  long double f = std::numeric_limits<long double>::infinity();
  long height = 0, l1 = 0;
};

void canonical_sign(std::vector<long>& c) {
  for (long x : c)
    if (x != 0) {
      if (x < 0)
        for (auto& y : c) y = -y;
      return;
    }
}

bool better(const Candidate& a, const Candidate& b) {
  if (b.c.empty()) return true;
  long double tol = 1e-9L * std::max(a.f, b.f);
  if (a.f < b.f - tol) return true;
  if (a.f > b.f + tol) return false;
  if (a.height != b.height) return a.height < b.height;
  if (a.l1 != b.l1) return a.l1 < b.l1;
  return a.c > b.c;
}

}  // namespace

HorosphericalData horospherical_data(const std::vector<Rational>& log_moduli) {
  if (log_moduli.size() < 2) fail(ErrorKind::Config, "need n >= 2");
  return from_ranking(log_moduli);
}

HorosphericalData horospherical_data(const std::vector<FieldElement>& diag, const ArchimedeanPlace& v, double tol) {
  const size_t n = diag.size();
  if (n < 2) fail(ErrorKind::Config, "need n >= 2");
  std::vector<double> mod(n);
  for (size_t i = 0; i < n; ++i) {
    if (diag[i].is_zero()) fail(ErrorKind::Singular, "zero diagonal entry");
    mod[i] = abs(embed(diag[i], v)).mid_d();
  }
  std::vector<size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), [&](size_t a, size_t b) { return mod[a] > mod[b]; });
  auto certified_equal = [&](const FieldElement& a, const FieldElement& b) {
    FieldElement q = a / b;
    if (v.real) return q.is_one() || (-q).is_one();
    FieldElement z = q;
    for (int k = 1; k <= 12; ++k, z = z * q)
      if (z.is_one()) return true;
    return false;
  };
  std::vector<Rational> rank(n);
  long level = 0;
  for (size_t k = 0; k < n; ++k) {
    if (k > 0) {
      size_t a = p[k - 1], b = p[k];
      if (!certified_equal(diag[a], diag[b])) {
        if (mod[a] <= mod[b] * (1.0 + tol))
          fail(ErrorKind::ToleranceAmbiguous, "moduli within tolerance but not certifiably equal");
        --level;
      }
    }
    rank[p[k]] = Rational(level);
  }
  return from_ranking(rank);
}

std::vector<Rational> TorusPath::log_diagonal(int place, int step) const {
  const auto& k = exponents.at(static_cast<size_t>(place)).at(static_cast<size_t>(step));
  std::vector<Rational> x(static_cast<size_t>(n), Rational(0));
  for (int i = n - 2; i >= 0; --i) x[static_cast<size_t>(i)] = x[static_cast<size_t>(i + 1)] + k[static_cast<size_t>(i)];
  Rational mean = 0;
  for (const auto& v : x) mean += v;
  mean /= n;
  for (auto& v : x) v -= mean;
  return x;
}

void TorusPath::validate(int n_expected, int places_expected) const {
  if (n != n_expected) fail(ErrorKind::ArityMismatch, "path rank does not match the matrices");
  if (places() != places_expected) fail(ErrorKind::WrongPlaceCount, "path has the wrong number of places");
  for (const auto& pl : exponents) {
    if (static_cast<int>(pl.size()) != steps()) fail(ErrorKind::Config, "places have different step counts");
    for (const auto& st : pl)
      if (static_cast<int>(st.size()) != n - 1) fail(ErrorKind::Config, "each step needs n-1 root exponents");
  }
  for (int v = 0; v < places(); ++v)
    if (base_of(v) < 2) fail(ErrorKind::Config, "path base must be >= 2");
}

TorusPath TorusPath::reversed() const {
  TorusPath r = *this;
  for (auto& pl : r.exponents)
    for (auto& st : pl)
      for (auto& e : st) e = -e;
  return r;
}

SystoleResult systole(const std::vector<MatrixK>& g, const std::vector<std::vector<Rational>>& log_diag,
                      const std::vector<long>& base, const DynamicsConfig& cfg) {
  if (g.empty()) fail(ErrorKind::Config, "no components");
  const NumberField& k = g[0].field();
  const auto& pl = k.places();
  const int r = static_cast<int>(pl.size());
  if (static_cast<int>(g.size()) != r || static_cast<int>(log_diag.size()) != r)
    fail(ErrorKind::WrongPlaceCount, "need one component per archimedean place");
  for (const auto& c : k.min_poly().coeffs())
    if (c.get_den() != 1) fail(ErrorKind::Config, "systole needs an integral generator");
  Problem pb;
  pb.n = g[0].n();
  pb.deg = k.degree();
  pb.r = r;
  pb.dim = pb.n * pb.deg;
  const int n = pb.n;
  auto base_of = [&](int v) { return v < static_cast<int>(base.size()) ? base[static_cast<size_t>(v)] : 2L; };
  for (int v = 0; v < r; ++v) {
    if (g[static_cast<size_t>(v)].n() != n || static_cast<int>(log_diag[static_cast<size_t>(v)].size()) != n)
      fail(ErrorKind::ArityMismatch, "component sizes differ");
    if (g[static_cast<size_t>(v)].field() != k) fail(ErrorKind::Config, "components from different fields");
    PlaceData pd;
    pd.real = pl[static_cast<size_t>(v)].real;
    pd.e = pl[static_cast<size_t>(v)].exponent();
    cld th = to_cld(pl[static_cast<size_t>(v)].root), p = 1;
    for (int d = 0; d < pb.deg; ++d, p *= th) pd.theta_pow.push_back(p);
    std::vector<long double> t(static_cast<size_t>(n));
    long double lb = std::log2(static_cast<long double>(base_of(v)));
    for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = std::exp2(log_diag[static_cast<size_t>(v)][static_cast<size_t>(i)].get_d() * lb);
    pd.m.resize(static_cast<size_t>(n * n));
    MatrixK gi = mat_inv(g[static_cast<size_t>(v)]);
    long double norm = 0;
    for (int i = 0; i < n; ++i) {
      long double row = 0;
      for (int j = 0; j < n; ++j) {
        pd.m[static_cast<size_t>(i * n + j)] = t[static_cast<size_t>(i)] * to_cld(embed(g[static_cast<size_t>(v)](i, j), pl[static_cast<size_t>(v)]));
        row += std::abs(to_cld(embed(gi(i, j), pl[static_cast<size_t>(v)]))) / t[static_cast<size_t>(j)];
      }
      norm = std::max(norm, row);
    }
    pd.inv_norm = norm;
    pb.places.push_back(std::move(pd));
  }

  SystoleResult res;
  long double lower = 1;
  for (const auto& pd : pb.places) lower /= pd.e == 1 ? pd.inv_norm : pd.inv_norm * pd.inv_norm;
  res.lower_bound = static_cast<double>(lower);

  Candidate best;
  auto consider = [&](std::vector<long> c) {
    long h = 0, l1 = 0;
    for (long x : c) {
      h = std::max(h, std::labs(x));
      l1 += std::labs(x);
    }
    if (h == 0 || h > cfg.height) return;
    canonical_sign(c);
    long double f = pb.value(c);
    Candidate cand{std::move(c), f, h, l1};
    if (better(cand, best)) best = std::move(cand);
  };
  for (int i = 0; i < n; ++i) {
    std::vector<long> c(static_cast<size_t>(pb.dim), 0);
    c[static_cast<size_t>(i * pb.deg)] = 1;
    consider(c);
  }

  // small boxes are cheaper to scan outright than to enumerate with a height filter
  auto scan_box = [&](long h) {
    std::vector<long> c(static_cast<size_t>(pb.dim), -h);
    for (;;) {
      consider(c);
      size_t i = 0;
      while (i < c.size() && c[i] == h) c[i++] = -h;
      if (i == c.size()) break;
      ++c[i];
    }
  };
  const bool scanned = std::pow(2.0L * cfg.height + 1, pb.dim) <= 1e6L;
  if (scanned) {
    scan_box(cfg.height);
  } else {
    // seed F* from a small box; keeps the enumeration radius modest when short vectors have large height
    long h0 = static_cast<long>((std::pow(1e5, 1.0 / pb.dim) - 1) / 2);
    if (h0 >= 1) scan_box(std::min(h0, cfg.height));
  }

  // amin_v: lower bound of log2 ||sigma_v(xi)|| over nonzero xi of height <= H, through M_v^-1
  std::vector<long double> amin(static_cast<size_t>(r));
  for (int v = 0; v < r; ++v) {
    long double other = 0;  // log2 prod_{w != v} B_w^e_w
    for (int w = 0; w < r; ++w) {
      if (w == v) continue;
      long double bw = 0;
      for (const auto& p : pb.places[static_cast<size_t>(w)].theta_pow) bw += std::abs(p);
      other += pb.places[static_cast<size_t>(w)].e * std::log2(static_cast<long double>(cfg.height) * bw);
    }
    amin[static_cast<size_t>(v)] = -other / pb.places[static_cast<size_t>(v)].e - std::log2(pb.places[static_cast<size_t>(v)].inv_norm);
  }
  const int free = r - 1;
  const int e_last = pb.places.back().e;
  long double delta = 0.5L;
  if (free > 0) {
    long double s = 0;
    for (int v = 0; v < free; ++v) s += pb.places[static_cast<size_t>(v)].e;
    delta = std::max(delta, s / (2.0L * e_last));
  } else {
    delta = 0;
  }
  const long double slack = 1e-9L;
  const long kGridCap = 4096;

  auto grid = [&](long double L, bool& capped) {
    std::vector<std::pair<long, long>> range(static_cast<size_t>(free));
    long total = 1;
    for (int v = 0; v < free; ++v) {
      long double sum_other = 0;
      for (int w = 0; w < r; ++w)
        if (w != v) sum_other += pb.places[static_cast<size_t>(w)].e * amin[static_cast<size_t>(w)];
      int ev = pb.places[static_cast<size_t>(v)].e;
      long double amax = (L - sum_other) / ev;
      long double lo = (static_cast<long double>(ev) / pb.deg - 1) * amax + sum_other / pb.deg;
      long double hi = L / pb.deg - amin[static_cast<size_t>(v)];
      range[static_cast<size_t>(v)] = {static_cast<long>(std::floor(lo)) - 1, static_cast<long>(std::ceil(hi)) + 1};
      total *= std::max(1L, range[static_cast<size_t>(v)].second - range[static_cast<size_t>(v)].first + 1);
    }
    capped = false;
    if (total > kGridCap && free > 0) {
      capped = true;
      long per = std::max(1L, static_cast<long>(std::pow(static_cast<double>(kGridCap), 1.0 / free)));
      for (auto& [lo, hi] : range)
        if (hi - lo + 1 > per) {
          long mid = (lo + hi) / 2;
          lo = mid - per / 2;
          hi = lo + per - 1;
        }
    }
    std::vector<std::vector<long double>> pts;
    std::vector<long> cur(static_cast<size_t>(free));
    std::function<void(int)> rec = [&](int v) {
      if (v == free) {
        std::vector<long double> s(static_cast<size_t>(r), 0.0L);
        long double acc = 0;
        for (int w = 0; w < free; ++w) {
          s[static_cast<size_t>(w)] = static_cast<long double>(cur[static_cast<size_t>(w)]);
          acc += pb.places[static_cast<size_t>(w)].e * s[static_cast<size_t>(w)];
        }
        s[static_cast<size_t>(r - 1)] = -acc / e_last;
        pts.push_back(std::move(s));
        return;
      }
      for (long x = range[static_cast<size_t>(v)].first; x <= range[static_cast<size_t>(v)].second; ++x) {
        cur[static_cast<size_t>(v)] = x;
        rec(v + 1);
      }
    };
    rec(0);
    return pts;
  };

  auto transform_of = [&](const std::vector<long double>& row) {
    std::vector<long> c(static_cast<size_t>(pb.dim));
    for (int j = 0; j < pb.dim; ++j) c[static_cast<size_t>(j)] = std::lrint(row[static_cast<size_t>(j)]);
    return c;
  };

  bool complete = true;
  if (!scanned) {
    // pass 1: reduced bases only, to bring F* close to the minimum before enumerating
    bool capped = false;
    for (const auto& s : grid(std::log2(best.f), capped)) {
      auto b = pb.basis(s);
      lll_reduce(b, static_cast<size_t>(pb.dim));
      for (const auto& row : b) consider(transform_of(row));
    }
    // pass 2: complete enumeration at each scaling
    long budget = cfg.node_budget;
    complete = !capped;
    auto pts = grid(std::log2(best.f * (1 + slack)), capped);
    if (capped) complete = false;
    for (const auto& s : pts) {
      long double L = std::log2(best.f * (1 + slack));
      long double rho2 = static_cast<long double>(n) * r * std::exp2(2 * (L / pb.deg + delta));
      auto b = pb.basis(s);
      lll_reduce(b, static_cast<size_t>(pb.dim));
      std::vector<std::vector<long double>> lat(b.size()), tr(b.size());
      for (size_t i = 0; i < b.size(); ++i) {
        tr[i].assign(b[i].begin(), b[i].begin() + pb.dim);
        lat[i].assign(b[i].begin() + pb.dim, b[i].end());
      }
      bool done = enumerate_short(
          lat, rho2,
          [&](const std::vector<long>& x) {
            std::vector<long double> acc(static_cast<size_t>(pb.dim), 0.0L);
            for (size_t i = 0; i < x.size(); ++i)
              if (x[i] != 0)
                for (int j = 0; j < pb.dim; ++j) acc[static_cast<size_t>(j)] += static_cast<long double>(x[i]) * tr[i][static_cast<size_t>(j)];
            consider(transform_of(acc));
          },
          budget);
      if (!done) {
        complete = false;
        break;
      }
    }
  }
  res.complete = complete;

  // certified re-evaluation of the winner
  std::vector<FieldElement> xi;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> co(static_cast<size_t>(pb.deg));
    for (int d = 0; d < pb.deg; ++d) co[static_cast<size_t>(d)] = Rational(best.c[static_cast<size_t>(i * pb.deg + d)]);
    xi.push_back(k.from_coeffs(co));
  }
  Interval val(1, kDefaultPrecision);
  for (int v = 0; v < r; ++v) {
    const auto& place = pl[static_cast<size_t>(v)];
    Interval lb = log(Interval(base_of(v), kDefaultPrecision));
    Interval nv(0, kDefaultPrecision);
    for (int i = 0; i < n; ++i) {
      FieldElement y = k.zero();
      for (int j = 0; j < n; ++j) y += g[static_cast<size_t>(v)](i, j) * xi[static_cast<size_t>(j)];
      Interval tv = exp(Interval(log_diag[static_cast<size_t>(v)][static_cast<size_t>(i)], kDefaultPrecision) * lb);
      nv = interval_max(nv, abs(embed(y, place)) * tv);
    }
    val *= pow(nv, place.exponent());
  }
  res.value = val;
  res.value_d = val.mid_d();
  res.witness = std::move(xi);
  return res;
}

SystoleTrace run_path(const std::vector<MatrixK>& g, const TorusPath& path, const DynamicsConfig& cfg) {
  if (g.empty()) fail(ErrorKind::Config, "no components");
  path.validate(g[0].n(), g[0].field().r());
  const int steps = path.steps();
  SystoleTrace tr;
  tr.values.resize(static_cast<size_t>(steps));
  DynamicsConfig inner = cfg;
  inner.threads = 1;
  parallel_for(static_cast<size_t>(steps), cfg.threads, [&](size_t st) {
    std::vector<std::vector<Rational>> ld;
    std::vector<long> base;
    for (int v = 0; v < path.places(); ++v) {
      ld.push_back(path.log_diagonal(v, static_cast<int>(st)));
      base.push_back(path.base_of(v));
    }
    tr.values[st] = systole(g, ld, base, inner);
  });
  for (int s = 0; s < steps; ++s) tr.step.push_back(s);
  if (steps == 0) {
    tr.verdict = "indeterminate";
    return tr;
  }
  tr.minimum = tr.values[0].value_d;
  for (const auto& v : tr.values) tr.minimum = std::min(tr.minimum, v.value_d);
  tr.decreasing_after_burn_in = true;
  for (int s = steps / 3 + 1; s < steps; ++s)
    if (tr.values[static_cast<size_t>(s)].value_d > tr.values[static_cast<size_t>(s - 1)].value_d * (1 + 1e-9))
      tr.decreasing_after_burn_in = false;
  if (tr.minimum >= cfg.bounded_margin)
    tr.verdict = "bounded";
  else if (tr.values.back().value_d < cfg.divergence_threshold)
    tr.verdict = "divergent";
  else
    tr.verdict = "indeterminate";
  return tr;
}

BoundednessReport check_boundedness(const MatrixK& g1, const MatrixK& g2, const RootSubset& psi, const TorusPath& path,
                                    double C, const DynamicsConfig& cfg) {
  const int n = g1.n();
  if (psi.n != n) fail(ErrorKind::ArityMismatch, "root subset rank does not match");
  if (psi == RootSubset::full(n)) fail(ErrorKind::HypothesisViolated, "Psi must be a proper subset of the simple roots");
  if (C <= 1) fail(ErrorKind::Config, "C must exceed 1");
  path.validate(n, 2);
  if (g1.field().r() != 2) fail(ErrorKind::WrongPlaceCount, "boundedness test needs a field with two archimedean places");
  const int steps = path.steps();
  if (steps == 0) fail(ErrorKind::Config, "empty path");
  const double b0 = static_cast<double>(path.base_of(0)), b1 = static_cast<double>(path.base_of(1));
  auto mod = [](double b, long e) { return std::pow(b, static_cast<double>(e)); };
  BoundednessReport rep;
  rep.product_inf = std::numeric_limits<double>::infinity();
  rep.product_sup = 0;
  for (int a = 1; a < n; ++a) {
    for (int s = 0; s < steps; ++s) {
      long ks = path.exponents[0][static_cast<size_t>(s)][static_cast<size_t>(a - 1)];
      long kt = path.exponents[1][static_cast<size_t>(s)][static_cast<size_t>(a - 1)];
      if (mod(b0, ks) <= 1 / C)
        fail(ErrorKind::HypothesisViolated, "|alpha(s_n)| falls below 1/C for alpha_" + std::to_string(a));
      if (psi.has(a)) {
        if (mod(b1, kt) <= 1 / C || mod(b1, kt) >= C)
          fail(ErrorKind::HypothesisViolated, "|alpha(t_n)| leaves (1/C, C) for alpha_" + std::to_string(a) + " in Psi");
      } else if (s > 0 && kt > path.exponents[1][static_cast<size_t>(s - 1)][static_cast<size_t>(a - 1)]) {
        fail(ErrorKind::HypothesisViolated, "|alpha(t_n)| increases for alpha_" + std::to_string(a) + " outside Psi");
      }
      double prod = mod(b0, ks) * mod(b1, kt);
      rep.product_inf = std::min(rep.product_inf, prod);
      rep.product_sup = std::max(rep.product_sup, prod);
    }
    if (!psi.has(a) && mod(b1, path.exponents[1].back()[static_cast<size_t>(a - 1)]) >= 1 / C)
      fail(ErrorKind::HypothesisViolated, "|alpha(t_n)| does not reach 1/C for alpha_" + std::to_string(a) + " outside Psi");
  }
  rep.membership = block_ldu(g1 * mat_inv(g2), psi).has_value();
  const double cp = C * C;
  rep.condition_ii = rep.product_inf > 1 / cp && rep.product_sup < cp;
  rep.predicted_bounded = rep.membership && rep.condition_ii;
  rep.trace = run_path({g1, g2}, path, cfg);
  rep.agrees = (rep.predicted_bounded && rep.trace.verdict == "bounded") ||
               (!rep.predicted_bounded && rep.trace.verdict == "divergent");
  std::ostringstream os;
  os << "membership=" << (rep.membership ? "yes" : "no") << " condition_ii=" << (rep.condition_ii ? "yes" : "no")
     << " predicted=" << (rep.predicted_bounded ? "bounded" : "unbounded") << " observed=" << rep.trace.verdict;
  rep.note = os.str();
  return rep;
}

PredictedLimit predicted_limit(const MatrixK& g1, const MatrixK& g2, const RootSubset& psi, const WeylElement& w1,
                               const WeylElement& w2) {
  const NumberField& k = g1.field();
  MatrixK W1 = MatrixK::from_weyl(k, w1), W2 = MatrixK::from_weyl(k, w2);
  MatrixK W1i = mat_inv(W1), W2i = mat_inv(W2);
  auto f = block_ldu(W1i * g1 * mat_inv(g2) * W2, psi);
  if (!f) fail(ErrorKind::MembershipFails, "g1 g2^-1 is not in the requested cell");
  PredictedLimit p;
  p.eps1 = W1 * f->v_minus * W1i;
  p.eps2 = W2 * mat_inv(f->v_plus) * W2i;
  p.rep1 = W1 * mat_inv(f->v_minus) * W1i * g1;
  p.rep2 = W2 * f->v_plus * W2i * g2;
  return p;
}

double limit_defect(const PredictedLimit& p, const TorusPath& path, int step) {
  const NumberField& k = p.eps1.field();
  if (k.r() != 2) fail(ErrorKind::WrongPlaceCount, "limit defect needs two places");
  path.validate(p.eps1.n(), 2);
  double worst = 0;
  const MatrixK* eps[2] = {&p.eps1, &p.eps2};
  for (int v = 0; v < 2; ++v) {
    auto x = path.log_diagonal(v, step);
    double lb = std::log(static_cast<double>(path.base_of(v)));
    const auto& place = k.places()[static_cast<size_t>(v)];
    for (int i = 0; i < eps[v]->n(); ++i)
      for (int j = 0; j < eps[v]->n(); ++j) {
        if (i == j || (*eps[v])(i, j).is_zero()) continue;
        double m = abs(embed((*eps[v])(i, j), place)).mid_d() *
                   std::exp(Rational(x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)]).get_d() * lb);
        worst = std::max(worst, m);
      }
  }
  return worst;
}

std::string trace_csv(const SystoleTrace& t) {
  std::ostringstream os;
  os.precision(12);
  os << "step,systole,lower,upper,complete,witness\n";
  for (size_t i = 0; i < t.values.size(); ++i) {
    const auto& r = t.values[i];
    os << t.step[i] << "," << r.value_d << "," << r.value.lo_d() << "," << r.value.hi_d() << "," << (r.complete ? 1 : 0)
       << ",";
    // entries separated by ';', coefficients by ' '
    for (size_t e = 0; e < r.witness.size(); ++e) {
      if (e) os << ";";
      const auto& c = r.witness[e].coeffs();
      for (size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << format_rational(c[k]);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ldo
