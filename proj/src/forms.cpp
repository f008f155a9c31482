#include "ldo/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "ldo/errors.hpp"
#include "ldo/parallel.hpp"

namespace ldo {

namespace {

using cd = std::complex<double>;
using MPoly = std::map<std::vector<int>, FieldElement>;

FieldElement eval_linear(const LinearForm& l, const std::vector<FieldElement>& z) {
  FieldElement s = l[0] * z[0];
  for (size_t i = 1; i < l.size(); ++i) s += l[i] * z[i];
  return s;
}

MPoly expand(const NumberField& k, int n, const std::vector<LinearForm>& factors, const FieldElement& scale) {
  MPoly p;
  p[std::vector<int>(static_cast<size_t>(n), 0)] = scale;
  for (const auto& l : factors) {
    MPoly q;
    for (const auto& [mono, c] : p)
      for (int v = 0; v < n; ++v) {
        if (l[static_cast<size_t>(v)].is_zero()) continue;
        auto e = mono;
        ++e[static_cast<size_t>(v)];
        auto it = q.find(e);
        FieldElement t = c * l[static_cast<size_t>(v)];
        if (it == q.end())
          q.emplace(e, t);
        else
          it->second += t;
      }
    p.clear();
    for (auto& [mono, c] : q)
      if (!c.is_zero()) p.emplace(mono, c);
  }
  (void)k;
  return p;
}

bool proportional(const MPoly& p, const MPoly& q) {
  if (p.empty() || q.empty()) return p.empty() && q.empty();
  if (p.size() != q.size()) return false;
  auto it = q.find(p.begin()->first);
  if (it == q.end()) return false;
  FieldElement c = it->second / p.begin()->second;
  for (const auto& [mono, a] : p) {
    auto jt = q.find(mono);
    if (jt == q.end() || jt->second != c * a) return false;
  }
  return true;
}

bool forms_proportional(const LinearForm& a, const LinearForm& b) {
  KRows rows = {a, b};
  return rank_k(rows) < 2;
}

int rank_of(const std::vector<LinearForm>& ls) {
  KRows rows(ls.begin(), ls.end());
  return rank_k(rows);
}

cd to_cd(const ComplexInterval& z) { return {z.re.mid_d(), z.im.mid_d()}; }

// Double-precision evaluation data.
struct NumericForm {
  int n = 0, deg = 0;
  std::vector<bool> real;
  std::vector<std::vector<cd>> theta_pow;             // [place][k]
  std::vector<std::vector<std::vector<cd>>> coeff;  // [place][factor][var]
  std::vector<double> alpha;

  explicit NumericForm(const DecomposableForm& f) : n(f.n), deg(f.field.degree()), alpha(f.alpha) {
    const auto& pl = f.field.places();
    for (int v = 0; v < f.places(); ++v) {
      const auto& place = pl[static_cast<size_t>(v)];
      real.push_back(place.real);
      std::vector<cd> tp;
      cd th = to_cd(place.root), p = 1;
      for (int k = 0; k < deg; ++k, p *= th) tp.push_back(p);
      theta_pow.push_back(tp);
      std::vector<std::vector<cd>> cf;
      for (const auto& l : f.factors[static_cast<size_t>(v)]) {
        std::vector<cd> row;
        for (const auto& c : l) row.push_back(to_cd(embed(c, place)));
        cf.push_back(row);
      }
      coeff.push_back(cf);
    }
  }

  // alpha_v f_v(z); `small` reports a factor below the exactness threshold
  std::vector<cd> eval(const std::vector<long>& c, bool& small) const {
    small = false;
    std::vector<cd> out;
    std::vector<cd> z(static_cast<size_t>(n));
    for (size_t v = 0; v < coeff.size(); ++v) {
      for (int i = 0; i < n; ++i) {
        cd s = 0;
        for (int k = 0; k < deg; ++k) s += static_cast<double>(c[static_cast<size_t>(i * deg + k)]) * theta_pow[v][static_cast<size_t>(k)];
        z[static_cast<size_t>(i)] = s;
      }
      cd val = alpha[v];
      for (const auto& row : coeff[v]) {
        cd s = 0;
        for (int i = 0; i < n; ++i) s += row[static_cast<size_t>(i)] * z[static_cast<size_t>(i)];
        if (std::abs(s) < 1e-8) small = true;
        val *= s;
      }
      out.push_back(val);
    }
    return out;
  }
};

bool exactly_degenerate(const DecomposableForm& f, const std::vector<long>& c) {
  auto z = point_vector(f.field, f.n, c);
  for (const auto& pl : f.factors)
    for (const auto& l : pl)
      if (eval_linear(l, z).is_zero()) return true;
  return false;
}

void fill_exact(const DecomposableForm& f, FormScan& s, unsigned threads) {
  s.exact.assign(s.points.size(), {});
  parallel_for(s.points.size(), threads, [&](size_t i) {
    auto z = point_vector(f.field, f.n, s.points[i]);
    std::vector<FieldElement> vals;
    for (int v = 0; v < f.places(); ++v) vals.push_back(f.value(v, z));
    s.exact[i] = std::move(vals);
  });
}

void evaluate(const DecomposableForm& f, FormScan& s, const ScanOptions& opt) {
  NumericForm nf(f);
  s.images.assign(s.points.size(), {});
  std::vector<char> deg(s.points.size(), 0);
  parallel_for(s.points.size(), opt.threads, [&](size_t i) {
    bool small = false;
    s.images[i] = nf.eval(s.points[i], small);
    if (small) deg[i] = exactly_degenerate(f, s.points[i]) ? 1 : 0;
  });
  s.degenerate.assign(deg.begin(), deg.end());
  if (opt.exact) fill_exact(f, s, opt.threads);
}

long double box_count(long H, int dim) { return std::pow(2.0L * H + 1, dim); }

std::vector<std::vector<long>> box_points(long H, int dim) {
  std::vector<std::vector<long>> pts;
  std::vector<long> c(static_cast<size_t>(dim), -H);
  for (;;) {
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) pts.push_back(c);
    size_t i = 0;
    while (i < c.size() && c[i] == H) c[i++] = -H;
    if (i == c.size()) break;
    ++c[i];
  }
  return pts;
}

double window_coord(const cd& image, bool real) { return real ? image.real() : std::norm(image); }

bool in_window(const std::vector<cd>& img, const std::vector<bool>& real, const Window& w) {
  for (size_t v = 0; v < img.size(); ++v) {
    double x = window_coord(img[v], real[v]);
    if (x < w[v].first || x > w[v].second) return false;
  }
  return true;
}

// {y in [ymin, ymax] : lo <= a y^2 + b y + c <= hi} as a union of closed intervals
std::vector<std::pair<double, double>> quadratic_range(double a, double b, double c, double lo, double hi, double ymin,
                                                       double ymax) {
  std::vector<double> cuts = {ymin, ymax};
  auto roots = [&](double cc) {
    if (a == 0) {
      if (b != 0) cuts.push_back(-cc / b);
      return;
    }
    double disc = b * b - 4 * a * cc;
    if (disc < 0) return;
    double sq = std::sqrt(disc);
    double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    if (q != 0) {
      cuts.push_back(q / a);
      cuts.push_back(cc / q);
    } else {
      cuts.push_back(0.0);
    }
  };
  roots(c - lo);
  roots(c - hi);
  if (a != 0) cuts.push_back(-b / (2 * a));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> out;
  auto q = [&](double y) { return (a * y + b) * y + c; };
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double l = std::max(cuts[i], ymin), r = std::min(cuts[i + 1], ymax);
    if (l > r) continue;
    double mid = 0.5 * (l + r);
    double val = q(mid);
    if (val < lo || val > hi) continue;
    if (!out.empty() && out.back().second >= l - 1e-12 * (1 + std::fabs(l)))
      out.back().second = std::max(out.back().second, r);
    else
      out.emplace_back(l, r);
  }
  if (out.empty())  // touching points (double roots at the window edge)
    for (double y : cuts)
      if (y >= ymin && y <= ymax && q(y) >= lo && q(y) <= hi) out.emplace_back(y, y);
  return out;
}

}  // namespace

FieldElement DecomposableForm::value(int place, const std::vector<FieldElement>& z) const {
  FieldElement p = field.one();
  for (const auto& l : factors.at(static_cast<size_t>(place))) p *= eval_linear(l, z);
  return p;
}

DecomposableForm make_form(const NumberField& k, std::vector<std::vector<LinearForm>> factors, std::vector<double> alpha) {
  if (static_cast<int>(factors.size()) != k.r())
    fail(ErrorKind::ArityMismatch, "need one factor list per archimedean place (" + std::to_string(k.r()) + ")");
  DecomposableForm f;
  f.field = k;
  f.m = static_cast<int>(factors[0].size());
  if (f.m == 0) fail(ErrorKind::ArityMismatch, "empty factor list");
  f.n = static_cast<int>(factors[0][0].size());
  for (const auto& pl : factors) {
    if (static_cast<int>(pl.size()) != f.m) fail(ErrorKind::ArityMismatch, "factor counts differ between places");
    for (const auto& l : pl) {
      if (static_cast<int>(l.size()) != f.n) fail(ErrorKind::ArityMismatch, "linear forms have different arity");
      for (const auto& c : l)
        if (c.field() != k) fail(ErrorKind::Config, "coefficients from another field");
    }
  }
  if (f.m > f.n) fail(ErrorKind::DependentFactors, "more factors than variables");
  for (size_t v = 0; v < factors.size(); ++v)
    if (rank_of(factors[v]) < f.m) fail(ErrorKind::DependentFactors, "factors at place " + std::to_string(v) + " are dependent");
  if (alpha.empty()) alpha.assign(factors.size(), 1.0);
  if (alpha.size() != factors.size()) fail(ErrorKind::ArityMismatch, "need one scalar per place");
  for (double a : alpha)
    if (a == 0 || !std::isfinite(a)) fail(ErrorKind::Config, "scalars must be finite and nonzero");
  f.factors = std::move(factors);
  f.alpha = std::move(alpha);
  return f;
}

DecomposableForm standard_form(const NumberField& k, int n) {
  std::vector<LinearForm> pl;
  for (int i = 0; i < n; ++i) {
    LinearForm l(static_cast<size_t>(n), k.zero());
    l[static_cast<size_t>(i)] = k.one();
    pl.push_back(l);
  }
  return make_form(k, std::vector<std::vector<LinearForm>>(static_cast<size_t>(k.r()), pl));
}

bool is_rational(const DecomposableForm& f) {
  MPoly p0 = expand(f.field, f.n, f.factors[0], f.field.one());
  for (int v = 1; v < f.places(); ++v)
    if (!proportional(p0, expand(f.field, f.n, f.factors[static_cast<size_t>(v)], f.field.one()))) return false;
  return true;
}

FormGroupData form_to_group(const DecomposableForm& f) {
  if (f.m != f.n) fail(ErrorKind::ArityMismatch, "form_to_group needs as many factors as variables");
  FormGroupData out;
  for (int v = 0; v < f.places(); ++v) {
    const auto& pl = f.factors[static_cast<size_t>(v)];
    std::vector<FieldElement> e;
    for (const auto& l : pl) e.insert(e.end(), l.begin(), l.end());
    MatrixK h(f.field, f.n, e);
    FieldElement det = mat_det(h);
    if (det.is_zero()) fail(ErrorKind::SingularCoefficientMatrix, "coefficient matrix at place " + std::to_string(v));
    FieldElement inv = det.inverse();
    for (int j = 0; j < f.n; ++j) h(0, j) = h(0, j) * inv;
    std::vector<LinearForm> rows;
    for (int i = 0; i < f.n; ++i) {
      LinearForm r;
      for (int j = 0; j < f.n; ++j) r.push_back(h(i, j));
      rows.push_back(r);
    }
    if (expand(f.field, f.n, rows, det) != expand(f.field, f.n, pl, f.field.one()))
      fail(ErrorKind::InvariantViolation, "alpha f_0(g x) does not reproduce f");
    out.alpha.push_back(det);
    out.g.push_back(h);
  }
  return out;
}

ReducedForm reduce_variables(const DecomposableForm& f, std::uint64_t seed, long budget) {
  ReducedForm out;
  bool found = false;
  for (int i = 0; i < f.places() && !found; ++i)
    for (int a = 0; a < f.m && !found; ++a)
      for (int j = 0; j < f.places() && !found; ++j) {
        if (i == j) continue;
        bool matches = false;
        for (const auto& l : f.factors[static_cast<size_t>(j)])
          if (forms_proportional(f.factors[static_cast<size_t>(i)][static_cast<size_t>(a)], l)) matches = true;
        if (!matches) {
          out.place_i = i;
          out.factor_i = a;
          out.place_j = j;
          found = true;
        }
      }
  if (!found) fail(ErrorKind::HypothesisFails, "every factor is proportional to a factor at each other place");
  if (f.m == f.n) {
    out.form = f;
    out.phi.assign(static_cast<size_t>(f.n), std::vector<long>(static_cast<size_t>(f.n), 0));
    for (int i = 0; i < f.n; ++i) out.phi[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-2, 2);
  auto substitute = [&](const LinearForm& l, const std::vector<std::vector<long>>& phi) {
    LinearForm r;
    for (int c = 0; c < f.m; ++c) {
      FieldElement s = f.field.zero();
      for (int v = 0; v < f.n; ++v)
        if (phi[static_cast<size_t>(v)][static_cast<size_t>(c)] != 0)
          s += l[static_cast<size_t>(v)] * Rational(phi[static_cast<size_t>(v)][static_cast<size_t>(c)]);
      r.push_back(s);
    }
    return r;
  };
  for (long t = 1; t <= budget; ++t) {
    std::vector<std::vector<long>> phi(static_cast<size_t>(f.n), std::vector<long>(static_cast<size_t>(f.m)));
    for (auto& row : phi)
      for (auto& x : row) x = dist(rng);
    std::vector<std::vector<LinearForm>> red;
    bool ok = true;
    for (const auto& pl : f.factors) {
      std::vector<LinearForm> rp;
      for (const auto& l : pl) rp.push_back(substitute(l, phi));
      if (rank_of(rp) < f.m) {
        ok = false;
        break;
      }
      red.push_back(rp);
    }
    if (!ok) continue;
    const auto& li = red[static_cast<size_t>(out.place_i)][static_cast<size_t>(out.factor_i)];
    for (const auto& l : red[static_cast<size_t>(out.place_j)])
      if (forms_proportional(li, l)) ok = false;
    if (!ok) continue;
    out.form = make_form(f.field, red, f.alpha);
    out.phi = phi;
    out.candidates_tried = t;
    return out;
  }
  fail(ErrorKind::SearchExhausted, "no admissible substitution among " + std::to_string(budget) + " candidates");
}

std::vector<FieldElement> point_vector(const NumberField& k, int n, const std::vector<long>& coeffs) {
  const int deg = k.degree();
  if (static_cast<int>(coeffs.size()) != n * deg) fail(ErrorKind::ArityMismatch, "point has the wrong number of coefficients");
  std::vector<FieldElement> z;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c(static_cast<size_t>(deg));
    for (int d = 0; d < deg; ++d) c[static_cast<size_t>(d)] = Rational(coeffs[static_cast<size_t>(i * deg + d)]);
    z.push_back(k.from_coeffs(c));
  }
  return z;
}

FormScan scan_values(const DecomposableForm& f, long H, const ScanOptions& opt) {
  const int dim = f.n * f.field.degree();
  if (H < 0) fail(ErrorKind::Config, "height must be >= 0");
  if (box_count(H, dim) - 1 > static_cast<long double>(opt.max_points))
    fail(ErrorKind::CapExceeded, "box of height " + std::to_string(H) + " exceeds " + std::to_string(opt.max_points) + " points");
  FormScan s;
  s.height = H;
  s.points = box_points(H, dim);
  evaluate(f, s, opt);
  return s;
}

FormScan sample_values(const DecomposableForm& f, long H, long count, std::uint64_t seed, const ScanOptions& opt) {
  const int dim = f.n * f.field.degree();
  if (H < 1) fail(ErrorKind::Config, "height must be >= 1");
  if (static_cast<long double>(count) > (box_count(H, dim) - 1) / 2)
    fail(ErrorKind::CapExceeded, "sample too large for the box; scan it instead");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-H, H);
  std::set<std::vector<long>> seen;
  while (static_cast<long>(seen.size()) < count) {
    std::vector<long> c(static_cast<size_t>(dim));
    for (auto& x : c) x = dist(rng);
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) seen.insert(c);
  }
  FormScan s;
  s.height = H;
  s.sampled = true;
  s.points.assign(seen.begin(), seen.end());
  evaluate(f, s, opt);
  return s;
}

Window default_window(const DecomposableForm& f) { return Window(static_cast<size_t>(f.places()), {-5.0, 5.0}); }

FormScan scan_window(const DecomposableForm& f, long H, const Window& w, const ScanOptions& opt) {
  if (static_cast<int>(w.size()) != f.places()) fail(ErrorKind::ArityMismatch, "window needs one range per place");
  for (const auto& [lo, hi] : w)
    if (!(lo < hi)) fail(ErrorKind::Config, "empty window range");
  NumericForm nf(f);
  const int deg = f.field.degree();
  const bool fast = f.n == 2 && f.field.r_complex() == 0;
  FormScan s;
  s.height = H;
  if (!fast) {
    ScanOptions o = opt;
    o.exact = false;
    FormScan all = scan_values(f, H, o);
    for (size_t i = 0; i < all.size(); ++i)
      if (in_window(all.images[i], nf.real, w)) {
        s.points.push_back(all.points[i]);
        s.images.push_back(all.images[i]);
        s.degenerate.push_back(all.degenerate[i]);
      }
    if (opt.exact) fill_exact(f, s, opt.threads);
    return s;
  }
  const int r = f.places();
  // first coordinate: all points of the height-H box in Z^deg (zero included)
  std::vector<std::vector<long>> firsts = box_points(H, deg);
  firsts.push_back(std::vector<long>(static_cast<size_t>(deg), 0));
  std::sort(firsts.begin(), firsts.end());
  std::vector<std::vector<double>> V(static_cast<size_t>(r), std::vector<double>(static_cast<size_t>(deg)));
  std::vector<double> ymax(static_cast<size_t>(r));
  for (int v = 0; v < r; ++v) {
    double acc = 0;
    for (int k = 0; k < deg; ++k) {
      V[static_cast<size_t>(v)][static_cast<size_t>(k)] = nf.theta_pow[static_cast<size_t>(v)][static_cast<size_t>(k)].real();
      acc += std::fabs(V[static_cast<size_t>(v)][static_cast<size_t>(k)]);
    }
    ymax[static_cast<size_t>(v)] = H * acc * (1 + 1e-12);
  }
  // inverse Vandermonde (rows: coefficient index) for bounding boxes
  std::vector<std::vector<double>> Vinv(static_cast<size_t>(deg), std::vector<double>(static_cast<size_t>(r)));
  {
    // Gauss-Jordan in doubles; r == deg for totally real fields
    std::vector<std::vector<double>> a = V;
    std::vector<std::vector<double>> inv(static_cast<size_t>(r), std::vector<double>(static_cast<size_t>(r), 0.0));
    for (int i = 0; i < r; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int c = 0; c < r; ++c) {
      int p = c;
      for (int i = c + 1; i < r; ++i)
        if (std::fabs(a[static_cast<size_t>(i)][static_cast<size_t>(c)]) > std::fabs(a[static_cast<size_t>(p)][static_cast<size_t>(c)])) p = i;
      std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(p)]);
      std::swap(inv[static_cast<size_t>(c)], inv[static_cast<size_t>(p)]);
      double d = a[static_cast<size_t>(c)][static_cast<size_t>(c)];
      for (int j = 0; j < r; ++j) {
        a[static_cast<size_t>(c)][static_cast<size_t>(j)] /= d;
        inv[static_cast<size_t>(c)][static_cast<size_t>(j)] /= d;
      }
      for (int i = 0; i < r; ++i) {
        if (i == c) continue;
        double m = a[static_cast<size_t>(i)][static_cast<size_t>(c)];
        for (int j = 0; j < r; ++j) {
          a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= m * a[static_cast<size_t>(c)][static_cast<size_t>(j)];
          inv[static_cast<size_t>(i)][static_cast<size_t>(j)] -= m * inv[static_cast<size_t>(c)][static_cast<size_t>(j)];
        }
      }
    }
    Vinv = inv;
  }
  std::vector<std::vector<std::vector<long>>> found(firsts.size());
  parallel_for(firsts.size(), opt.threads, [&](size_t idx) {
    const auto& c1 = firsts[idx];
    std::vector<std::vector<std::pair<double, double>>> ranges(static_cast<size_t>(r));
    for (int v = 0; v < r; ++v) {
      double x = 0;
      for (int k = 0; k < deg; ++k) x += static_cast<double>(c1[static_cast<size_t>(k)]) * V[static_cast<size_t>(v)][static_cast<size_t>(k)];
      const auto& cf = nf.coeff[static_cast<size_t>(v)];
      double al = nf.alpha[static_cast<size_t>(v)];
      double a = 0, b = 0, c = 0;
      if (f.m == 1) {
        b = al * cf[0][1].real();
        c = al * cf[0][0].real() * x;
      } else {
        double a1 = cf[0][0].real(), b1 = cf[0][1].real(), a2 = cf[1][0].real(), b2 = cf[1][1].real();
        a = al * b1 * b2;
        b = al * (a1 * b2 + a2 * b1) * x;
        c = al * a1 * a2 * x * x;
      }
      const auto& [lo, hi] = w[static_cast<size_t>(v)];
      double pad = 1e-9 * (1 + std::max(std::fabs(lo), std::fabs(hi)));
      auto iv = quadratic_range(a, b, c, lo - pad, hi + pad, -ymax[static_cast<size_t>(v)], ymax[static_cast<size_t>(v)]);
      if (iv.empty()) return;
      for (auto& [l, h] : iv) {
        double m = 1e-9 * (1 + std::fabs(l) + std::fabs(h));
        l -= m;
        h += m;
      }
      ranges[static_cast<size_t>(v)] = iv;
    }
    std::vector<std::vector<long>> local;
    std::vector<size_t> pick(static_cast<size_t>(r), 0);
    std::vector<long> c2(static_cast<size_t>(deg));
    for (;;) {
      std::vector<double> lo(static_cast<size_t>(r)), hi(static_cast<size_t>(r));
      for (int v = 0; v < r; ++v) std::tie(lo[static_cast<size_t>(v)], hi[static_cast<size_t>(v)]) = ranges[static_cast<size_t>(v)][pick[static_cast<size_t>(v)]];
      std::vector<long> cmin(static_cast<size_t>(deg)), cmax(static_cast<size_t>(deg));
      bool empty = false;
      for (int k = 0; k < deg; ++k) {
        double mn = 0, mx = 0;
        for (int v = 0; v < r; ++v) {
          double q = Vinv[static_cast<size_t>(k)][static_cast<size_t>(v)];
          mn += q > 0 ? q * lo[static_cast<size_t>(v)] : q * hi[static_cast<size_t>(v)];
          mx += q > 0 ? q * hi[static_cast<size_t>(v)] : q * lo[static_cast<size_t>(v)];
        }
        cmin[static_cast<size_t>(k)] = std::max(-H, static_cast<long>(std::ceil(mn - 1e-9)));
        cmax[static_cast<size_t>(k)] = std::min(H, static_cast<long>(std::floor(mx + 1e-9)));
        if (cmin[static_cast<size_t>(k)] > cmax[static_cast<size_t>(k)]) empty = true;
      }
      if (!empty) {
        std::function<void(int)> rec = [&](int k) {
          if (k == deg - 1) {
            double lb = static_cast<double>(cmin[static_cast<size_t>(k)]), ub = static_cast<double>(cmax[static_cast<size_t>(k)]);
            for (int v = 0; v < r; ++v) {
              double part = 0;
              for (int t = 0; t < k; ++t) part += static_cast<double>(c2[static_cast<size_t>(t)]) * V[static_cast<size_t>(v)][static_cast<size_t>(t)];
              double co = V[static_cast<size_t>(v)][static_cast<size_t>(k)];
              double l = lo[static_cast<size_t>(v)] - part, h = hi[static_cast<size_t>(v)] - part;
              if (co == 0) {
                if (l > 0 || h < 0) return;
                continue;
              }
              double a = l / co, b = h / co;
              if (a > b) std::swap(a, b);
              lb = std::max(lb, std::ceil(a - 1e-9));
              ub = std::min(ub, std::floor(b + 1e-9));
            }
            for (long x = static_cast<long>(lb); x <= static_cast<long>(ub); ++x) {
              c2[static_cast<size_t>(k)] = x;
              std::vector<long> pt(c1);
              pt.insert(pt.end(), c2.begin(), c2.end());
              if (std::all_of(pt.begin(), pt.end(), [](long y) { return y == 0; })) continue;
              bool small = false;
              if (in_window(nf.eval(pt, small), nf.real, w)) local.push_back(pt);
            }
            return;
          }
          for (long x = cmin[static_cast<size_t>(k)]; x <= cmax[static_cast<size_t>(k)]; ++x) {
            c2[static_cast<size_t>(k)] = x;
            rec(k + 1);
          }
        };
        rec(0);
      }
      int v = 0;
      while (v < r && ++pick[static_cast<size_t>(v)] == ranges[static_cast<size_t>(v)].size()) pick[static_cast<size_t>(v++)] = 0;
      if (v == r) break;
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    found[idx] = std::move(local);
  });
  for (auto& fl : found)
    for (auto& p : fl) s.points.push_back(std::move(p));
  ScanOptions o = opt;
  evaluate(f, s, o);
  return s;
}

DensityReport density_report(const DecomposableForm& f, const FormScan& scan, const Window& w, double eps) {
  if (static_cast<int>(w.size()) != f.places()) fail(ErrorKind::ArityMismatch, "window needs one range per place");
  if (!(eps > 0)) fail(ErrorKind::Config, "eps must be positive");
  const auto& pl = f.field.places();
  std::vector<long> cells;
  long double total = 1;
  for (const auto& [lo, hi] : w) {
    if (!(lo < hi)) fail(ErrorKind::Config, "empty window range");
    long c = static_cast<long>(std::ceil((hi - lo) / eps - 1e-9));
    cells.push_back(std::max(1L, c));
    total *= static_cast<long double>(cells.back());
  }
  if (total > 5e7L) fail(ErrorKind::CapExceeded, "too many cells");
  DensityReport rep;
  rep.cells_total = static_cast<long>(total);
  std::vector<std::uint32_t> count(static_cast<size_t>(rep.cells_total), 0);
  for (size_t i = 0; i < scan.size(); ++i) {
    if (scan.degenerate[i]) continue;
    long idx = 0;
    bool inside = true;
    for (size_t v = 0; v < w.size(); ++v) {
      double x = window_coord(scan.images[i][v], pl[v].real);
      if (x < w[v].first || x > w[v].second) {
        inside = false;
        break;
      }
      long c = std::min(cells[v] - 1, static_cast<long>(std::floor((x - w[v].first) / eps)));
      idx = idx * cells[v] + c;
    }
    if (!inside) continue;
    ++rep.points_in_window;
    ++count[static_cast<size_t>(idx)];
  }
  rep.histogram.assign(11, 0);
  for (auto c : count) {
    if (c > 0) ++rep.cells_hit;
    ++rep.histogram[std::min<size_t>(c, 10)];
  }
  rep.coverage = static_cast<double>(rep.cells_hit) / static_cast<double>(rep.cells_total);
  return rep;
}

namespace {

SpectrumReport finish_spectrum(std::vector<double> vals, long H, double bound) {
  SpectrumReport rep;
  rep.height = H;
  rep.bound = bound;
  rep.points = static_cast<long>(vals.size());
  std::sort(vals.begin(), vals.end());
  for (double x : vals)
    if (rep.values.empty() || x - rep.values.back() > 1e-10 * std::max(1.0, x)) rep.values.push_back(x);
  if (!rep.values.empty()) rep.minimum = rep.values.front();
  if (rep.values.size() > 1) {
    rep.min_spacing = rep.values[1] - rep.values[0];
    for (size_t i = 2; i < rep.values.size(); ++i) rep.min_spacing = std::min(rep.min_spacing, rep.values[i] - rep.values[i - 1]);
  }
  return rep;
}

double norm_product(const std::vector<cd>& img, const std::vector<bool>& real) {
  double p = 1;
  for (size_t v = 0; v < img.size(); ++v) p *= real[v] ? std::abs(img[v]) : std::norm(img[v]);
  return p;
}

}  // namespace

SpectrumReport two_place_spectrum(const DecomposableForm& f, const FormScan& scan, double bound) {
  if (f.places() != 2) fail(ErrorKind::WrongPlaceCount, "spectrum needs exactly two places");
  std::vector<bool> real;
  for (const auto& p : f.field.places()) real.push_back(p.real);
  std::vector<double> vals;
  for (size_t i = 0; i < scan.size(); ++i) {
    if (scan.degenerate[i]) continue;
    double p = norm_product(scan.images[i], real);
    if (p > 0 && p <= bound) vals.push_back(p);
  }
  return finish_spectrum(std::move(vals), scan.height, bound);
}

SpectrumReport two_place_spectrum(const DecomposableForm& f, long H, double bound, unsigned threads) {
  if (f.places() != 2) fail(ErrorKind::WrongPlaceCount, "spectrum needs exactly two places");
  NumericForm nf(f);
  const int dim = f.n * f.field.degree();
  if (box_count(H, dim) > 1e10L) fail(ErrorKind::CapExceeded, "box too large for a streaming scan");
  // split on the last coordinate; each slice runs an odometer over the rest
  const long slices = 2 * H + 1;
  std::vector<std::vector<double>> parts(static_cast<size_t>(slices));
  parallel_for(static_cast<size_t>(slices), threads, [&](size_t si) {
    std::vector<long> c(static_cast<size_t>(dim), -H);
    c[static_cast<size_t>(dim - 1)] = -H + static_cast<long>(si);
    auto& out = parts[si];
    for (;;) {
      if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
        bool small = false;
        auto img = nf.eval(c, small);
        if (!(small && exactly_degenerate(f, c))) {
          double p = norm_product(img, nf.real);
          if (p > 0 && p <= bound) out.push_back(p);
        }
      }
      int i = 0;
      while (i < dim - 1 && c[static_cast<size_t>(i)] == H) c[static_cast<size_t>(i++)] = -H;
      if (i == dim - 1) break;
      ++c[static_cast<size_t>(i)];
    }
  });
  std::vector<double> vals;
  for (auto& p : parts) vals.insert(vals.end(), p.begin(), p.end());
  return finish_spectrum(std::move(vals), H, bound);
}

namespace {

Rational rational_sqrt(const Rational& q) {
  Integer n = q.get_num(), d = q.get_den(), sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  if (sn * sn != n || sd * sd != d) fail(ErrorKind::InvariantViolation, "norm of d is not a square");
  return Rational(sn, sd);
}

}  // namespace

CmCheckReport cm_obstruction_check(const DecomposableForm& f, const std::vector<std::vector<long>>& points, unsigned threads) {
  const NumberField& k = f.field;
  auto cm = k.cm();
  if (!cm) fail(ErrorKind::NotCm, k.cm_problem().empty() ? "field has no CM declaration" : k.cm_problem());
  if (f.n != 2 || f.m != 2) fail(ErrorKind::ArityMismatch, "CM check needs a binary form with two factors");
  for (const auto& pl : f.factors)
    for (const auto& l : pl)
      for (const auto& c : l)
        if (!in_subfield(*cm, c)) fail(ErrorKind::CoefficientsNotInF, "coefficient " + c.str() + " is not in F");
  CmCheckReport rep;
  rep.r = k.r();
  rep.l = cm->index_l;
  // normalize each coefficient matrix to det 1 over F
  std::vector<std::vector<LinearForm>> h = f.factors;
  for (auto& pl : h) {
    FieldElement det = pl[0][0] * pl[1][1] - pl[0][1] * pl[1][0];
    rep.normalized.push_back(!det.is_one());
    if (!det.is_one()) {
      FieldElement inv = det.inverse();
      for (auto& c : pl[0]) c = c * inv;
    }
  }
  DecomposableForm g = make_form(k, h, f.alpha);
  Rational lpow = 1;
  for (int i = 0; i < 4 * rep.r; ++i) lpow *= Rational(rep.l);
  const Rational sqrt_nd = abs(rational_sqrt(field_norm(cm->d)));
  rep.C = sqrt_nd / lpow;
  const FieldElement& s = cm->relative_gen;
  const FieldElement s_inv = s.inverse();
  const auto& places = k.places();
  const mpfr_prec_t prec = kDefaultPrecision;
  rep.records.resize(points.size());
  std::vector<char> bad(points.size(), 0);
  parallel_for(points.size(), threads, [&](size_t pi) {
    CmPointRecord& rec = rep.records[pi];
    rec.point = points[pi];
    auto z = point_vector(k, 2, points[pi]);
    if (z[0].is_zero() && z[1].is_zero()) return;
    std::vector<FieldElement> gam, del;
    for (const auto& zi : z) {
      FieldElement rz = apply_rho(*cm, zi);
      gam.push_back((zi + rz) * Rational(1, 2));
      del.push_back((zi - rz) * Rational(1, 2) * s_inv);
      if (!in_subfield(*cm, gam.back()) || !in_subfield(*cm, del.back()))
        fail(ErrorKind::InvariantViolation, "split of z left F");
    }
    FieldElement det = gam[0] * del[1] - gam[1] * del[0];
    if (!det.is_zero()) {
      rec.independent = true;
      rec.norm_product = field_norm(det);
      Rational scaled = rec.norm_product * lpow;
      rec.integral = scaled.get_den() == 1;
      Interval prod(1, prec);
      rec.sine_ok = true;
      for (int j = 0; j < rep.r; ++j) {
        const auto& pl = places[static_cast<size_t>(j)];
        const auto& fac = g.factors[static_cast<size_t>(j)];
        FieldElement w1 = eval_linear(fac[0], z), w2 = eval_linear(fac[1], z);
        ComplexInterval e1 = embed(w1, pl), e2 = embed(w2, pl);
        Interval fz = norm2(embed(w1 * w2, pl));
        prod *= fz;
        FieldElement deth = eval_linear(fac[0], gam) * eval_linear(fac[1], del) - eval_linear(fac[1], gam) * eval_linear(fac[0], del);
        Interval lhs = norm2(embed(deth, pl)) * embed(cm->d, pl).re;
        // phi_1 - phi_2 is the argument of w1 conj(w2); flip by pi away from the branch cut
        ComplexInterval q = e1 * conj(e2);
        if (q.re.negative()) q = ComplexInterval(-q.re, -q.im);
        Interval sn = sin(arg(q));
        Interval resid = lhs - fz * sqr(sn);
        double width = resid.width_d();
        rec.sine_width = std::max(rec.sine_width, width);
        if (!resid.contains_zero() || !(width < 1e-10)) rec.sine_ok = false;
      }
      rec.value_product = prod;
      Interval rhs(sqrt_nd * rec.norm_product, prec);
      rec.inequality = !prod.certainly_less(rhs);
      if (!rec.integral || !rec.inequality || !rec.sine_ok) bad[pi] = 1;
    } else {
      FieldElement lam;
      std::vector<FieldElement> base;
      size_t nz = gam[0].is_zero() ? 1 : 0;
      if (!gam[nz].is_zero()) {
        FieldElement a = del[nz] / gam[nz];
        rec.ray_a = a;
        lam = k.one() + a * s;
        base = gam;
      } else {
        rec.degenerate_ray = true;
        lam = s;
        base = del;
      }
      FieldElement l2 = lam * lam;
      for (int j = 0; j < rep.r; ++j)
        if (g.value(j, z) != l2 * g.value(j, base)) bad[pi] = 1;
    }
  });
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& rec = rep.records[i];
    if (rec.independent) {
      ++rep.independent;
      rep.max_sine_width = std::max(rep.max_sine_width, rec.sine_width);
    } else if (!rec.point.empty()) {
      ++rep.rays;
    }
    if (bad[i]) rep.violations.push_back(i);
  }
  return rep;
}

}  // namespace ldo
