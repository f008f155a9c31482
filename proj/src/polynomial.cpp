#include "ldo/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

#include "ldo/errors.hpp"
#include "ldo/qlinalg.hpp"

namespace ldo {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& c, int deg) {
  std::vector<Rational> v(static_cast<size_t>(deg) + 1);
  v[static_cast<size_t>(deg)] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

bool Poly::has_integer_coeffs() const {
  for (const auto& q : c_)
    if (q.get_den() != 1) return false;
  return true;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading();
  return *this * inv;
}

Rational Poly::eval(const Rational& x) const {
  Rational r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Interval Poly::eval(const Interval& x) const {
  Interval r(0L, x.prec());
  for (size_t i = c_.size(); i-- > 0;) r = r * x + Interval(c_[i], x.prec());
  return r;
}

ComplexInterval Poly::eval(const ComplexInterval& x) const {
  mpfr_prec_t p = x.prec();
  ComplexInterval r(p);
  for (size_t i = c_.size(); i-- > 0;) {
    r = r * x;
    r.re = r.re + Interval(c_[i], p);
  }
  return r;
}

BigComplex Poly::eval(const BigComplex& x) const {
  mpfr_prec_t p = x.re.prec();
  BigComplex r(p);
  for (size_t i = c_.size(); i-- > 0;) {
    r = r * x;
    r.re = r.re + BigFloat(c_[i], p);
  }
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}
Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& q : r.c_) q = -q;
  return r;
}
Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}
Poly operator*(const Poly& a, const Rational& s) {
  if (s == 0) return Poly();
  Poly r = a;
  for (auto& q : r.c_) q *= s;
  return r;
}

std::string Poly::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (a != 1 || i == 0) os << format_rational(a);
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> q(static_cast<size_t>(a.degree() - db) + 1);
  Rational inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = r[static_cast<size_t>(k)] * inv;
    q[static_cast<size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k - db + j)] -= c * b.coeff(j);
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void extended_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = Poly();
    t = Poly();
    return;
  }
  Rational inv = 1 / r0.leading();
  g = r0 * inv;
  s = s0 * inv;
  t = t0 * inv;
}

Rational resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return 1;
  if (n == 0) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.leading().get_num_mpz_t(), static_cast<unsigned long>(m));
    mpz_pow_ui(r.get_den_mpz_t(), b.leading().get_den_mpz_t(), static_cast<unsigned long>(m));
    r.canonicalize();
    return r;
  }
  if (m == 0) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), a.leading().get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(r.get_den_mpz_t(), a.leading().get_den_mpz_t(), static_cast<unsigned long>(n));
    r.canonicalize();
    return r;
  }
  size_t sz = static_cast<size_t>(m + n);
  QMatrix s(sz, std::vector<Rational>(sz));
  // rows 0..n-1 hold shifted copies of a, rows n..n+m-1 shifted copies of b (highest degree first)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = b.coeff(n - j);
  return det(s);
}

std::vector<Rational> rational_roots(const Poly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  // integer multiple with coprime integer coefficients
  Integer den = common_denominator(p.coeffs());
  std::vector<Integer> z;
  for (const auto& c : p.coeffs()) {
    Rational t = c * den;
    z.push_back(t.get_num());
  }
  size_t shift = 0;
  while (z[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  Integer a0 = abs(z[shift]), an = abs(z.back());
  auto divisors = [](Integer v) {
    std::vector<Integer> d;
    if (v > Integer(1000000000)) {
      fail(ErrorKind::TooLarge, "rational root test coefficient too large");
    }
    long x = v.get_si();
    for (long k = 1; k * k <= x; ++k)
      if (x % k == 0) {
        d.emplace_back(k);
        if (k != x / k) d.emplace_back(x / k);
      }
    return d;
  };
  std::set<Rational> seen;
  for (const auto& num : divisors(a0))
    for (const auto& dd : divisors(an))
      for (int sgn : {1, -1}) {
        Rational cand(num * sgn, dd);
        cand.canonicalize();
        if (seen.count(cand)) continue;
        seen.insert(cand);
        if (p.eval(cand) == 0) roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_squarefree(const Poly& p) {
  if (p.degree() <= 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

// ---------- arithmetic mod a small prime ----------
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

ModPoly mmod(ModPoly a, const ModPoly& b, u64 p) {
  mtrim(a);
  int db = static_cast<int>(b.size()) - 1;
  u64 inv = invmod(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    u64 c = mulmod(a.back(), inv, p);
    for (int j = 0; j <= db; ++j) {
      size_t idx = static_cast<size_t>(da - db + j);
      a[idx] = (a[idx] + p - mulmod(c, b[static_cast<size_t>(j)], p)) % p;
    }
    mtrim(a);
  }
  return a;
}
ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  mtrim(c);
  return c;
}
ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}
ModPoly mderiv(const ModPoly& a, u64 p) {
  ModPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
  mtrim(d);
  return d;
}

// degrees of irreducible factors of a squarefree monic polynomial mod p (distinct-degree factorization)
std::vector<int> ddf_degrees(ModPoly f, u64 p) {
  std::vector<int> degs;
  ModPoly h{0, 1};
  int i = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
    ++i;
    // h = x^(p^i) mod f
    ModPoly hp{1};
    ModPoly base = mmod(h, f, p);
    u64 e = p;
    while (e) {
      if (e & 1) hp = mmod(mmul(hp, base, p), f, p);
      base = mmod(mmul(base, base, p), f, p);
      e >>= 1;
    }
    h = hp;
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    mtrim(hx);
    ModPoly g = mgcd(f, hx, p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) degs.push_back(i);
      // f /= g
      ModPoly q;
      ModPoly r = f;
      int df = static_cast<int>(f.size()) - 1;
      q.assign(static_cast<size_t>(df - dg) + 1, 0);
      for (int k = df; k >= dg; --k) {
        u64 c = r[static_cast<size_t>(k)];
        q[static_cast<size_t>(k - dg)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dg; ++j) {
          size_t idx = static_cast<size_t>(k - dg + j);
          r[idx] = (r[idx] + p - mulmod(c, g[static_cast<size_t>(j)], p)) % p;
        }
      }
      mtrim(q);
      f = q;
      h = mmod(h, f, p);
    }
  }
  int rest = static_cast<int>(f.size()) - 1;
  if (rest > 0) degs.push_back(rest);
  return degs;
}

}  // namespace

std::vector<ComplexInterval> RootIsolation::all() const {
  std::vector<ComplexInterval> out;
  for (const auto& r : real) out.push_back(r.box);
  for (const auto& c : complex_upper) {
    out.push_back(c.box);
    out.push_back(conj(c.box));
  }
  return out;
}

IrreducibilityResult check_irreducible(const Poly& p) {
  IrreducibilityResult res;
  int d = p.degree();
  if (d < 1) {
    res.method = "constant";
    return res;
  }
  if (d == 1) {
    res.irreducible = true;
    res.method = "linear";
    return res;
  }
  if (d > 8) fail(ErrorKind::TooLarge, "irreducibility check is limited to degree 8");
  if (!p.is_monic() || !p.has_integer_coeffs())
    fail(ErrorKind::NotMonic, "expected a monic integer polynomial: " + p.str());
  if (!is_squarefree(p)) {
    res.factor = gcd(p, p.derivative());
    res.method = "repeated factor";
    return res;
  }
  auto rr = rational_roots(p);
  if (!rr.empty()) {
    res.factor = Poly({-rr.front(), 1});
    res.method = "rational root";
    return res;
  }
  // possible degrees of a proper factor, narrowed by mod-p patterns
  std::set<int> possible;
  for (int k = 2; k <= d / 2; ++k) possible.insert(k);
  static const u64 primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
  for (u64 pr : primes) {
    if (possible.empty()) break;
    ModPoly f;
    for (const auto& c : p.coeffs()) {
      Integer z = c.get_num() % Integer(static_cast<unsigned long>(pr));
      if (z < 0) z += static_cast<unsigned long>(pr);
      f.push_back(z.get_ui());
    }
    mtrim(f);
    if (static_cast<int>(f.size()) - 1 != d) continue;
    ModPoly g = mgcd(f, mderiv(f, pr), pr);
    if (g.size() > 1) continue;  // not squarefree mod p
    auto degs = ddf_degrees(f, pr);
    std::set<int> sums{0};
    for (int dg : degs) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + dg);
      sums = next;
    }
    std::set<int> keep;
    for (int k : possible)
      if (sums.count(k) || sums.count(d - k)) keep.insert(k);
    possible = keep;
  }
  if (possible.empty()) {
    res.irreducible = true;
    res.method = "rational roots and mod-p degree patterns";
    return res;
  }
  // complete recombination over certified complex roots
  for (mpfr_prec_t prec = 128; prec <= 2048; prec *= 2) {
    RootIsolation iso = isolate_roots(p, prec);
    auto roots = iso.all();
    bool ambiguous = false;
    for (int k : possible) {
      std::vector<int> idx(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
      while (true) {
        // product of (x - root) over the subset
        std::vector<ComplexInterval> c{ComplexInterval(Interval(1, prec), Interval(0L, prec))};
        for (int i : idx) {
          std::vector<ComplexInterval> nc(c.size() + 1, ComplexInterval(prec));
          for (size_t j = 0; j < c.size(); ++j) {
            nc[j + 1] = nc[j + 1] + c[j];
            nc[j] = nc[j] - c[j] * roots[static_cast<size_t>(i)];
          }
          c = std::move(nc);
        }
        bool candidate = true;
        std::vector<Rational> coeffs;
        for (const auto& ci : c) {
          if (!ci.im.contains_zero()) {
            candidate = false;
            break;
          }
          BigFloat lo = ci.re.lower(), hi = ci.re.upper();
          mpfr_ceil(lo.get(), lo.get());
          mpfr_floor(hi.get(), hi.get());
          if (hi < lo) {
            candidate = false;
            break;
          }
          if (!(lo.round() == hi.round())) {
            ambiguous = true;
            candidate = false;
            break;
          }
          coeffs.emplace_back(lo.round());
        }
        if (candidate) {
          Poly q(coeffs);
          if ((p % q).is_zero()) {
            res.factor = q;
            res.method = "root recombination";
            return res;
          }
        }
        // next subset
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == d - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int j = pos + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
      }
    }
    if (!ambiguous) {
      res.irreducible = true;
      res.method = "root recombination";
      return res;
    }
  }
  fail(ErrorKind::PrecisionExhausted, "irreducibility recombination did not resolve");
}

// ---------- root isolation ----------
namespace {

BigComplex polar_start(const BigFloat& radius, double angle, mpfr_prec_t prec) {
  BigFloat s(prec), c(prec), a(angle, prec);
  mpfr_sin_cos(s.get(), c.get(), a.get(), MPFR_RNDN);
  return {radius * c, radius * s};
}

std::vector<BigComplex> durand_kerner(const Poly& monic, mpfr_prec_t prec) {
  int d = monic.degree();
  BigFloat bound(1.0, prec);
  for (int i = 0; i < d; ++i) {
    BigFloat a(abs(monic.coeff(i)), prec);
    if (a + BigFloat(1.0, prec) > bound) bound = a + BigFloat(1.0, prec);
  }
  std::vector<BigComplex> z;
  for (int k = 0; k < d; ++k) z.push_back(polar_start(bound, 6.283185307179586 * k / d + 0.4, prec));
  BigFloat tol = ldexp(BigFloat(1.0, prec), -static_cast<long>(prec) + 6);
  for (int it = 0; it < 20000; ++it) {
    BigFloat maxrel(prec);
    for (int k = 0; k < d; ++k) {
      BigComplex num = monic.eval(z[static_cast<size_t>(k)]);
      BigComplex den(BigFloat(1.0, prec), BigFloat(prec));
      for (int j = 0; j < d; ++j)
        if (j != k) den = den * (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      if (den.re.is_zero() && den.im.is_zero()) {
        z[static_cast<size_t>(k)].re = z[static_cast<size_t>(k)].re + ldexp(BigFloat(1.0, prec), -20);
        maxrel = BigFloat(1.0, prec);
        continue;
      }
      BigComplex step = num / den;
      z[static_cast<size_t>(k)] = z[static_cast<size_t>(k)] - step;
      BigFloat rel = abs(step) / (BigFloat(1.0, prec) + abs(z[static_cast<size_t>(k)]));
      if (rel > maxrel) maxrel = rel;
    }
    if (maxrel <= tol) break;
  }
  return z;
}

ComplexInterval point_box(const BigComplex& z) { return {Interval(z.re), Interval(z.im)}; }

// returns false when the Weierstrass discs fail to certify
bool certify(const Poly& monic, const std::vector<BigComplex>& z, mpfr_prec_t prec, RootIsolation& out) {
  int d = monic.degree();
  std::vector<Interval> rad;
  for (int k = 0; k < d; ++k) {
    ComplexInterval zk = point_box(z[static_cast<size_t>(k)]);
    ComplexInterval num = monic.eval(zk);
    ComplexInterval den(Interval(1, prec), Interval(0L, prec));
    for (int j = 0; j < d; ++j)
      if (j != k) den = den * (zk - point_box(z[static_cast<size_t>(j)]));
    if (norm2(den).contains_zero()) return false;
    Interval w = abs(num / den);
    rad.push_back(Interval(d, prec) * Interval(w.upper()));
    rad.back() = Interval(rad.back().upper());
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Interval dist = abs(point_box(z[static_cast<size_t>(j)]) - point_box(z[static_cast<size_t>(k)]));
      if (!(rad[static_cast<size_t>(j)] + rad[static_cast<size_t>(k)]).certainly_less(dist)) return false;
    }
  out.real.clear();
  out.complex_upper.clear();
  for (int k = 0; k < d; ++k) {
    const BigComplex& c = z[static_cast<size_t>(k)];
    const Interval& r = rad[static_cast<size_t>(k)];
    Interval im_abs = abs(Interval(c.im));
    if (r.certainly_less(im_abs)) {
      if (c.im.sign() > 0) {
        RootEnclosure e;
        e.real = false;
        e.center = c;
        e.box = ComplexInterval(Interval(c.re) + Interval(-r.upper(), r.upper()),
                                Interval(c.im) + Interval(-r.upper(), r.upper()));
        out.complex_upper.push_back(e);
      }
      continue;
    }
    // the conjugate disc must miss every other disc, forcing the root to be its own conjugate
    BigComplex cc(c.re, -c.im);
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      Interval dist = abs(point_box(cc) - point_box(z[static_cast<size_t>(j)]));
      if (!(r + rad[static_cast<size_t>(j)]).certainly_less(dist)) return false;
    }
    RootEnclosure e;
    e.real = true;
    e.center = BigComplex(c.re, BigFloat(prec));
    e.box = ComplexInterval(Interval(c.re) + Interval(-r.upper(), r.upper()), Interval(0L, prec));
    out.real.push_back(e);
  }
  if (out.real.size() + 2 * out.complex_upper.size() != static_cast<size_t>(d)) return false;
  std::sort(out.real.begin(), out.real.end(),
            [](const RootEnclosure& a, const RootEnclosure& b) { return a.center.re > b.center.re; });
  std::sort(out.complex_upper.begin(), out.complex_upper.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
    if (!(a.center.re == b.center.re)) return a.center.re > b.center.re;
    return a.center.im > b.center.im;
  });
  out.precision = prec;
  return true;
}

}  // namespace

RootIsolation isolate_roots(const Poly& p, mpfr_prec_t prec) {
  if (p.degree() < 1) fail(ErrorKind::Config, "root isolation of a constant polynomial");
  Poly monic = p.monic();
  RootIsolation out;
  out.precision = prec;
  if (monic.degree() == 1) {
    RootEnclosure e;
    e.real = true;
    Rational root = -monic.coeff(0);
    e.center = BigComplex(BigFloat(root, prec), BigFloat(prec));
    e.box = ComplexInterval(Interval(root, prec), Interval(0L, prec));
    out.real.push_back(e);
    return out;
  }
  if (!is_squarefree(monic)) fail(ErrorKind::Config, "root isolation needs a squarefree polynomial");
  for (int attempt = 0; attempt < 4; ++attempt) {
    mpfr_prec_t work = (prec << attempt) + 32;
    auto z = durand_kerner(monic, work);
    if (certify(monic, z, work, out)) {
      out.precision = prec;
      return out;
    }
  }
  fail(ErrorKind::PrecisionExhausted, "root discs did not separate for " + p.str());
}

}  // namespace ldo
