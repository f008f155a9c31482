#include "ldo/numfield.hpp"

#include <algorithm>
#include <numeric>

#include "ldo/errors.hpp"

namespace ldo {

namespace detail {

struct CmRaw {
  Poly subfield_poly;
  std::vector<Rational> d, relative_gen, rho_theta, eta;
  QMatrix rho;
  Integer index_l;
};

struct FieldData {
  FieldSpec spec;
  int deg = 1;
  // theta^k reduced, for k = deg .. 2 deg - 2
  std::vector<std::vector<Rational>> reduction;
  std::vector<ArchimedeanPlace> places;
  int r_real = 0, r_complex = 0;
  std::vector<std::vector<Rational>> units;
  bool full_units = false;
  std::optional<CmRaw> cm;
  std::string cm_problem;
};

}  // namespace detail

namespace {

const detail::FieldData& data_of(const NumberField& k) {
  if (!k.valid()) fail(ErrorKind::Config, "use of an uninitialized number field");
  return *k.data();
}

void same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) fail(ErrorKind::Config, "elements of different number fields combined");
}

std::vector<Rational> mul_coeffs(const detail::FieldData& d, const std::vector<Rational>& a,
                                 const std::vector<Rational>& b) {
  size_t n = static_cast<size_t>(d.deg);
  std::vector<Rational> prod(2 * n - 1);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<long>(n));
  for (size_t k = n; k < 2 * n - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& red = d.reduction[k - n];
    for (size_t i = 0; i < n; ++i)
      if (red[i] != 0) out[i] += prod[k] * red[i];
  }
  return out;
}

// Gaussian elimination with partial pivoting; returns false when singular to working precision
template <class T, class AbsFn>
bool gauss_solve(std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T>& x, AbsFn absval) {
  size_t n = a.size();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t i = c + 1; i < n; ++i)
      if (absval(a[i][c]) > absval(a[p][c])) p = i;
    if (absval(a[p][c]).is_zero()) return false;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (size_t i = c + 1; i < n; ++i) {
      T f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
      b[i] = b[i] - f * b[c];
    }
  }
  x.assign(n, b[0]);
  for (size_t i = n; i-- > 0;) {
    T s = b[i];
    for (size_t j = i + 1; j < n; ++j) s = s - a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return true;
}

FieldElement horner_in_field(const Poly& p, const FieldElement& x) {
  FieldElement r = x.field().zero();
  for (int i = p.degree(); i >= 0; --i) r = r * x + x.field().from_rational(p.coeff(i));
  return r;
}

// Complex conjugation as a field automorphism, recovered from the roots and verified exactly.
std::optional<std::vector<Rational>> find_conjugation(const NumberField& k) {
  const int n = k.degree();
  const mpfr_prec_t prec = 320;
  RootIsolation iso = isolate_roots(k.min_poly(), prec);
  std::vector<BigComplex> roots;
  for (const auto& c : iso.complex_upper) {
    roots.push_back(c.center);
    roots.push_back(BigComplex(c.center.re, -c.center.im));
  }
  for (const auto& r : iso.real) roots.push_back(r.center);
  std::vector<std::vector<BigComplex>> v(static_cast<size_t>(n));
  std::vector<BigComplex> rhs;
  for (int row = 0; row < n; ++row) {
    BigComplex pw(BigFloat(1.0, prec), BigFloat(prec));
    for (int i = 0; i < n; ++i) {
      v[static_cast<size_t>(row)].push_back(pw);
      pw = pw * roots[static_cast<size_t>(row)];
    }
    const BigComplex& z = roots[static_cast<size_t>(row)];
    rhs.push_back(BigComplex(z.re, -z.im));
  }
  std::vector<BigComplex> sol;
  if (!gauss_solve(v, rhs, sol, [](const BigComplex& z) { return abs(z); })) return std::nullopt;
  std::vector<Rational> coeffs;
  BigFloat tol = ldexp(BigFloat(1.0, prec), -200);
  for (const auto& c : sol) {
    auto q = rational_reconstruct(c.re, Integer("1000000000000"), tol);
    if (!q) return std::nullopt;
    coeffs.push_back(*q);
  }
  FieldElement rt = k.from_coeffs(coeffs);
  if (rt == k.theta()) return std::nullopt;
  if (!horner_in_field(k.min_poly(), rt).is_zero()) return std::nullopt;
  if (horner_in_field(rt.as_poly(), rt) != k.theta()) return std::nullopt;
  // numeric agreement with conjugation at every place
  for (const auto& pl : k.places()) {
    ComplexInterval img = embed(rt, pl);
    ComplexInterval c = conj(pl.root);
    if (!img.re.overlaps(c.re) || !img.im.overlaps(c.im)) return std::nullopt;
  }
  return coeffs;
}

QMatrix automorphism_matrix(const NumberField& k, const FieldElement& image_of_theta) {
  int n = k.degree();
  QMatrix m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  FieldElement pw = k.one();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = pw.coeff(static_cast<size_t>(i));
    pw = pw * image_of_theta;
  }
  return m;
}

void setup_cm(const NumberField& k, detail::FieldData& d) {
  const int n = d.deg;
  const CmSpec* spec = d.spec.cm ? &*d.spec.cm : nullptr;
  detail::CmRaw raw;
  if (spec) {
    if (static_cast<int>(spec->d.size()) != n || static_cast<int>(spec->relative_gen.size()) != n)
      fail(ErrorKind::Config, "cm.d and cm.relative_gen need " + std::to_string(n) + " coefficients");
    raw.subfield_poly = spec->subfield_poly;
    raw.d = spec->d;
    raw.relative_gen = spec->relative_gen;
    FieldElement dd = k.from_coeffs(raw.d), rg = k.from_coeffs(raw.relative_gen);
    if (!(rg * rg + dd).is_zero()) fail(ErrorKind::Config, "cm.relative_gen^2 + cm.d is not zero");
    if (!raw.subfield_poly.is_monic() || !raw.subfield_poly.has_integer_coeffs())
      fail(ErrorKind::Config, "cm.subfield_poly must be monic with integer coefficients");
    if (2 * raw.subfield_poly.degree() != n) {
      d.cm_problem = "[K:F] is not 2";
      return;
    }
  } else {
    if (n != 2 || d.r_real > 0) return;
    // imaginary quadratic: F = Q, explicit square root of the discriminant
    Rational b = d.spec.min_poly.coeff(1), c = d.spec.min_poly.coeff(0);
    raw.subfield_poly = Poly({0, 1});
    if (mpz_even_p(b.get_num_mpz_t())) {
      raw.relative_gen = {b / 2, 1};
      raw.d = {c - b * b / 4, 0};
    } else {
      raw.relative_gen = {b, 2};
      raw.d = {4 * c - b * b, 0};
    }
  }
  if (d.r_real > 0) {
    d.cm_problem = "K has real places";
    return;
  }
  if (!check_irreducible(raw.subfield_poly).irreducible) {
    d.cm_problem = "subfield_poly is reducible";
    return;
  }
  auto rho_theta = find_conjugation(k);
  if (!rho_theta) {
    d.cm_problem = "complex conjugation is not an automorphism of K";
    return;
  }
  raw.rho_theta = *rho_theta;
  raw.rho = automorphism_matrix(k, k.from_coeffs(raw.rho_theta));
  auto apply = [&](const std::vector<Rational>& x) {
    std::vector<Rational> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[static_cast<size_t>(i)] += raw.rho[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    return y;
  };
  if (apply(raw.d) != raw.d) {
    d.cm_problem = "d is not fixed by complex conjugation";
    return;
  }
  RootIsolation fiso = isolate_roots(raw.subfield_poly, 320);
  if (!fiso.complex_upper.empty()) {
    d.cm_problem = "F is not totally real";
    return;
  }
  // fixed field basis
  QMatrix shifted = raw.rho;
  for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i)][static_cast<size_t>(i)] -= 1;
  QMatrix fixed = nullspace(shifted);
  const int f = raw.subfield_poly.degree();
  if (static_cast<int>(fixed.size()) != f) {
    d.cm_problem = "fixed field of conjugation has the wrong degree";
    return;
  }
  // eta: element of the fixed field whose real embeddings are the roots of subfield_poly
  const mpfr_prec_t prec = 320;
  std::vector<int> perm(static_cast<size_t>(f));
  std::iota(perm.begin(), perm.end(), 0);
  auto places = k.compute_places(prec);
  bool found = false;
  do {
    std::vector<std::vector<BigFloat>> a(static_cast<size_t>(f));
    std::vector<BigFloat> rhs;
    for (int v = 0; v < f; ++v) {
      for (int b = 0; b < f; ++b)
        a[static_cast<size_t>(v)].push_back(embed(k.from_coeffs(fixed[static_cast<size_t>(b)]), places[static_cast<size_t>(v)]).re.mid());
      rhs.push_back(fiso.real[static_cast<size_t>(perm[static_cast<size_t>(v)])].center.re);
    }
    std::vector<BigFloat> q;
    if (!gauss_solve(a, rhs, q, [](const BigFloat& x) { return abs(x); })) continue;
    std::vector<Rational> eta(static_cast<size_t>(n));
    bool ok = true;
    for (int b = 0; b < f && ok; ++b) {
      auto qr = rational_reconstruct(q[static_cast<size_t>(b)], Integer("1000000000000"), ldexp(BigFloat(1.0, prec), -200));
      if (!qr) {
        ok = false;
        break;
      }
      for (int i = 0; i < n; ++i) eta[static_cast<size_t>(i)] += *qr * fixed[static_cast<size_t>(b)][static_cast<size_t>(i)];
    }
    if (!ok) continue;
    if (!horner_in_field(raw.subfield_poly, k.from_coeffs(eta)).is_zero()) continue;
    raw.eta = eta;
    found = true;
    break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!found) {
    d.cm_problem = "subfield_poly has no root in the fixed field of conjugation";
    return;
  }
  // l: exponent of Z[theta] / Z[eta][relative_gen]
  FieldElement eta = k.from_coeffs(raw.eta), rg = k.from_coeffs(raw.relative_gen);
  QMatrix basis_t(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  int col = 0;
  FieldElement ep = k.one();
  for (int a = 0; a < f; ++a) {
    FieldElement g = ep;
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < n; ++i) basis_t[static_cast<size_t>(i)][static_cast<size_t>(col)] = g.coeff(static_cast<size_t>(i));
      ++col;
      g = g * rg;
    }
    ep = ep * eta;
  }
  auto inv = inverse(basis_t);
  if (!inv) {
    d.cm_problem = "eta and relative_gen do not generate K";
    return;
  }
  Integer l = 1;
  for (const auto& row : *inv) l = lcm(l, common_denominator(row));
  raw.index_l = l;
  for (const auto& pl : d.places) {
    if (!embed(k.from_coeffs(raw.d), pl).re.positive()) {
      d.cm_problem = "d is not totally positive";
      return;
    }
  }
  d.cm = raw;
}

}  // namespace

// ---------- NumberField ----------

NumberField NumberField::create(const FieldSpec& spec) {
  const Poly& m = spec.min_poly;
  if (m.degree() < 1) fail(ErrorKind::Config, "min_poly must have degree >= 1");
  if (!m.is_monic() || !m.has_integer_coeffs()) fail(ErrorKind::NotMonic, "min_poly " + m.str() + " is not monic over Z");
  if (m.degree() > 8) fail(ErrorKind::TooLarge, "min_poly degree is capped at 8");
  auto irr = check_irreducible(m);
  if (!irr.irreducible)
    fail(ErrorKind::Reducible, m.str() + " has the factor " + (irr.factor ? irr.factor->str() : "?") + " (" + irr.method + ")");
  auto d = std::make_shared<detail::FieldData>();
  d->spec = spec;
  d->deg = m.degree();
  const size_t n = static_cast<size_t>(d->deg);
  // theta^k mod m
  std::vector<Rational> cur(n);
  if (n == 1) {
    cur[0] = -m.coeff(0);
  } else {
    for (size_t i = 0; i < n; ++i) cur[i] = -m.coeff(static_cast<int>(i));
  }
  for (size_t k = 0; k + 1 < n; ++k) {
    d->reduction.push_back(cur);
    // multiply by theta
    std::vector<Rational> next(n);
    Rational top = cur[n - 1];
    for (size_t i = n - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (size_t i = 0; i < n; ++i) next[i] -= top * m.coeff(static_cast<int>(i));
    cur = next;
  }
  NumberField k;
  k.d_ = d;
  d->places = ldo::compute_places(k, kDefaultPrecision);
  for (const auto& p : d->places) (p.real ? d->r_real : d->r_complex)++;

  // units
  for (size_t u = 0; u < spec.units.size(); ++u) {
    if (spec.units[u].size() != n)
      fail(ErrorKind::Config, "unit " + std::to_string(u) + " needs " + std::to_string(n) + " coefficients");
    FieldElement x(k, spec.units[u]);
    if (!x.is_integral()) fail(ErrorKind::UnitVerificationFailed, "unit " + x.str() + " is not in Z[theta]");
    Rational nm = field_norm(x);
    if (nm != 1 && nm != -1)
      fail(ErrorKind::UnitVerificationFailed, "unit " + x.str() + " has norm " + format_rational(nm));
  }
  const int r = d->r_real + d->r_complex;
  if (!spec.units.empty() && static_cast<int>(spec.units.size()) != r - 1)
    fail(ErrorKind::WrongUnitRank, "declared " + std::to_string(spec.units.size()) + " units, expected r - 1 = " + std::to_string(r - 1));
  if (!spec.units.empty()) {
    // regulator: drop the last place
    int k1 = r - 1;
    std::vector<std::vector<Interval>> lg(static_cast<size_t>(k1));
    for (int i = 0; i < k1; ++i)
      for (int j = 0; j < k1; ++j)
        lg[static_cast<size_t>(i)].push_back(log(normalized_abs(FieldElement(k, spec.units[static_cast<size_t>(j)]), d->places[static_cast<size_t>(i)])));
    // interval determinant by cofactor expansion (k1 <= 7)
    std::function<Interval(std::vector<int>, int)> cof = [&](std::vector<int> cols, int row) -> Interval {
      if (cols.empty()) return Interval(1, kDefaultPrecision);
      Interval acc(0L, kDefaultPrecision);
      for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> rest = cols;
        rest.erase(rest.begin() + static_cast<long>(c));
        Interval term = lg[static_cast<size_t>(row)][static_cast<size_t>(cols[c])] * cof(rest, row + 1);
        acc = (c % 2 == 0) ? acc + term : acc - term;
      }
      return acc;
    };
    std::vector<int> cols(static_cast<size_t>(k1));
    std::iota(cols.begin(), cols.end(), 0);
    Interval reg = cof(cols, 0);
    if (reg.contains_zero()) fail(ErrorKind::UnitVerificationFailed, "declared units are multiplicatively dependent");
  }
  d->units = spec.units;
  d->full_units = static_cast<int>(spec.units.size()) == r - 1;
  setup_cm(k, *d);
  return k;
}

NumberField NumberField::rationals() {
  static const NumberField q = [] {
    FieldSpec s;
    s.label = "Q";
    s.min_poly = Poly({0, 1});
    return create(s);
  }();
  return q;
}

int NumberField::degree() const { return data_of(*this).deg; }
const Poly& NumberField::min_poly() const { return data_of(*this).spec.min_poly; }
const std::string& NumberField::label() const { return data_of(*this).spec.label; }
const FieldSpec& NumberField::spec() const { return data_of(*this).spec; }
int NumberField::r_real() const { return data_of(*this).r_real; }
int NumberField::r_complex() const { return data_of(*this).r_complex; }
const std::vector<ArchimedeanPlace>& NumberField::places() const { return data_of(*this).places; }
std::vector<ArchimedeanPlace> NumberField::compute_places(mpfr_prec_t prec) const { return ldo::compute_places(*this, prec); }
bool NumberField::has_full_unit_system() const { return data_of(*this).full_units; }
const std::string& NumberField::cm_problem() const { return data_of(*this).cm_problem; }

std::vector<FieldElement> NumberField::units() const {
  std::vector<FieldElement> out;
  for (const auto& u : data_of(*this).units) out.emplace_back(*this, u);
  return out;
}

std::optional<CmData> NumberField::cm() const {
  const auto& d = data_of(*this);
  if (!d.cm) return std::nullopt;
  CmData c;
  c.subfield_poly = d.cm->subfield_poly;
  c.d = from_coeffs(d.cm->d);
  c.relative_gen = from_coeffs(d.cm->relative_gen);
  c.rho_theta = from_coeffs(d.cm->rho_theta);
  c.rho = d.cm->rho;
  c.eta = from_coeffs(d.cm->eta);
  c.index_l = d.cm->index_l;
  return c;
}

FieldElement NumberField::zero() const { return FieldElement(*this, std::vector<Rational>(static_cast<size_t>(degree()))); }
FieldElement NumberField::one() const { return from_int(1); }
FieldElement NumberField::theta() const {
  std::vector<Rational> c(static_cast<size_t>(degree()));
  if (degree() == 1)
    c[0] = -min_poly().coeff(0);
  else
    c[1] = 1;
  return FieldElement(*this, c);
}
FieldElement NumberField::from_int(long v) const { return from_rational(Rational(v)); }
FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(static_cast<size_t>(degree()));
  c[0] = q;
  return FieldElement(*this, c);
}
FieldElement NumberField::from_coeffs(std::vector<Rational> coeffs) const { return FieldElement(*this, std::move(coeffs)); }

// ---------- FieldElement ----------

FieldElement::FieldElement(NumberField k, std::vector<Rational> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
  size_t n = static_cast<size_t>(k_.degree());
  if (c_.size() > n) {
    // reduce a longer polynomial modulo the minimal polynomial
    Poly r = Poly(c_) % k_.min_poly();
    c_ = r.coeffs();
  }
  c_.resize(n);
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}
bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}
bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}
bool FieldElement::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (k_.degree() == 1) return k_.from_rational(1 / c_[0]);
  Poly g, s, t;
  extended_gcd(as_poly(), k_.min_poly(), g, s, t);
  if (g.degree() != 0) fail(ErrorKind::DivisionByZero, "element is a zero divisor");
  return FieldElement(k_, s.coeffs());
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r = k_.one(), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string FieldElement::str() const { return Poly(c_).str("t"); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  same_field(a, b);
  std::vector<Rational> c = a.c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  FieldElement r;
  r.k_ = a.k_;
  r.c_ = std::move(c);
  return r;
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  same_field(a, b);
  std::vector<Rational> c = a.c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  FieldElement r;
  r.k_ = a.k_;
  r.c_ = std::move(c);
  return r;
}
FieldElement operator-(const FieldElement& a) {
  FieldElement r = a;
  for (auto& q : r.c_) q = -q;
  return r;
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  same_field(a, b);
  FieldElement r;
  r.k_ = a.k_;
  r.c_ = mul_coeffs(*a.k_.data(), a.c_, b.c_);
  return r;
}
FieldElement operator*(const FieldElement& a, const Rational& s) {
  FieldElement r = a;
  for (auto& q : r.c_) q *= s;
  return r;
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
bool operator==(const FieldElement& a, const FieldElement& b) { return a.k_ == b.k_ && a.c_ == b.c_; }

FieldElement elem_add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement elem_mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement elem_inv(const FieldElement& x) { return x.inverse(); }
bool elem_eq(const FieldElement& x, const FieldElement& y) {
  same_field(x, y);
  return x == y;
}

// ---------- places ----------

std::vector<ArchimedeanPlace> compute_places(const NumberField& k, mpfr_prec_t prec) {
  if (prec < 64) fail(ErrorKind::Config, "place precision must be at least 64 bits");
  RootIsolation iso = isolate_roots(k.min_poly(), prec);
  std::vector<ArchimedeanPlace> out;
  int idx = 0;
  for (const auto& r : iso.real) {
    ArchimedeanPlace p;
    p.index = idx++;
    p.real = true;
    p.root = r.box;
    p.working_precision = prec;
    out.push_back(std::move(p));
  }
  for (const auto& c : iso.complex_upper) {
    ArchimedeanPlace p;
    p.index = idx++;
    p.real = false;
    p.root = c.box;
    p.working_precision = prec;
    out.push_back(std::move(p));
  }
  return out;
}

Interval embed_real(const FieldElement& x, const ArchimedeanPlace& v) {
  if (v.real) {
    const Interval& t = v.root.re;
    Interval r(0L, t.prec());
    const auto& c = x.coeffs();
    for (size_t i = c.size(); i-- > 0;) r = r * t + Interval(c[i], t.prec());
    return r;
  }
  return embed(x, v).re;
}

ComplexInterval embed(const FieldElement& x, const ArchimedeanPlace& v) {
  if (v.real) return ComplexInterval(embed_real(x, v), Interval(0L, v.root.prec()));
  mpfr_prec_t p = v.root.prec();
  ComplexInterval r(p);
  const auto& c = x.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    r = r * v.root;
    r.re = r.re + Interval(c[i], p);
  }
  return r;
}

Interval normalized_abs(const FieldElement& x, const ArchimedeanPlace& v) {
  if (v.real) return abs(embed_real(x, v));
  return norm2(embed(x, v));
}

Rational field_norm(const FieldElement& x) {
  if (x.is_zero()) return 0;
  return resultant(x.field().min_poly(), x.as_poly());
}

QMatrix multiplication_matrix(const FieldElement& x) {
  const NumberField& k = x.field();
  size_t n = static_cast<size_t>(k.degree());
  QMatrix m(n, std::vector<Rational>(n));
  FieldElement b = x;
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) m[i][j] = b.coeff(i);
    b = b * k.theta();
  }
  return m;
}

Rational trace(const FieldElement& x) {
  QMatrix m = multiplication_matrix(x);
  Rational t = 0;
  for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// ---------- CM ----------

FieldElement apply_rho(const CmData& cm, const FieldElement& x) {
  size_t n = cm.rho.size();
  std::vector<Rational> y(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (cm.rho[i][j] != 0) y[i] += cm.rho[i][j] * x.coeff(j);
  return x.field().from_coeffs(std::move(y));
}

bool in_subfield(const CmData& cm, const FieldElement& x) { return apply_rho(cm, x) == x; }

bool is_cm(const NumberField& k) {
  if (k.r_real() > 0) return false;
  if (k.spec().cm || k.degree() == 2) return k.cm().has_value();
  fail(ErrorKind::MissingCmStructure, "degree " + std::to_string(k.degree()) + " field without a declared CM structure");
}

std::optional<Rational> rational_reconstruct(const BigFloat& x, const Integer& max_den, const BigFloat& tol) {
  mpfr_prec_t prec = x.prec();
  BigFloat rem = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 200; ++it) {
    BigFloat fl(prec);
    mpfr_floor(fl.get(), rem.get());
    Integer a = fl.round();
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) return std::nullopt;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational cand(p1, q1);
    cand.canonicalize();
    BigFloat err = abs(x - BigFloat(cand, prec));
    if (err <= tol) return cand;
    BigFloat frac = rem - fl;
    if (frac.is_zero()) return std::nullopt;
    rem = BigFloat(1.0, prec) / frac;
  }
  return std::nullopt;
}

}  // namespace ldo
