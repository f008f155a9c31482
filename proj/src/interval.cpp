#include "ldo/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ldo/errors.hpp"

namespace ldo {

namespace {

mpfr_prec_t pmax(mpfr_prec_t a, mpfr_prec_t b) { return std::max(a, b); }

std::string mpfr_text(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, v);
  return buf.data();
}

}  // namespace

// ---------- BigFloat ----------

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}
BigFloat::BigFloat(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}
BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

Integer BigFloat::round() const {
  Integer z;
  mpfr_t t;
  mpfr_init2(t, prec());
  mpfr_round(t, v_);
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

std::string BigFloat::str(int digits) const { return mpfr_text(v_, digits, MPFR_RNDN); }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a.prec(), b.prec()));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a.prec(), b.prec()));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a.prec(), b.prec()));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a.prec(), b.prec()));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}
BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}
BigFloat ldexp(const BigFloat& a, long e) {
  BigFloat r(a.prec());
  mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
  return r;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
BigFloat abs(const BigComplex& a) {
  BigFloat r(a.re.prec());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

// ---------- Interval ----------

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}
Interval::Interval(long v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}
Interval::Interval(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}
Interval::Interval(const BigFloat& point) {
  mpfr_init2(lo_, point.prec());
  mpfr_init2(hi_, point.prec());
  mpfr_set(lo_, point.get(), MPFR_RNDD);
  mpfr_set(hi_, point.get(), MPFR_RNDU);
}
Interval::Interval(const BigFloat& lo, const BigFloat& hi) {
  mpfr_prec_t p = pmax(lo.prec(), hi.prec());
  mpfr_init2(lo_, p);
  mpfr_init2(hi_, p);
  mpfr_set(lo_, lo.get(), MPFR_RNDD);
  mpfr_set(hi_, hi.get(), MPFR_RNDU);
}
Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}
Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}
Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec());
    mpfr_set_prec(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}
Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}
Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::from_doubles(double lo, double hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

BigFloat Interval::lower() const {
  BigFloat r(prec());
  mpfr_set(r.get(), lo_, MPFR_RNDD);
  return r;
}
BigFloat Interval::upper() const {
  BigFloat r(prec());
  mpfr_set(r.get(), hi_, MPFR_RNDU);
  return r;
}
BigFloat Interval::mid() const {
  BigFloat r(prec() + 1);
  mpfr_add(r.get(), lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
  return r;
}
double Interval::mid_d() const { return mid().to_double(); }
BigFloat Interval::width() const {
  BigFloat r(prec());
  mpfr_sub(r.get(), hi_, lo_, MPFR_RNDU);
  return r;
}
double Interval::width_d() const { return mpfr_get_d(width().get(), MPFR_RNDU); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}
bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}
bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

std::string Interval::str(int digits) const {
  return "[" + mpfr_text(lo_, digits, MPFR_RNDD) + ", " + mpfr_text(hi_, digits, MPFR_RNDU) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}
Interval operator-(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}
Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}
Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = pmax(a.prec(), b.prec());
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}
Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero())
    fail(ErrorKind::PrecisionExhausted, "interval division by an enclosure containing zero");
  mpfr_prec_t p = pmax(a.prec(), b.prec());
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval sqr(const Interval& a) {
  Interval m = abs(a);
  Interval r(a.prec());
  mpfr_sqr(r.lo_, m.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, m.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(a.lo_, a.hi_) > 0)
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  else
    mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.negative()) fail(ErrorKind::PrecisionExhausted, "sqrt of a negative enclosure");
  Interval r(a.prec());
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (!a.positive()) fail(ErrorKind::PrecisionExhausted, "log of an enclosure touching zero");
  Interval r(a.prec());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, long e) {
  if (e < 0) return Interval(1, a.prec()) / pow(a, -e);
  Interval r(1, a.prec());
  Interval b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = sqr(b);
  }
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval sin(const Interval& a) {
  mpfr_prec_t p = a.prec();
  Interval r(p);
  if (mpfr_get_d(a.width().get(), MPFR_RNDU) >= 3.0) {
    mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  mpfr_t s1, s2;
  mpfr_init2(s1, p);
  mpfr_init2(s2, p);
  mpfr_sin(s1, a.lo_, MPFR_RNDD);
  mpfr_sin(s2, a.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, s1, s2, MPFR_RNDD);
  mpfr_sin(s1, a.lo_, MPFR_RNDU);
  mpfr_sin(s2, a.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, s1, s2, MPFR_RNDU);
  mpfr_clear(s1);
  mpfr_clear(s2);
  // critical points pi/2 + k pi inside [lo, hi]: k ranges over (a - pi/2)/pi
  Interval half_pi = Interval::pi(p) / Interval(2, p);
  Interval t = (a - half_pi) / Interval::pi(p);
  BigFloat tl = t.lower(), th = t.upper();
  mpfr_ceil(tl.get(), tl.get());
  mpfr_floor(th.get(), th.get());
  if (!(th < tl)) {
    Integer k0 = tl.round(), k1 = th.round();
    for (Integer k = k0; k <= k1 && k <= k0 + 2; ++k) {
      if (mpz_even_p(k.get_mpz_t()))
        mpfr_set_si(r.hi_, 1, MPFR_RNDU);
      else
        mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    }
  }
  return r;
}

Interval atan2(const Interval& y, const Interval& x) {
  mpfr_prec_t p = pmax(y.prec(), x.prec());
  if (y.contains_zero() && x.contains_zero())
    fail(ErrorKind::PrecisionExhausted, "argument of an enclosure containing the origin");
  bool shifted = y.contains_zero() && x.negative();
  Interval yy = shifted ? -y : y;
  Interval xx = shifted ? -x : x;
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr ys[2] = {yy.lo_, yy.hi_};
  mpfr_srcptr xs[2] = {xx.lo_, xx.hi_};
  bool first = true;
  for (auto a : ys)
    for (auto b : xs) {
      mpfr_atan2(t, a, b, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_atan2(t, a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  // branch shifted by pi; the result then lies in (0, 2 pi)
  if (shifted) r = r + Interval::pi(p);
  return r;
}

// ---------- ComplexInterval ----------

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexInterval operator*(const ComplexInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = norm2(b);
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
ComplexInterval conj(const ComplexInterval& a) { return {a.re, -a.im}; }
Interval norm2(const ComplexInterval& a) { return sqr(a.re) + sqr(a.im); }
Interval abs(const ComplexInterval& a) { return sqrt(norm2(a)); }
Interval arg(const ComplexInterval& a) { return atan2(a.im, a.re); }

}  // namespace ldo
