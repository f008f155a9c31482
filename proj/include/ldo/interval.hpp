#pragma once

#include <mpfr.h>

#include <string>

#include "ldo/rational.hpp"

namespace ldo {

constexpr mpfr_prec_t kDefaultPrecision = 128;

// Round-to-nearest MPFR float. Used for approximate iterations (root polishing, LLL);
// certified quantities go through Interval instead.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const Rational& q, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // nearest integer, ties away from zero
  Integer round() const;
  std::string str(int digits = 20) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& a);
BigFloat sqrt(const BigFloat& a);
BigFloat ldexp(const BigFloat& a, long e);

struct BigComplex {
  BigFloat re, im;
  explicit BigComplex(mpfr_prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
};
BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigFloat abs(const BigComplex& a);

// Closed interval [lo, hi] with outward (directed) rounding on every operation.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision);
  Interval(long v, mpfr_prec_t prec);
  Interval(const Rational& q, mpfr_prec_t prec);
  explicit Interval(const BigFloat& point);
  Interval(const BigFloat& lo, const BigFloat& hi);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval pi(mpfr_prec_t prec);
  // [lo, hi] from doubles, taken exactly
  static Interval from_doubles(double lo, double hi, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  BigFloat lower() const;
  BigFloat upper() const;
  BigFloat mid() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  double width_d() const;
  BigFloat width() const;

  bool contains(const Rational& q) const;
  bool contains(const Interval& o) const;
  bool contains_zero() const;
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool overlaps(const Interval& o) const;
  // certainly a < b
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  std::string str(int digits = 20) const;

 private:
  mpfr_t lo_, hi_;
  friend Interval sqr(const Interval&);
  friend Interval abs(const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval log(const Interval&);
  friend Interval exp(const Interval&);
  friend Interval sin(const Interval&);
  friend Interval atan2(const Interval&, const Interval&);
  friend Interval hull(const Interval&, const Interval&);
  friend Interval pow(const Interval&, long);
};

Interval sqr(const Interval& a);
Interval abs(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval sin(const Interval& a);
Interval pow(const Interval& a, long e);
// argument of the point (x, y); the box must not contain the origin.
Interval atan2(const Interval& y, const Interval& x);
Interval hull(const Interval& a, const Interval& b);

struct ComplexInterval {
  Interval re, im;
  explicit ComplexInterval(mpfr_prec_t prec = kDefaultPrecision) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return re.prec(); }
};
ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const Interval& b);
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval conj(const ComplexInterval& a);
Interval norm2(const ComplexInterval& a);  // |z|^2
Interval abs(const ComplexInterval& a);
Interval arg(const ComplexInterval& a);

}  // namespace ldo
