#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldo {

// Cheap double interval for bulk scans. Each operation is evaluated in round-to-nearest
// and widened by one ulp per side, which dominates the rounding error.
struct DInterval {
  double lo = 0.0, hi = 0.0;

  DInterval() = default;
  DInterval(double l, double h) : lo(l), hi(h) {}
  static DInterval point(double v) { return {v, v}; }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
};

namespace detail {
inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace detail

inline DInterval operator+(DInterval a, DInterval b) {
  return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
}
inline DInterval operator-(DInterval a, DInterval b) {
  return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)};
}
inline DInterval operator-(DInterval a) { return {-a.hi, -a.lo}; }
inline DInterval operator*(DInterval a, DInterval b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {detail::down(std::min({p1, p2, p3, p4})), detail::up(std::max({p1, p2, p3, p4}))};
}
inline DInterval operator*(DInterval a, double s) { return a * DInterval::point(s); }
inline DInterval dabs(DInterval a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}
inline DInterval dsqr(DInterval a) {
  DInterval m = dabs(a);
  return {detail::down(m.lo * m.lo), detail::up(m.hi * m.hi)};
}

struct DComplexInterval {
  DInterval re, im;
};
inline DComplexInterval operator+(const DComplexInterval& a, const DComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline DComplexInterval operator*(const DComplexInterval& a, const DComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DComplexInterval operator*(const DComplexInterval& a, double s) { return {a.re * s, a.im * s}; }
inline DInterval dnorm2(const DComplexInterval& a) { return dsqr(a.re) + dsqr(a.im); }

}  // namespace ldo
