#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldo/interval.hpp"
#include "ldo/rational.hpp"

namespace ldo {

// Dense univariate polynomial over Q, coefficients low degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly monomial(const Rational& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool has_integer_coeffs() const;

  Poly derivative() const;
  Poly monic() const;
  Rational eval(const Rational& x) const;
  Interval eval(const Interval& x) const;
  ComplexInterval eval(const ComplexInterval& x) const;
  BigComplex eval(const BigComplex& x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Rational& s);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(const char* var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
// s*a + t*b = g (monic gcd)
void extended_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);

// Res(a, b) = lc(a)^deg(b) * prod b(alpha) over roots alpha of a; exact determinant of the Sylvester matrix.
Rational resultant(const Poly& a, const Poly& b);

std::vector<Rational> rational_roots(const Poly& p);
bool is_squarefree(const Poly& p);

struct IrreducibilityResult {
  bool irreducible = false;
  std::optional<Poly> factor;  // a proper monic factor when reducible
  std::string method;
};
// Monic integer polynomials of degree <= 8.
IrreducibilityResult check_irreducible(const Poly& p);

struct RootEnclosure {
  bool real = false;
  ComplexInterval box;  // imaginary part is exactly [0,0] for real roots
  BigComplex center;
};

struct RootIsolation {
  mpfr_prec_t precision = kDefaultPrecision;
  std::vector<RootEnclosure> real;           // descending
  std::vector<RootEnclosure> complex_upper;  // Im > 0, descending real part
  // all deg roots (conjugates expanded), for recombination searches
  std::vector<ComplexInterval> all() const;
};

// Certified isolation of all complex roots of a squarefree polynomial.
RootIsolation isolate_roots(const Poly& p, mpfr_prec_t prec);

}  // namespace ldo
