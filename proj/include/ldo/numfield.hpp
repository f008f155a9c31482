#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldo/interval.hpp"
#include "ldo/polynomial.hpp"
#include "ldo/qlinalg.hpp"
#include "ldo/rational.hpp"

namespace ldo {

class FieldElement;
struct ArchimedeanPlace;
struct CmData;

namespace detail {
struct FieldData;
}

// User-facing CM declaration: K = F(sqrt(-d)).
struct CmSpec {
  Poly subfield_poly;
  std::vector<Rational> d;
  std::vector<Rational> relative_gen;
};

struct FieldSpec {
  std::string label;
  Poly min_poly;
  std::vector<std::vector<Rational>> units;
  std::optional<CmSpec> cm;
};

// K = Q[x]/(m). Cheap handle; copies share the immutable field data.
class NumberField {
 public:
  NumberField() = default;
  // Validates monicity, irreducibility, units and the CM declaration.
  static NumberField create(const FieldSpec& spec);
  static NumberField rationals();

  int degree() const;
  const Poly& min_poly() const;
  const std::string& label() const;
  const FieldSpec& spec() const;

  int r_real() const;
  int r_complex() const;
  int r() const { return r_real() + r_complex(); }
  // places at the default working precision, computed once at creation
  const std::vector<ArchimedeanPlace>& places() const;
  std::vector<ArchimedeanPlace> compute_places(mpfr_prec_t prec) const;

  std::vector<FieldElement> units() const;
  // true when the declared units form a verified system of rank r-1
  bool has_full_unit_system() const;
  // validated CM data, when declared (or derived for imaginary quadratic fields)
  std::optional<CmData> cm() const;
  // reason the declared CM data is unusable; empty when fine
  const std::string& cm_problem() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;
  FieldElement from_int(long v) const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement from_coeffs(std::vector<Rational> coeffs) const;

  bool valid() const { return static_cast<bool>(d_); }
  const detail::FieldData* data() const { return d_.get(); }
  friend bool operator==(const NumberField& a, const NumberField& b) { return a.d_ == b.d_; }
  friend bool operator!=(const NumberField& a, const NumberField& b) { return a.d_ != b.d_; }

 private:
  std::shared_ptr<const detail::FieldData> d_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(NumberField k, std::vector<Rational> coeffs);

  const NumberField& field() const { return k_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& coeff(size_t i) const { return c_[i]; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in Q
  bool is_integral() const;  // lies in Z[theta]
  Poly as_poly() const { return Poly(c_); }
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  std::string str() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const Rational& s);
  friend FieldElement operator-(const FieldElement& a);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  // total order on coefficient vectors, for deterministic containers
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.c_ < b.c_; }

 private:
  NumberField k_;
  std::vector<Rational> c_;
};

// named forms of the ring operations
FieldElement elem_add(const FieldElement& x, const FieldElement& y);
FieldElement elem_mul(const FieldElement& x, const FieldElement& y);
FieldElement elem_inv(const FieldElement& x);
bool elem_eq(const FieldElement& x, const FieldElement& y);

struct ArchimedeanPlace {
  int index = 0;
  bool real = true;
  ComplexInterval root;  // enclosure of sigma_v(theta); imaginary part [0,0] at real places
  mpfr_prec_t working_precision = kDefaultPrecision;
  int exponent() const { return real ? 1 : 2; }
};

std::vector<ArchimedeanPlace> compute_places(const NumberField& k, mpfr_prec_t precision_bits);
ComplexInterval embed(const FieldElement& x, const ArchimedeanPlace& v);
// |sigma_v(x)| at real places, |sigma_v(x)|^2 at complex places
Interval normalized_abs(const FieldElement& x, const ArchimedeanPlace& v);
// real embedding of x, for x fixed by complex conjugation (or any x at a real place)
Interval embed_real(const FieldElement& x, const ArchimedeanPlace& v);
Rational field_norm(const FieldElement& x);
Rational trace(const FieldElement& x);
// matrix of multiplication by x on the power basis (columns = images of basis vectors)
QMatrix multiplication_matrix(const FieldElement& x);

// Complex conjugation data for a declared CM field K = F(sqrt(-d)).
struct CmData {
  Poly subfield_poly;
  FieldElement d;
  FieldElement relative_gen;
  FieldElement rho_theta;  // complex conjugation applied to theta
  QMatrix rho;             // conjugation on the power basis (columns)
  FieldElement eta;        // root of subfield_poly inside K generating F
  Integer index_l;         // least l with l*Z[theta] contained in Z[eta][relative_gen]
};

FieldElement apply_rho(const CmData& cm, const FieldElement& x);
bool in_subfield(const CmData& cm, const FieldElement& x);
bool is_cm(const NumberField& k);

// Continued-fraction reconstruction; nullopt when no fraction with denominator <= max_den fits.
std::optional<Rational> rational_reconstruct(const BigFloat& x, const Integer& max_den, const BigFloat& tol);

}  // namespace ldo
