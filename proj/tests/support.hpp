#pragma once

#include <functional>
#include <random>

#include "ldo/decomp.hpp"
#include "ldo/errors.hpp"
#include "ldo/matrix.hpp"

namespace support {

using Rng = std::mt19937_64;

ldo::FieldElement random_element(const ldo::NumberField& k, Rng& rng, long height, bool integral = true);
ldo::FieldElement random_nonzero(const ldo::NumberField& k, Rng& rng, long height, bool integral = true);
// product of random elementary matrices with integral entries; det 1
ldo::MatrixK random_sl(const ldo::NumberField& k, int n, Rng& rng, int steps = 3 * 4, long height = 2);
// random unit lower / upper triangular
ldo::MatrixK random_unitriangular(const ldo::NumberField& k, int n, Rng& rng, bool lower, long height = 2);
// random invertible diagonal with det 1
ldo::MatrixK random_torus(const ldo::NumberField& k, int n, Rng& rng);

// Independent Bruhat oracle: reduce h to a monomial matrix using only "add a row to a row below"
// and "add a column to a column further right", then read off the permutation.
ldo::WeylElement bruhat_by_elimination(const ldo::MatrixK& h);

// Independent membership oracle for w1^-1 h w2 in V^-_Psi P_Psi: leading principal minors at
// block boundaries computed by cofactor expansion.
bool membership_by_minors(const ldo::MatrixK& h, const ldo::RootSubset& psi, const ldo::WeylElement& w1,
                          const ldo::WeylElement& w2);
ldo::FieldElement det_cofactor(const std::vector<std::vector<ldo::FieldElement>>& m);

inline ldo::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ldo::Error& e) {
    return e.kind();
  }
  return ldo::ErrorKind::InvariantViolation;
}

}  // namespace support

#include "ldo/dynamics.hpp"

namespace support {

// Path over two places with step m using exponents f(m+1) for each simple root.
ldo::TorusPath linear_path(int n, int steps, const std::vector<long>& s_rate, const std::vector<long>& t_rate);

struct DynamicsCase {
  std::string name;
  ldo::MatrixK g1, g2;
  ldo::RootSubset psi;
  ldo::TorusPath path;
  double C = 4.0;
  bool expect_membership = false, expect_ii = false;
};

// Twelve configurations over Q(sqrt2): SL2 and SL3, every combination of (i) and (ii).
std::vector<DynamicsCase> dynamics_suite(int steps = 30);

}  // namespace support

#include "ldo/forms.hpp"

namespace support {

// Non-rational binary form over the cyclic cubic used for the density trend.
ldo::DecomposableForm density_form();
// Non-rational binary form over Q(sqrt2) used for the two-place spectrum.
ldo::DecomposableForm spectrum_form();
// Binary form over Q(zeta8) with coefficients in Q(sqrt2), det 1 at both places.
ldo::DecomposableForm cm_form();

}  // namespace support

#include <set>

#include "ldo/strata.hpp"

namespace support {

using PairKey = std::pair<std::uint64_t, std::uint64_t>;

// every (Psi, w1, w2) tested by raw minors of g1 g2^-1
std::set<PairKey> oracle_pairs(const ldo::MatrixK& g1, const ldo::MatrixK& g2);
std::set<PairKey> pairs_of(const ldo::StrataSet& s);
// random SL_n element passing genericity_check
ldo::MatrixK generic_sl(const ldo::NumberField& k, int n, Rng& rng);

}  // namespace support
