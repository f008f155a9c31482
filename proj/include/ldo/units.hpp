#pragma once

#include <string>
#include <vector>

#include "ldo/numfield.hpp"

namespace ldo {

struct BalanceResult {
  FieldElement xi;             // product of units^(m * exponent)
  std::vector<long> exponent;  // exponents of the declared units before the m-th power
  Interval bound;              // max_i max(|xi a_i|_i, |xi a_i|_i^{-1}), certified
};

// a[i] is read at place i; requires prod |a_i|_i = 1 (checked numerically).
BalanceResult balance_by_unit(const NumberField& k, const std::vector<FieldElement>& a, long m, long search_radius = 2);

enum class ClosureKind { Discrete, PositiveReals, Circle, SpiralCandidate, Full };
const char* closure_name(ClosureKind c);

struct UnitClosureReport {
  int target_place = 0;
  ClosureKind classification = ClosureKind::Discrete;
  mpfr_prec_t precision = kDefaultPrecision;
  long relation_bound = 1000000;
  double tolerance = 0.0;  // residual threshold for accepting an integer relation
  // (log modulus, argument) of each declared unit at the target place
  std::vector<std::pair<double, double>> log_lattice;
  std::vector<std::vector<long>> modulus_relations;
  // gap statistics of {sum e_i log|u_i|} over the exponent box |e_i| <= exponent_box
  long exponent_box = 30;
  double mesh_absolute = 0.0;  // least positive value
  double mesh_relative = 0.0;  // mesh_absolute / (exponent_box * max_i |log|u_i||)
  std::string rationale;
};

UnitClosureReport unit_closure_classify(const NumberField& k, int target_place, mpfr_prec_t precision = kDefaultPrecision);

// Fundamental solution of x^2 - D y^2 = +-1 via the continued fraction of sqrt(D), returned as x + y theta
// in the field Q[x]/(x^2 - D).
FieldElement pell_fundamental_unit(const NumberField& k);

}  // namespace ldo
