#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldo/decomp.hpp"
#include "ldo/matrix.hpp"
#include "ldo/rootdata.hpp"

namespace ldo {

struct HorosphericalData {
  RootSubset psi;                 // equal-modulus blocks after sorting
  PositionSet w_plus, w_minus, levi;  // in the original coordinates
  WeylElement basis_permutation;  // w(k) = original index sitting at sorted slot k
};

// Exact version: diagonal moduli given as base^x_i with rational exponents x_i.
HorosphericalData horospherical_data(const std::vector<Rational>& log_moduli);
// Numeric version at one place; equal moduli must be certified (entries equal up to sign,
// or a root of unity of order <= 12 at complex places), else ToleranceAmbiguous.
HorosphericalData horospherical_data(const std::vector<FieldElement>& diag, const ArchimedeanPlace& v, double tol);

// Per place, per step, per simple root: integer exponent k with |alpha_i(t)|_v = base_v^k.
struct TorusPath {
  int n = 2;
  std::vector<std::vector<std::vector<long>>> exponents;  // [place][step][root]
  std::vector<long> base;                                 // per place; 2 by default

  int places() const { return static_cast<int>(exponents.size()); }
  int steps() const { return exponents.empty() ? 0 : static_cast<int>(exponents[0].size()); }
  long base_of(int place) const { return place < static_cast<int>(base.size()) ? base[static_cast<size_t>(place)] : 2; }
  // log_base of the diagonal entries at (place, step): trace-zero projection of the root exponents
  std::vector<Rational> log_diagonal(int place, int step) const;
  void validate(int n_expected, int places_expected) const;
  // t -> t^-1
  TorusPath reversed() const;
};

struct DynamicsConfig {
  long height = 20;
  double bounded_margin = 1e-2;
  double divergence_threshold = 1e-3;
  unsigned threads = 1;
  long node_budget = 50000000;
};

struct SystoleResult {
  Interval value;
  double value_d = 0.0;
  std::vector<FieldElement> witness;
  bool complete = true;      // false when a search cap was hit
  double lower_bound = 0.0;  // prod_v ||M_v^-1||^-e_v, valid for every nonzero vector
};

// t[v] = log_base diagonal at place v; g[v] the component at place v
SystoleResult systole(const std::vector<MatrixK>& g, const std::vector<std::vector<Rational>>& log_diag,
                      const std::vector<long>& base, const DynamicsConfig& cfg = {});

struct SystoleTrace {
  std::vector<int> step;
  std::vector<SystoleResult> values;
  std::string verdict;  // bounded | divergent | indeterminate
  double minimum = 0.0;
  bool decreasing_after_burn_in = false;
};

SystoleTrace run_path(const std::vector<MatrixK>& g, const TorusPath& path, const DynamicsConfig& cfg = {});

struct BoundednessReport {
  bool membership = false;   // (i)
  bool condition_ii = false;  // (ii) with C' = C^2
  double product_inf = 0.0, product_sup = 0.0;
  bool predicted_bounded = false;
  SystoleTrace trace;
  bool agrees = false;
  std::string note;
};

BoundednessReport check_boundedness(const MatrixK& g1, const MatrixK& g2, const RootSubset& psi, const TorusPath& path,
                                    double C, const DynamicsConfig& cfg = {});

struct PredictedLimit {
  MatrixK rep1, rep2;
  MatrixK eps1, eps2;  // (s g1, t g2) = (s eps1 s^-1 * s rep1, t eps2 t^-1 * t rep2)
};

PredictedLimit predicted_limit(const MatrixK& g1, const MatrixK& g2, const RootSubset& psi, const WeylElement& w1,
                               const WeylElement& w2);
// max entrywise distance of (s eps1 s^-1, t eps2 t^-1) from the identity at a path step
double limit_defect(const PredictedLimit& p, const TorusPath& path, int step);

std::string trace_csv(const SystoleTrace& t);

}  // namespace ldo
