#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldo/decomp.hpp"
#include "ldo/matrix.hpp"
#include "ldo/rootdata.hpp"

namespace ldo {

struct ParabolicPair {
  ParabolicDescriptor first;   // w1 P_Psi^- w1^-1
  ParabolicDescriptor second;  // w2 P_Psi w2^-1
  RootSubset psi;
  WeylElement w1, w2;  // lexicographically minimal coset representatives
};

struct StratumRecord {
  ParabolicPair pair;
  MatrixK rep1, rep2;  // the point whose T-orbit is the stratum
  bool is_closed = false;
  int dimension_hint = 0;  // |Psi|
  // index of the first record certified to lie on the same T-orbit (itself when none)
  int orbit_class = 0;
};

struct StrataSet {
  MatrixK g1, g2;
  std::vector<StratumRecord> records;
  // covering relations (lower, upper) of componentwise containment
  std::vector<std::pair<int, int>> edges;
};

constexpr int kMaxStrataN = 5;

struct StrataOptions {
  unsigned threads = 1;
  bool dedup_orbits = true;
  int unit_exponent_bound = 3;
};

StrataSet enumerate_strata(const MatrixK& g1, const MatrixK& g2, const StrataOptions& opt = {});
std::vector<std::pair<int, int>> closure_poset(const StrataSet& set);
std::vector<StratumRecord> closed_strata(const StrataSet& set);
bool is_orbit_closed(const std::vector<MatrixK>& components);
bool genericity_check(const MatrixK& h);

// Exact certificate that (y1, y2) lies in T(K) (x1, x2) SL_n(Z[theta]): searches diagonal D1, D2
// over unit scalings per bipartite component of the support. false means "not certified".
bool same_torus_orbit(const MatrixK& x1, const MatrixK& x2, const MatrixK& y1, const MatrixK& y2,
                      int unit_exponent_bound = 3);

struct CountReport {
  long pairs = 0, closed_pairs = 0;      // records keyed by parabolic pair
  long orbits = 0, closed_orbits = 0;    // after certified orbit identification
  long bound = 0, closed_bound = 0;      // sum_Psi n_Psi^2 and n_empty^2
  bool generic = false;
};
CountReport verify_counts(const StrataSet& set);

long strata_bound(int n);

std::string strata_summary(const StrataSet& set);
std::string strata_dot(const StrataSet& set);

}  // namespace ldo
