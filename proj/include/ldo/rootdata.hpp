#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ldo {

// Subset of the simple roots alpha_1..alpha_{n-1}; bit i-1 set when alpha_i is in the subset.
// alpha_i cuts between rows i and i+1 (1-based) when it is absent.
struct RootSubset {
  int n = 2;
  unsigned mask = 0;

  static RootSubset empty(int n) { return {n, 0u}; }
  static RootSubset full(int n) { return {n, (1u << (n - 1)) - 1u}; }
  bool has(int i) const { return (mask >> (i - 1)) & 1u; }  // i is 1-based
  int size() const { return __builtin_popcount(mask); }
  std::vector<int> composition() const;  // block sizes
  std::vector<int> block_of() const;     // block index of each row (0-based rows)
  std::string str() const;               // e.g. "{a1,a3}"
  friend bool operator==(const RootSubset&, const RootSubset&) = default;
};

std::vector<RootSubset> all_root_subsets(int n);

// Permutation w of {0..n-1} (one-line: perm[i] = w(i)) with a det-1 signed monomial representative
// M[w(i)][i] = sign[i], so that M E_ij M^-1 = +-E_{w(i) w(j)}.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  int n() const { return static_cast<int>(perm.size()); }
  static WeylElement from_perm(std::vector<int> perm);
  static WeylElement identity(int n);
  std::vector<std::vector<int>> matrix() const;
  WeylElement inverse_perm() const;  // permutation inverse, re-signed to det 1
  bool is_identity() const;
  std::string str() const;  // one-line notation, 1-based, e.g. "[2,1,3]"
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.perm == b.perm; }
};

WeylElement compose(const WeylElement& a, const WeylElement& b);  // a o b, re-signed
int permutation_sign(const std::vector<int>& perm);

constexpr int kMaxWeylN = 5;
std::vector<WeylElement> all_weyl(int n);  // lexicographic order
int weyl_index(const WeylElement& w);      // position in all_weyl(n)
WeylElement longest_element(int n);

// Off-diagonal positions (i, j), 0-based, as a bitmask with bit i*n + j. Diagonal implied.
struct ParabolicDescriptor {
  int n = 2;
  std::uint64_t positions = 0;

  bool has(int i, int j) const { return (positions >> (i * n + j)) & 1ull; }
  std::vector<std::pair<int, int>> list() const;  // sorted
  int count() const { return __builtin_popcountll(positions); }
  bool pattern_closed() const;
  friend bool operator==(const ParabolicDescriptor&, const ParabolicDescriptor&) = default;
  friend bool operator<(const ParabolicDescriptor& a, const ParabolicDescriptor& b) {
    return a.positions < b.positions;
  }
};

using PositionSet = ParabolicDescriptor;

ParabolicDescriptor parabolic_descriptor(const RootSubset& psi, const WeylElement& w, bool opposite);
ParabolicDescriptor conjugate(const ParabolicDescriptor& p, const WeylElement& w);
// true when P is a subgroup of Q (position-set inclusion)
bool contains(const ParabolicDescriptor& p, const ParabolicDescriptor& q);
bool is_borel(const ParabolicDescriptor& p);
long n_psi(int n, const RootSubset& psi);
long n_psi_formula(int n, const RootSubset& psi);  // n! / prod b_j!
std::vector<WeylElement> coset_representatives(int n, const RootSubset& psi);
bool in_weyl_subgroup(const WeylElement& u, const RootSubset& psi);  // u in W_Psi
// strictly block-upper (sign > 0) or strictly block-lower (sign < 0)
PositionSet unipotent_positions(const RootSubset& psi, int sign);
PositionSet levi_positions(const RootSubset& psi);  // off-diagonal positions inside diagonal blocks

}  // namespace ldo
