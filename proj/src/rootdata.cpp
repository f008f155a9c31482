#include "ldo/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ldo/errors.hpp"

namespace ldo {

std::vector<int> RootSubset::composition() const {
  std::vector<int> out{1};
  for (int i = 1; i < n; ++i) {
    if (has(i))
      ++out.back();
    else
      out.push_back(1);
  }
  return out;
}

std::vector<int> RootSubset::block_of() const {
  std::vector<int> b(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i) b[static_cast<size_t>(i)] = b[static_cast<size_t>(i - 1)] + (has(i) ? 0 : 1);
  return b;
}

std::string RootSubset::str() const {
  std::string s = "{";
  bool first = true;
  for (int i = 1; i < n; ++i)
    if (has(i)) {
      if (!first) s += ",";
      s += "a" + std::to_string(i);
      first = false;
    }
  return s + "}";
}

std::vector<RootSubset> all_root_subsets(int n) {
  std::vector<RootSubset> out;
  for (unsigned m = 0; m < (1u << (n - 1)); ++m) out.push_back({n, m});
  // by size, then mask
  std::stable_sort(out.begin(), out.end(), [](const RootSubset& a, const RootSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask < b.mask;
  });
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int s = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

WeylElement WeylElement::from_perm(std::vector<int> perm) {
  WeylElement w;
  w.sign.assign(perm.size(), 1);
  // flip the entry sitting in the last row so the determinant becomes 1
  if (permutation_sign(perm) < 0) {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] == static_cast<int>(perm.size()) - 1) w.sign[i] = -1;
  }
  w.perm = std::move(perm);
  return w;
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return from_perm(p);
}

std::vector<std::vector<int>> WeylElement::matrix() const {
  size_t k = perm.size();
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
  for (size_t i = 0; i < k; ++i) m[static_cast<size_t>(perm[i])][i] = sign[i];
  return m;
}

WeylElement WeylElement::inverse_perm() const {
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
  return from_perm(inv);
}

bool WeylElement::is_identity() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

std::string WeylElement::str() const {
  std::string s = "[";
  for (size_t i = 0; i < perm.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(perm[i] + 1);
  }
  return s + "]";
}

WeylElement compose(const WeylElement& a, const WeylElement& b) {
  std::vector<int> p(b.perm.size());
  for (size_t i = 0; i < p.size(); ++i) p[i] = a.perm[static_cast<size_t>(b.perm[i])];
  return WeylElement::from_perm(p);
}

std::vector<WeylElement> all_weyl(int n) {
  if (n < 1 || n > kMaxWeylN) fail(ErrorKind::TooLarge, "Weyl enumeration supports 2 <= n <= 5");
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> out;
  do out.push_back(WeylElement::from_perm(p));
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int weyl_index(const WeylElement& w) {
  // Lehmer code rank
  int n = w.n();
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (w.perm[static_cast<size_t>(j)] < w.perm[static_cast<size_t>(i)]) ++smaller;
    int f = 1;
    for (int t = 2; t <= n - 1 - i; ++t) f *= t;
    idx += smaller * f;
  }
  return idx;
}

WeylElement longest_element(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = n - 1 - i;
  return WeylElement::from_perm(p);
}

std::vector<std::pair<int, int>> ParabolicDescriptor::list() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && has(i, j)) out.emplace_back(i, j);
  return out;
}

bool ParabolicDescriptor::pattern_closed() const {
  auto in = [&](int i, int j) { return i == j || has(i, j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != k && in(i, j) && in(j, k) && !in(i, k)) return false;
  return true;
}

ParabolicDescriptor parabolic_descriptor(const RootSubset& psi, const WeylElement& w, bool opposite) {
  ParabolicDescriptor d{psi.n, 0};
  auto b = psi.block_of();
  for (int i = 0; i < psi.n; ++i)
    for (int j = 0; j < psi.n; ++j) {
      if (i == j) continue;
      bool in = opposite ? b[static_cast<size_t>(i)] >= b[static_cast<size_t>(j)]
                         : b[static_cast<size_t>(i)] <= b[static_cast<size_t>(j)];
      if (in) d.positions |= 1ull << (w.perm[static_cast<size_t>(i)] * psi.n + w.perm[static_cast<size_t>(j)]);
    }
  return d;
}

ParabolicDescriptor conjugate(const ParabolicDescriptor& p, const WeylElement& w) {
  ParabolicDescriptor d{p.n, 0};
  for (auto [i, j] : p.list())
    d.positions |= 1ull << (w.perm[static_cast<size_t>(i)] * p.n + w.perm[static_cast<size_t>(j)]);
  return d;
}

bool contains(const ParabolicDescriptor& p, const ParabolicDescriptor& q) {
  return p.n == q.n && (p.positions & ~q.positions) == 0;
}

bool is_borel(const ParabolicDescriptor& p) {
  // a parabolic containing T is a Borel exactly when it has n(n-1)/2 root positions
  return p.count() == p.n * (p.n - 1) / 2 && p.pattern_closed();
}

long n_psi(int n, const RootSubset& psi) {
  std::set<std::uint64_t> seen;
  for (const auto& w : all_weyl(n)) seen.insert(parabolic_descriptor(psi, w, false).positions);
  return static_cast<long>(seen.size());
}

long n_psi_formula(int n, const RootSubset& psi) {
  auto fact = [](long k) {
    long f = 1;
    for (long t = 2; t <= k; ++t) f *= t;
    return f;
  };
  long v = fact(n);
  for (int b : psi.composition()) v /= fact(b);
  return v;
}

bool in_weyl_subgroup(const WeylElement& u, const RootSubset& psi) {
  auto b = psi.block_of();
  for (int i = 0; i < u.n(); ++i)
    if (b[static_cast<size_t>(u.perm[static_cast<size_t>(i)])] != b[static_cast<size_t>(i)]) return false;
  return true;
}

std::vector<WeylElement> coset_representatives(int n, const RootSubset& psi) {
  // left coset w W_Psi is determined by the image set of each block; the lexicographic
  // enumeration meets the minimal member of each coset first
  auto b = psi.block_of();
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<WeylElement> out;
  for (const auto& w : all_weyl(n)) {
    std::vector<std::vector<int>> key(psi.composition().size());
    for (int i = 0; i < n; ++i) key[static_cast<size_t>(b[static_cast<size_t>(i)])].push_back(w.perm[static_cast<size_t>(i)]);
    for (auto& s : key) std::sort(s.begin(), s.end());
    if (seen.insert(key).second) out.push_back(w);
  }
  return out;
}

PositionSet unipotent_positions(const RootSubset& psi, int sign) {
  PositionSet d{psi.n, 0};
  auto b = psi.block_of();
  for (int i = 0; i < psi.n; ++i)
    for (int j = 0; j < psi.n; ++j) {
      bool in = sign > 0 ? b[static_cast<size_t>(i)] < b[static_cast<size_t>(j)] : b[static_cast<size_t>(i)] > b[static_cast<size_t>(j)];
      if (in) d.positions |= 1ull << (i * psi.n + j);
    }
  return d;
}

PositionSet levi_positions(const RootSubset& psi) {
  PositionSet d{psi.n, 0};
  auto b = psi.block_of();
  for (int i = 0; i < psi.n; ++i)
    for (int j = 0; j < psi.n; ++j)
      if (i != j && b[static_cast<size_t>(i)] == b[static_cast<size_t>(j)]) d.positions |= 1ull << (i * psi.n + j);
  return d;
}

}  // namespace ldo
