#include "ldo/strata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ldo/errors.hpp"
#include "ldo/parallel.hpp"

namespace ldo {

namespace {

// w1^-1 h w2 for signed permutation representatives, without general multiplication
MatrixK weyl_twist(const MatrixK& h, const WeylElement& w1, const WeylElement& w2) {
  const int n = h.n();
  MatrixK m(h.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const FieldElement& x = h(w1.perm[static_cast<size_t>(i)], w2.perm[static_cast<size_t>(j)]);
      m(i, j) = w1.sign[static_cast<size_t>(i)] * w2.sign[static_cast<size_t>(j)] > 0 ? x : -x;
    }
  return m;
}

// W m W^-1
MatrixK weyl_conj(const MatrixK& m, const WeylElement& w) {
  const int n = m.n();
  MatrixK out(m.field(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const FieldElement& x = m(i, j);
      out(w.perm[static_cast<size_t>(i)], w.perm[static_cast<size_t>(j)]) =
          w.sign[static_cast<size_t>(i)] * w.sign[static_cast<size_t>(j)] > 0 ? x : -x;
    }
  return out;
}

struct Tuple {
  RootSubset psi;
  WeylElement w1, w2;
};

void check_input(const MatrixK& g1, const MatrixK& g2) {
  if (g1.n() != g2.n()) fail(ErrorKind::ArityMismatch, "components have different sizes");
  if (g1.field() != g2.field()) fail(ErrorKind::Config, "components come from different fields");
  if (g1.n() < 2) fail(ErrorKind::Config, "need n >= 2");
  if (g1.n() > kMaxStrataN) fail(ErrorKind::TooLarge, "strata enumeration supports n <= 5");
  if (!mat_det(g1).is_one() || !mat_det(g2).is_one()) fail(ErrorKind::Config, "components must have determinant 1");
}

std::uint64_t support(const MatrixK& m) {
  std::uint64_t s = 0;
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      if (!m(i, j).is_zero()) s |= 1ull << (i * m.n() + j);
  return s;
}

}  // namespace

long strata_bound(int n) {
  long b = 0;
  for (const auto& psi : all_root_subsets(n)) {
    long k = n_psi_formula(n, psi);
    b += k * k;
  }
  return b;
}

bool same_torus_orbit(const MatrixK& x1, const MatrixK& x2, const MatrixK& y1, const MatrixK& y2,
                      int unit_exponent_bound) {
  if (x1 == y1 && x2 == y2) return true;
  const NumberField& k = x1.field();
  const int n = x1.n();
  MatrixK x1i = mat_inv(x1);
  MatrixK a = x2 * x1i, b = y2 * mat_inv(y1);
  if (support(a) != support(b)) return false;
  // bipartite graph: rows 0..n-1, columns n..2n-1, an edge per nonzero entry
  std::vector<int> parent(static_cast<size_t>(2 * n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return parent[static_cast<size_t>(v)] == v ? v : parent[static_cast<size_t>(v)] = find(parent[static_cast<size_t>(v)]);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a(i, j).is_zero()) parent[static_cast<size_t>(find(i))] = find(n + j);
  // propagate values with a_ij e1_j = e2_i b_ij from each component root
  std::vector<std::optional<FieldElement>> val(static_cast<size_t>(2 * n));
  std::vector<int> roots;
  for (int v = 0; v < 2 * n; ++v)
    if (find(v) == v) roots.push_back(v);
  for (int r : roots) {
    val[static_cast<size_t>(r)] = k.one();
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (a(i, j).is_zero() || find(i) != r) continue;
          auto& e2 = val[static_cast<size_t>(i)];
          auto& e1 = val[static_cast<size_t>(n + j)];
          if (e1 && !e2) {
            e2 = a(i, j) * *e1 / b(i, j);
            grew = true;
          } else if (e2 && !e1) {
            e1 = b(i, j) * *e2 / a(i, j);
            grew = true;
          }
        }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a(i, j).is_zero() && a(i, j) * *val[static_cast<size_t>(n + j)] != *val[static_cast<size_t>(i)] * b(i, j))
        return false;
  if (roots.size() > 2) return false;
  // candidate scalars +-prod u_i^e_i
  std::vector<FieldElement> cands;
  auto units = k.r() > 1 && k.has_full_unit_system() ? k.units() : std::vector<FieldElement>{};
  std::vector<long> e(units.size(), -unit_exponent_bound);
  while (true) {
    FieldElement u = k.one();
    for (size_t t = 0; t < units.size(); ++t) u *= units[t].pow(e[t]);
    cands.push_back(u);
    cands.push_back(-u);
    size_t pos = 0;
    while (pos < e.size() && e[pos] == unit_exponent_bound) e[pos++] = -unit_exponent_bound;
    if (pos == e.size()) break;
    ++e[pos];
  }
  std::vector<int> comp_of_col(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    comp_of_col[static_cast<size_t>(j)] =
        static_cast<int>(std::find(roots.begin(), roots.end(), find(n + j)) - roots.begin());
  auto try_scalars = [&](const std::vector<FieldElement>& lam) {
    std::vector<FieldElement> d;
    FieldElement det = k.one();
    for (int j = 0; j < n; ++j) {
      d.push_back(lam[static_cast<size_t>(comp_of_col[static_cast<size_t>(j)])] * *val[static_cast<size_t>(n + j)]);
      det *= d.back();
    }
    if (!det.is_one()) return false;
    return (x1i * MatrixK::diagonal(d) * y1).is_integral();
  };
  if (roots.size() == 1) {
    for (const auto& l : cands)
      if (try_scalars({l})) return true;
  } else {
    for (const auto& l1 : cands)
      for (const auto& l2 : cands)
        if (try_scalars({l1, l2})) return true;
  }
  return false;
}

StrataSet enumerate_strata(const MatrixK& g1, const MatrixK& g2, const StrataOptions& opt) {
  check_input(g1, g2);
  const int n = g1.n();
  const MatrixK h = g1 * mat_inv(g2);
  std::vector<Tuple> tuples;
  for (const auto& psi : all_root_subsets(n)) {
    auto reps = coset_representatives(n, psi);
    for (const auto& w1 : reps)
      for (const auto& w2 : reps) tuples.push_back({psi, w1, w2});
  }
  std::vector<std::optional<StratumRecord>> slots(tuples.size());
  parallel_for(tuples.size(), opt.threads, [&](size_t idx) {
    const Tuple& t = tuples[idx];
    auto f = block_ldu(weyl_twist(h, t.w1, t.w2), t.psi);
    if (!f) return;
    StratumRecord rec;
    rec.pair = {parabolic_descriptor(t.psi, t.w1, true), parabolic_descriptor(t.psi, t.w2, false), t.psi, t.w1, t.w2};
    rec.rep1 = weyl_conj(mat_inv(f->v_minus), t.w1) * g1;
    rec.rep2 = weyl_conj(f->v_plus, t.w2) * g2;
    rec.dimension_hint = t.psi.size();
    slots[idx] = std::move(rec);
  });
  StrataSet set{g1, g2, {}, {}};
  for (auto& s : slots)
    if (s) set.records.push_back(std::move(*s));
  for (size_t i = 0; i < set.records.size(); ++i) set.records[i].orbit_class = static_cast<int>(i);
  set.edges = closure_poset(set);
  std::vector<bool> has_below(set.records.size(), false);
  for (auto [lo, hi] : set.edges) has_below[static_cast<size_t>(hi)] = true;
  for (size_t i = 0; i < set.records.size(); ++i) {
    auto& r = set.records[i];
    r.is_closed = !has_below[i];
    if (r.is_closed && (!is_borel(r.pair.first) || !is_borel(r.pair.second)))
      fail(ErrorKind::MinimalNotBorel, "minimal pair " + r.pair.psi.str() + " is not a pair of Borels");
  }
  if (opt.dedup_orbits) {
    std::vector<int> heads;
    for (size_t i = 0; i < set.records.size(); ++i) {
      auto& r = set.records[i];
      for (int hidx : heads) {
        const auto& q = set.records[static_cast<size_t>(hidx)];
        if (same_torus_orbit(q.rep1, q.rep2, r.rep1, r.rep2, opt.unit_exponent_bound)) {
          r.orbit_class = hidx;
          break;
        }
      }
      if (r.orbit_class == static_cast<int>(i)) heads.push_back(static_cast<int>(i));
    }
  }
  return set;
}

std::vector<std::pair<int, int>> closure_poset(const StrataSet& set) {
  // Parabolics containing a fixed one are its standard enlargements, so the records above a
  // record with (Psi, w1, w2) are the present pairs (Psi', w1 W_Psi', w2 W_Psi') with Psi' > Psi.
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> index;
  for (size_t i = 0; i < set.records.size(); ++i)
    index[{set.records[i].pair.first.positions, set.records[i].pair.second.positions}] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  if (set.records.empty()) return edges;
  const int n = set.records[0].pair.psi.n;
  auto subsets = all_root_subsets(n);
  for (size_t i = 0; i < set.records.size(); ++i) {
    const auto& p = set.records[i].pair;
    std::vector<std::pair<RootSubset, int>> up;
    for (const auto& q : subsets) {
      if (q.mask == p.psi.mask || (p.psi.mask & ~q.mask) != 0) continue;
      auto it = index.find({parabolic_descriptor(q, p.w1, true).positions, parabolic_descriptor(q, p.w2, false).positions});
      if (it != index.end()) up.emplace_back(q, it->second);
    }
    for (const auto& [q, j] : up) {
      bool covering = true;
      for (const auto& [q2, j2] : up)
        if (q2.mask != q.mask && (q2.mask & ~q.mask) == 0) covering = false;
      if (covering) edges.emplace_back(static_cast<int>(i), j);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<StratumRecord> closed_strata(const StrataSet& set) {
  std::vector<StratumRecord> out;
  for (const auto& r : set.records)
    if (r.is_closed) {
      if (!is_borel(r.pair.first) || !is_borel(r.pair.second))
        fail(ErrorKind::MinimalNotBorel, "minimal pair is not a pair of Borels");
      out.push_back(r);
    }
  return out;
}

bool is_orbit_closed(const std::vector<MatrixK>& components) {
  if (components.size() < 2) fail(ErrorKind::Config, "need at least two components");
  const MatrixK last_inv = mat_inv(components.back());
  for (size_t i = 0; i + 1 < components.size(); ++i)
    if (!(components[i] * last_inv).is_monomial()) return false;
  return true;
}

bool genericity_check(const MatrixK& h) {
  const int n = h.n();
  auto ws = all_weyl(n);
  auto e = RootSubset::empty(n);
  for (const auto& w1 : ws)
    for (const auto& w2 : ws)
      if (!block_ldu(weyl_twist(h, w1, w2), e)) return false;
  return true;
}

CountReport verify_counts(const StrataSet& set) {
  CountReport c;
  const int n = set.g1.n();
  c.pairs = static_cast<long>(set.records.size());
  for (size_t i = 0; i < set.records.size(); ++i) {
    const auto& r = set.records[i];
    if (r.is_closed) ++c.closed_pairs;
    if (r.orbit_class == static_cast<int>(i)) ++c.orbits;
  }
  // an orbit class is closed when it holds a closed record
  std::vector<bool> closed_class(set.records.size(), false);
  for (const auto& r : set.records)
    if (r.is_closed) closed_class[static_cast<size_t>(r.orbit_class)] = true;
  c.closed_orbits = std::count(closed_class.begin(), closed_class.end(), true);
  c.bound = strata_bound(n);
  long nf = n_psi_formula(n, RootSubset::empty(n));
  c.closed_bound = nf * nf;
  c.generic = genericity_check(set.g1 * mat_inv(set.g2));
  if (c.pairs > c.bound || c.closed_pairs > c.closed_bound)
    fail(ErrorKind::BoundViolated, "stratum count exceeds the parabolic bound");
  if (c.generic && c.pairs != c.bound) fail(ErrorKind::BoundViolated, "generic input without the full stratum count");
  return c;
}

std::string strata_summary(const StrataSet& set) {
  CountReport c = verify_counts(set);
  std::ostringstream os;
  os << "strata=" << c.pairs << " closed=" << c.closed_pairs << " bound=" << c.bound
     << " generic=" << (c.generic ? "true" : "false");
  return os.str();
}

std::string strata_dot(const StrataSet& set) {
  std::ostringstream os;
  os << "digraph strata {\n  rankdir=BT;\n";
  for (size_t i = 0; i < set.records.size(); ++i) {
    const auto& r = set.records[i];
    os << "  s" << i << " [label=\"" << r.pair.psi.str() << "\\n" << r.pair.w1.str() << " " << r.pair.w2.str()
       << "\"" << (r.is_closed ? ", shape=doublecircle" : ", shape=circle") << "];\n";
  }
  for (auto [lo, hi] : set.edges) os << "  s" << lo << " -> s" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ldo
