#include "support.hpp"
#include "ldo/forms.hpp"
#include "ldo/catalog.hpp"

namespace support {

using namespace ldo;

FieldElement random_element(const NumberField& k, Rng& rng, long height, bool integral) {
  std::uniform_int_distribution<long> co(-height, height), den(1, 3);
  std::vector<Rational> c;
  for (int i = 0; i < k.degree(); ++i) c.emplace_back(co(rng), integral ? 1 : den(rng));
  for (auto& q : c) q.canonicalize();
  return k.from_coeffs(c);
}

FieldElement random_nonzero(const NumberField& k, Rng& rng, long height, bool integral) {
  while (true) {
    FieldElement x = random_element(k, rng, height, integral);
    if (!x.is_zero()) return x;
  }
}

MatrixK random_unitriangular(const NumberField& k, int n, Rng& rng, bool lower, long height) {
  MatrixK m = MatrixK::identity(k, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lower ? i > j : i < j) m(i, j) = random_element(k, rng, height);
  return m;
}

MatrixK random_torus(const NumberField& k, int n, Rng& rng) {
  std::vector<FieldElement> d;
  FieldElement prod = k.one();
  for (int i = 0; i + 1 < n; ++i) {
    d.push_back(random_nonzero(k, rng, 2, false));
    prod *= d.back();
  }
  d.push_back(prod.inverse());
  return MatrixK::diagonal(d);
}

MatrixK random_sl(const NumberField& k, int n, Rng& rng, int steps, long height) {
  MatrixK m = MatrixK::identity(k, n);
  std::uniform_int_distribution<int> pos(0, n - 1);
  for (int s = 0; s < steps; ++s) {
    int i = pos(rng), j = pos(rng);
    if (i == j) continue;
    MatrixK e = MatrixK::identity(k, n);
    e(i, j) = random_element(k, rng, height);
    m = m * e;
  }
  return m;
}

WeylElement bruhat_by_elimination(const MatrixK& h) {
  const int n = h.n();
  MatrixK m = h;
  std::vector<int> perm(static_cast<size_t>(n), -1);
  std::vector<bool> used_col(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    int j = -1;
    for (int c = 0; c < n; ++c)
      if (!used_col[static_cast<size_t>(c)] && !m(i, c).is_zero()) {
        j = c;
        break;
      }
    if (j < 0) throw std::runtime_error("singular");
    // clear the rest of row i to the right with column operations
    for (int c = j + 1; c < n; ++c) {
      if (m(i, c).is_zero()) continue;
      FieldElement f = m(i, c) / m(i, j);
      for (int r = 0; r < n; ++r) m(r, c) -= f * m(r, j);
    }
    // clear column j below with row operations
    for (int r = i + 1; r < n; ++r) {
      if (m(r, j).is_zero()) continue;
      FieldElement f = m(r, j) / m(i, j);
      for (int c = 0; c < n; ++c) m(r, c) -= f * m(i, c);
    }
    used_col[static_cast<size_t>(j)] = true;
    perm[static_cast<size_t>(j)] = i;
  }
  return WeylElement::from_perm(perm);
}

FieldElement det_cofactor(const std::vector<std::vector<FieldElement>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  FieldElement acc = m[0][0].field().zero();
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<FieldElement>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<FieldElement> row;
      for (size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    FieldElement t = m[0][c] * det_cofactor(minor);
    acc = (c % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

bool membership_by_minors(const MatrixK& h, const RootSubset& psi, const WeylElement& w1, const WeylElement& w2) {
  // (w1^-1 h w2)[i][j] = s1 * s2 * h[w1(i)][w2(j)] with representative signs; signs do not affect vanishing
  int boundary = 0;
  for (int b : psi.composition()) {
    boundary += b;
    std::vector<std::vector<FieldElement>> m(static_cast<size_t>(boundary));
    for (int i = 0; i < boundary; ++i)
      for (int j = 0; j < boundary; ++j)
        m[static_cast<size_t>(i)].push_back(h(w1.perm[static_cast<size_t>(i)], w2.perm[static_cast<size_t>(j)]));
    if (det_cofactor(m).is_zero()) return false;
  }
  return true;
}

}  // namespace support

namespace support {

ldo::TorusPath linear_path(int n, int steps, const std::vector<long>& s_rate, const std::vector<long>& t_rate) {
  ldo::TorusPath p;
  p.n = n;
  p.exponents.assign(2, {});
  for (int m = 0; m < steps; ++m) {
    std::vector<long> s, t;
    for (int i = 0; i + 1 < n; ++i) {
      s.push_back(s_rate[static_cast<size_t>(i)] * (m + 1));
      t.push_back(t_rate[static_cast<size_t>(i)] * (m + 1));
    }
    p.exponents[0].push_back(s);
    p.exponents[1].push_back(t);
  }
  p.base = {2, 2};
  return p;
}

std::vector<DynamicsCase> dynamics_suite(int steps) {
  using ldo::FieldElement;
  using ldo::MatrixK;
  auto k = ldo::catalog::q_sqrt2();
  FieldElement th = k.theta(), one = k.one(), zero = k.zero();
  std::vector<DynamicsCase> out;

  // SL2, Psi empty
  struct Pair {
    std::string name;
    MatrixK g1, g2;
    bool membership;
  };
  std::vector<Pair> sl2 = {
      {"sl2-lower", MatrixK::from_ints(k, {{1, 0}, {1, 1}}), MatrixK::identity(k, 2), true},
      {"sl2-mixed", MatrixK(k, 2, {one + th, one, th, one}), MatrixK(k, 2, {one, th, zero, one}), true},
      {"sl2-weyl", MatrixK::from_ints(k, {{0, 1}, {-1, 0}}), MatrixK::identity(k, 2), false},
      {"sl2-twisted", MatrixK(k, 2, {th, one, -one, zero}), MatrixK(k, 2, {one, zero, th, one}), false},
  };
  auto empty2 = ldo::RootSubset::empty(2);
  for (const auto& p : sl2) {
    out.push_back({p.name + "/balanced", p.g1, p.g2, empty2, linear_path(2, steps, {1}, {-1}), 4.0, p.membership, true});
    out.push_back({p.name + "/static-s", p.g1, p.g2, empty2, linear_path(2, steps, {0}, {-1}), 4.0, p.membership, false});
  }

  // SL3, Psi = {alpha_1}
  ldo::RootSubset psi{3, 1u};
  MatrixK a = MatrixK(k, 3, {one, zero, zero, one, one, zero, th, one, one});
  MatrixK b = MatrixK::from_ints(k, {{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}});
  MatrixK e3 = MatrixK::identity(k, 3);
  out.push_back({"sl3-lower/balanced", a, e3, psi, linear_path(3, steps, {0, 2}, {0, -2}), 4.0, true, true});
  out.push_back({"sl3-lower/static-s", a, e3, psi, linear_path(3, steps, {0, 0}, {0, -2}), 4.0, true, false});
  out.push_back({"sl3-weyl/balanced", b, e3, psi, linear_path(3, steps, {0, 2}, {0, -2}), 4.0, false, true});
  out.push_back({"sl3-weyl/static-s", b, e3, psi, linear_path(3, steps, {0, 0}, {0, -2}), 4.0, false, false});
  return out;
}

}  // namespace support

namespace support {

ldo::DecomposableForm density_form() {
  using ldo::Rational;
  auto k = ldo::catalog::cyclic_cubic();
  auto X = [&](long a) { return k.from_int(a); };
  auto t = k.theta();
  Rational h(1, 2);
  return ldo::make_form(k, {{{X(1) * h, t * h}, {X(0), X(1)}},
                            {{X(1) * h, X(0)}, {t, X(1)}},
                            {{X(1) * h, X(1) * h}, {X(1), X(2)}}});
}

ldo::DecomposableForm spectrum_form() {
  auto k = ldo::catalog::q_sqrt2();
  auto X = [&](long a) { return k.from_int(a); };
  return ldo::make_form(k, {{{X(1), X(1)}, {X(1), X(-1)}}, {{X(1), X(2)}, {X(1), X(-1)}}});
}

ldo::DecomposableForm cm_form() {
  auto k = ldo::catalog::q_zeta8();
  auto X = [&](long a) { return k.from_int(a); };
  ldo::FieldElement eta = k.cm()->eta;
  return ldo::make_form(k, {{{X(1), eta}, {X(1), X(1) + eta}}, {{X(2), X(1)}, {X(1), X(1)}}});
}

}  // namespace support

namespace support {

std::set<PairKey> oracle_pairs(const ldo::MatrixK& g1, const ldo::MatrixK& g2) {
  using namespace ldo;
  const int n = g1.n();
  MatrixK h = g1 * mat_inv(g2);
  std::set<PairKey> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    RootSubset psi{n, mask};
    for (const auto& w1 : all_weyl(n))
      for (const auto& w2 : all_weyl(n))
        if (membership_by_minors(h, psi, w1, w2))
          out.insert({parabolic_descriptor(psi, w1, true).positions, parabolic_descriptor(psi, w2, false).positions});
  }
  return out;
}

std::set<PairKey> pairs_of(const ldo::StrataSet& s) {
  std::set<PairKey> out;
  for (const auto& r : s.records) out.insert({r.pair.first.positions, r.pair.second.positions});
  return out;
}

ldo::MatrixK generic_sl(const ldo::NumberField& k, int n, Rng& rng) {
  while (true) {
    auto g = random_sl(k, n, rng, 4 * n);
    if (ldo::genericity_check(g)) return g;
  }
}

}  // namespace support
