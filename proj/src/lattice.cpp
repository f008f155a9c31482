#include "ldo/lattice.hpp"

#include <algorithm>

namespace ldo {

GramSchmidt gram_schmidt(const std::vector<std::vector<long double>>& b) {
  size_t n = b.size();
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<long double>(n, 0.0L));
  gs.bn.assign(n, 0.0L);
  std::vector<std::vector<long double>> bs = b;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      long double d = 0;
      for (size_t t = 0; t < b[i].size(); ++t) d += b[i][t] * bs[j][t];
      gs.mu[i][j] = gs.bn[j] > 0 ? d / gs.bn[j] : 0.0L;
      for (size_t t = 0; t < b[i].size(); ++t) bs[i][t] -= gs.mu[i][j] * bs[j][t];
    }
    long double s = 0;
    for (auto v : bs[i]) s += v * v;
    gs.bn[i] = s;
  }
  return gs;
}

namespace {

struct Enumerator {
  const GramSchmidt& gs;
  long double r2;
  const std::function<void(const std::vector<long>&)>& visit;
  long budget;
  std::vector<long> x;
  bool exhausted = false;

  void rec(long j, long double partial, bool higher_zero) {
    if (exhausted) return;
    if (--budget < 0) {
      exhausted = true;
      return;
    }
    size_t n = x.size();
    long double c = 0;
    for (size_t i = static_cast<size_t>(j) + 1; i < n; ++i) c -= gs.mu[i][static_cast<size_t>(j)] * static_cast<long double>(x[i]);
    long double bj = gs.bn[static_cast<size_t>(j)];
    if (bj <= 0) return;
    long double rem = r2 - partial;
    if (rem < 0) return;
    long double w = std::sqrt(rem / bj) * (1.0L + 1e-12L) + 1e-12L;
    long lo = static_cast<long>(std::ceil(c - w));
    long hi = static_cast<long>(std::floor(c + w));
    if (higher_zero) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      long double d = static_cast<long double>(v) - c;
      long double np = partial + bj * d * d;
      if (np > r2 * (1.0L + 1e-12L)) continue;
      x[static_cast<size_t>(j)] = v;
      bool hz = higher_zero && v == 0;
      if (j == 0) {
        if (!hz) visit(x);
      } else {
        rec(j - 1, np, hz);
      }
      if (exhausted) break;
    }
    x[static_cast<size_t>(j)] = 0;
  }
};

}  // namespace

bool enumerate_short(const std::vector<std::vector<long double>>& b, long double radius2,
                     const std::function<void(const std::vector<long>&)>& visit, long node_budget) {
  if (b.empty()) return true;
  GramSchmidt gs = gram_schmidt(b);
  Enumerator e{gs, radius2, visit, node_budget, std::vector<long>(b.size(), 0)};
  e.rec(static_cast<long>(b.size()) - 1, 0.0L, true);
  return !e.exhausted;
}

RelationSearch integer_relations(const std::vector<std::vector<BigFloat>>& x, long bound, mpfr_prec_t prec) {
  RelationSearch out;
  const size_t m = x.size();
  if (m == 0) return out;
  const size_t q = x[0].size();
  const mpfr_prec_t work = prec + 96;
  BigFloat scale = ldexp(BigFloat(1.0, work), static_cast<long>(prec) - 40);
  std::vector<std::vector<BigFloat>> rows(m, std::vector<BigFloat>(m + q, BigFloat(work)));
  for (size_t i = 0; i < m; ++i) {
    rows[i][i] = BigFloat(1.0, work);
    for (size_t t = 0; t < q; ++t) rows[i][m + t] = scale * BigFloat(x[i][t]);
  }
  lll_reduce(rows);
  BigFloat small = ldexp(BigFloat(1.0, work), -static_cast<long>(prec) / 2);
  auto is_relation = [&](const std::vector<BigFloat>& row, std::vector<Integer>& coeffs) {
    coeffs.clear();
    for (size_t i = 0; i < m; ++i) {
      Integer c = row[i].round();
      if (abs(c) > bound) return false;
      coeffs.push_back(c);
    }
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; })) return false;
    for (size_t t = 0; t < q; ++t) {
      BigFloat s(work);
      for (size_t i = 0; i < m; ++i) s = s + BigFloat(Rational(coeffs[i]), work) * x[i][t];
      if (abs(s) > small) return false;
    }
    return true;
  };
  size_t k = 0;
  std::vector<Integer> coeffs;
  while (k < m && is_relation(rows[k], coeffs)) {
    out.relations.push_back(coeffs);
    ++k;
  }
  for (size_t j = k; j < m; ++j)
    if (is_relation(rows[j], coeffs)) {
      out.status = RelationSearch::Status::Ambiguous;
      return out;
    }
  // Gram-Schmidt norms of the non-relation part bound every vector outside span(relations)
  std::vector<std::vector<BigFloat>> bs = rows;
  BigFloat min_norm(work);
  bool first = true;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < i; ++j) {
      BigFloat num(work), den(work);
      for (size_t t = 0; t < m + q; ++t) {
        num = num + rows[i][t] * bs[j][t];
        den = den + bs[j][t] * bs[j][t];
      }
      BigFloat mu = num / den;
      for (size_t t = 0; t < m + q; ++t) bs[i][t] = bs[i][t] - mu * bs[j][t];
    }
    if (i >= k) {
      BigFloat nn(work);
      for (size_t t = 0; t < m + q; ++t) nn = nn + bs[i][t] * bs[i][t];
      nn = sqrt(nn);
      if (first || nn < min_norm) min_norm = nn;
      first = false;
    }
  }
  double threshold = 2.0 * std::sqrt(static_cast<double>(m)) * static_cast<double>(bound);
  out.separation = first ? 0.0 : min_norm.to_double();
  if (!first && out.separation <= threshold) {
    out.status = RelationSearch::Status::Ambiguous;
    return out;
  }
  out.status = k > 0 ? RelationSearch::Status::Found : RelationSearch::Status::None;
  return out;
}

}  // namespace ldo
