#include "ldo/qlinalg.hpp"

#include <utility>

namespace ldo {

Rational det(const QMatrix& a) {
  size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  Rational scale = 1;
  for (size_t i = 0; i < n; ++i) {
    Integer d = common_denominator(a[i]);
    scale /= d;
    for (size_t j = 0; j < n; ++j) {
      Rational t = a[i][j] * d;
      m[i][j] = t.get_num();
    }
  }
  Integer prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Rational r(m[n - 1][n - 1]);
  r *= scale;
  return sign < 0 ? Rational(-r) : r;
}

namespace {

// in-place reduced row echelon form; returns pivot columns
std::vector<size_t> rref(QMatrix& a) {
  std::vector<size_t> pivots;
  size_t rows = a.size();
  if (rows == 0) return pivots;
  size_t cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    Rational inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(QMatrix a) { return static_cast<int>(rref(a).size()); }

std::optional<QMatrix> inverse(const QMatrix& a) {
  size_t n = a.size();
  QMatrix aug(n, std::vector<Rational>(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

QMatrix nullspace(const QMatrix& a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  QMatrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  QMatrix basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
  size_t rows = a.size();
  if (rows == 0) return std::vector<Rational>{};
  size_t cols = a[0].size();
  QMatrix aug(rows, std::vector<Rational>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  std::vector<Rational> x(cols);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
  return x;
}

QMatrix identity_q(size_t n) {
  QMatrix m(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, std::vector<Rational>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace ldo
