#include "ldo/matrix.hpp"

#include "ldo/errors.hpp"

namespace ldo {

MatrixK::MatrixK(NumberField k, int n) : k_(std::move(k)), n_(n), e_(static_cast<size_t>(n * n), k_.zero()) {}

MatrixK::MatrixK(NumberField k, int n, std::vector<FieldElement> entries)
    : k_(std::move(k)), n_(n), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(n * n)) fail(ErrorKind::Config, "matrix needs n*n entries");
  for (const auto& x : e_)
    if (x.field() != k_) fail(ErrorKind::Config, "matrix entries from different fields");
}

MatrixK MatrixK::identity(const NumberField& k, int n) {
  MatrixK m(k, n);
  for (int i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

MatrixK MatrixK::from_ints(const NumberField& k, const std::vector<std::vector<long>>& rows) {
  int n = static_cast<int>(rows.size());
  MatrixK m(k, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n) fail(ErrorKind::Config, "matrix rows must be square");
    for (int j = 0; j < n; ++j) m(i, j) = k.from_int(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  return m;
}

MatrixK MatrixK::from_weyl(const NumberField& k, const WeylElement& w) {
  auto r = w.matrix();
  std::vector<std::vector<long>> rows;
  for (const auto& row : r) rows.emplace_back(row.begin(), row.end());
  return from_ints(k, rows);
}

MatrixK MatrixK::diagonal(const std::vector<FieldElement>& d) {
  MatrixK m(d.at(0).field(), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

MatrixK MatrixK::transpose() const {
  MatrixK t(k_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

MatrixK MatrixK::sub(int r0, int c0, int rows, int cols) const {
  if (rows != cols) fail(ErrorKind::Config, "sub() builds square blocks only");
  MatrixK s(k_, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

bool MatrixK::is_monomial() const {
  for (int i = 0; i < n_; ++i) {
    int row = 0, col = 0;
    for (int j = 0; j < n_; ++j) {
      row += (*this)(i, j).is_zero() ? 0 : 1;
      col += (*this)(j, i).is_zero() ? 0 : 1;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

bool MatrixK::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool MatrixK::is_identity() const { return *this == identity(k_, n_); }

bool MatrixK::is_integral() const {
  for (const auto& x : e_)
    if (!x.is_integral()) return false;
  return true;
}

std::string MatrixK::str() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < n_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
    s += "]";
  }
  return s + "]";
}

MatrixK operator*(const MatrixK& a, const MatrixK& b) {
  if (a.n_ != b.n_) fail(ErrorKind::ArityMismatch, "matrix sizes differ");
  MatrixK c(a.k_, a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      const FieldElement& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < a.n_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

MatrixK operator+(const MatrixK& a, const MatrixK& b) {
  MatrixK c = a;
  for (size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
  return c;
}

MatrixK operator-(const MatrixK& a, const MatrixK& b) {
  MatrixK c = a;
  for (size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
  return c;
}

bool operator==(const MatrixK& a, const MatrixK& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

bool operator<(const MatrixK& a, const MatrixK& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  return a.e_ < b.e_;
}

int rank_k(KRows a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!a[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[static_cast<size_t>(r)], a[static_cast<size_t>(piv)]);
    FieldElement inv = a[static_cast<size_t>(r)][static_cast<size_t>(c)].inverse();
    for (int i = r + 1; i < rows; ++i) {
      auto& row = a[static_cast<size_t>(i)];
      if (row[static_cast<size_t>(c)].is_zero()) continue;
      FieldElement f = row[static_cast<size_t>(c)] * inv;
      for (int j = c; j < cols; ++j) row[static_cast<size_t>(j)] -= f * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    ++r;
  }
  return r;
}

MatrixK mat_mul(const MatrixK& a, const MatrixK& b) { return a * b; }

FieldElement mat_det(const MatrixK& a) {
  int n = a.n();
  MatrixK m = a;
  FieldElement det = a.field().one();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return a.field().zero();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    FieldElement inv = m(c, c).inverse();
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      FieldElement f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<MatrixK> try_inv(const MatrixK& a) {
  int n = a.n();
  MatrixK m = a, inv = MatrixK::identity(a.field(), n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      std::swap(m(c, j), m(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    FieldElement p = m(c, c).inverse();
    for (int j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * p;
      inv(c, j) = inv(c, j) * p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      FieldElement f = m(i, c);
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

MatrixK mat_inv(const MatrixK& a) {
  auto r = try_inv(a);
  if (!r) fail(ErrorKind::Singular, "matrix is singular");
  return *r;
}

}  // namespace ldo
