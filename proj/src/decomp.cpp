#include "ldo/decomp.hpp"

#include "ldo/errors.hpp"

namespace ldo {

std::optional<BlockLDU> block_ldu(const MatrixK& h, const RootSubset& psi) {
  const int n = h.n();
  if (psi.n != n) fail(ErrorKind::ArityMismatch, "root subset size differs from matrix size");
  const NumberField& k = h.field();
  MatrixK s = h;  // running Schur complement in the trailing rows/columns
  MatrixK lo = MatrixK::identity(k, n), up = MatrixK::identity(k, n), z(k, n);
  int start = 0;
  for (int b : psi.composition()) {
    const int end = start + b;
    MatrixK pivot = s.sub(start, start, b, b);
    auto pinv = try_inv(pivot);
    if (!pinv) return std::nullopt;
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) z(start + i, start + j) = pivot(i, j);
    // L[rows below, block] = S[rows below, block] * P^-1 ; U[block, cols right] = P^-1 * S[block, cols right]
    for (int i = end; i < n; ++i)
      for (int j = 0; j < b; ++j) {
        FieldElement acc = k.zero();
        for (int t = 0; t < b; ++t) acc += s(i, start + t) * (*pinv)(t, j);
        lo(i, start + j) = acc;
      }
    for (int i = 0; i < b; ++i)
      for (int j = end; j < n; ++j) {
        FieldElement acc = k.zero();
        for (int t = 0; t < b; ++t) acc += (*pinv)(i, t) * s(start + t, j);
        up(start + i, j) = acc;
      }
    for (int i = end; i < n; ++i)
      for (int j = end; j < n; ++j) {
        FieldElement acc = k.zero();
        for (int t = 0; t < b; ++t) acc += lo(i, start + t) * s(start + t, j);
        s(i, j) -= acc;
      }
    start = end;
  }
  return BlockLDU{lo, z, up, psi};
}

WeylElement bruhat_cell(const MatrixK& h) {
  const int n = h.n();
  // r[i][j] = rank of h[0..i-1, 0..j-1]
  std::vector<std::vector<int>> r(static_cast<size_t>(n + 1), std::vector<int>(static_cast<size_t>(n + 1), 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      KRows a(static_cast<size_t>(i));
      for (int x = 0; x < i; ++x)
        for (int y = 0; y < j; ++y) a[static_cast<size_t>(x)].push_back(h(x, y));
      r[static_cast<size_t>(i)][static_cast<size_t>(j)] = rank_k(a);
    }
  std::vector<int> perm(static_cast<size_t>(n), -1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto R = [&](int a, int b) { return r[static_cast<size_t>(a)][static_cast<size_t>(b)]; };
      if (R(i, j) - R(i - 1, j) - R(i, j - 1) + R(i - 1, j - 1) == 1) perm[static_cast<size_t>(j - 1)] = i - 1;
    }
  for (int v : perm)
    if (v < 0) fail(ErrorKind::Singular, "bruhat_cell needs an invertible matrix");
  return WeylElement::from_perm(perm);
}

bool cell_membership(const MatrixK& h, const RootSubset& psi, const WeylElement& w1, const WeylElement& w2) {
  const NumberField& k = h.field();
  MatrixK m = mat_inv(MatrixK::from_weyl(k, w1)) * h * MatrixK::from_weyl(k, w2);
  return block_ldu(m, psi).has_value();
}

MatrixK u_plus(const FieldElement& a) {
  MatrixK m = MatrixK::identity(a.field(), 2);
  m(0, 1) = a;
  return m;
}

MatrixK u_minus(const FieldElement& b) {
  MatrixK m = MatrixK::identity(b.field(), 2);
  m(1, 0) = b;
  return m;
}

}  // namespace ldo
